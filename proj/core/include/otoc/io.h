// Copyright 2026 The otoc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OTOC_IO_H
#define OTOC_IO_H

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "otoc/grid.h"

namespace otoc {

enum class GridFormat { Csv, Json, Pgm };

GridFormat parse_format(std::string_view name);
/// From the file extension; csv when unrecognized.
GridFormat format_from_path(std::string_view path);

/// Header "t,1,2,...,n"; one row per time, first column the time; %.9g.
std::string grid_to_csv(const LightconeGrid &g);
LightconeGrid grid_from_csv(std::string_view text);

/// Values, times and every metadata field.
std::string grid_to_json(const LightconeGrid &g);
LightconeGrid grid_from_json(std::string_view text);

/// Binary P5, one row per time (earliest at the top), pixel = round(255 C).
std::string grid_to_pgm(const LightconeGrid &g);

/// Throws std::runtime_error naming the path on I/O failure.
void write_grid(const LightconeGrid &g, const std::string &path, GridFormat format);
void write_grid(const LightconeGrid &g, const std::string &path);
LightconeGrid read_grid_csv(const std::string &path);

std::string read_file(const std::string &path);
void write_file(const std::string &path, std::string_view contents);

/// Raised for malformed or schema-violating configuration; the message names
/// the offending field.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Mirrors schema/run_config.schema.json. Unset fields stay empty so a config
/// file and command-line flags can be merged.
struct RunConfig {
    std::optional<std::string> engine;
    std::optional<int> n;
    std::optional<double> nu;
    std::optional<double> dt;
    std::optional<int> periods;
    std::optional<bool> interactions;
    std::optional<int> steps;
    std::optional<std::string> gates;
    std::optional<double> epsilon;
    std::optional<std::string> scheme;
    std::optional<std::string> observable;
    std::optional<std::string> probe;
    std::optional<int> realizations;
    std::optional<std::uint64_t> base_seed;
    std::optional<std::string> output_path;
    std::optional<std::string> output_format;
    std::optional<int> threads;
};

/// Validates against the schema; unknown keys are rejected.
RunConfig parse_run_config(std::string_view json_text);
RunConfig load_run_config(const std::string &path);
std::string run_config_to_json(const RunConfig &c);

/// Fields set in `overrides` win.
RunConfig merge(const RunConfig &base, const RunConfig &overrides);

}  // namespace otoc

#endif
