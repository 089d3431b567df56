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

#include "otoc/io.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "json.hpp"

namespace otoc {

using nlohmann::json;

GridFormat parse_format(std::string_view name) {
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (s == "csv") {
        return GridFormat::Csv;
    }
    if (s == "json") {
        return GridFormat::Json;
    }
    if (s == "pgm") {
        return GridFormat::Pgm;
    }
    throw std::invalid_argument("unknown output format '" + s + "'");
}

GridFormat format_from_path(std::string_view path) {
    const auto dot = path.rfind('.');
    if (dot == std::string_view::npos) {
        return GridFormat::Csv;
    }
    try {
        return parse_format(path.substr(dot + 1));
    } catch (const std::invalid_argument &) {
        return GridFormat::Csv;
    }
}

namespace {

std::string format9(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

std::string grid_to_csv(const LightconeGrid &g) {
    std::string out = "t";
    for (int s = 1; s <= g.sites(); s++) {
        out += "," + std::to_string(s);
    }
    out += "\n";
    for (int r = 0; r < g.rows(); r++) {
        out += format9(g.times[static_cast<size_t>(r)]);
        for (int s = 0; s < g.sites(); s++) {
            out += "," + format9(g.values(r, s));
        }
        out += "\n";
    }
    return out;
}

LightconeGrid grid_from_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("csv: empty input");
    }
    int sites = static_cast<int>(std::count(line.begin(), line.end(), ','));
    std::vector<std::vector<double>> rows;
    LightconeGrid g;
    int lineno = 1;
    while (std::getline(in, line)) {
        lineno++;
        if (line.empty()) {
            continue;
        }
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                size_t used = 0;
                row.push_back(std::stod(cell, &used));
            } catch (const std::exception &) {
                throw std::invalid_argument("csv: bad number '" + cell + "' on line " + std::to_string(lineno));
            }
        }
        if (static_cast<int>(row.size()) != sites + 1) {
            throw std::invalid_argument("csv: line " + std::to_string(lineno) + " has " + std::to_string(row.size()) +
                                        " fields, expected " + std::to_string(sites + 1));
        }
        g.times.push_back(row[0]);
        rows.push_back(std::move(row));
    }
    g.values = Matrix::Zero(static_cast<Eigen::Index>(rows.size()), sites);
    for (size_t r = 0; r < rows.size(); r++) {
        for (int s = 0; s < sites; s++) {
            g.values(static_cast<Eigen::Index>(r), s) = rows[r][static_cast<size_t>(s) + 1];
        }
    }
    g.meta.n = sites;
    return g;
}

std::string grid_to_json(const LightconeGrid &g) {
    json j;
    j["meta"] = {{"engine", g.meta.engine},
                 {"n", g.meta.n},
                 {"nu", g.meta.nu},
                 {"epsilon", g.meta.epsilon},
                 {"dt", g.meta.dt},
                 {"base_seed", g.meta.seed},
                 {"realizations", g.meta.realizations},
                 {"observable", g.meta.observable}};
    j["times"] = g.times;
    json values = json::array();
    for (int r = 0; r < g.rows(); r++) {
        std::vector<double> row(static_cast<size_t>(g.sites()));
        for (int s = 0; s < g.sites(); s++) {
            row[static_cast<size_t>(s)] = g.values(r, s);
        }
        values.push_back(row);
    }
    j["values"] = values;
    return j.dump(1) + "\n";
}

LightconeGrid grid_from_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
        LightconeGrid g;
        const auto &m = j.at("meta");
        g.meta.engine = m.at("engine").get<std::string>();
        g.meta.n = m.at("n").get<int>();
        g.meta.nu = m.at("nu").get<double>();
        g.meta.epsilon = m.at("epsilon").get<double>();
        g.meta.dt = m.at("dt").get<double>();
        g.meta.seed = m.at("base_seed").get<std::uint64_t>();
        g.meta.realizations = m.at("realizations").get<int>();
        g.meta.observable = m.at("observable").get<std::string>();
        g.times = j.at("times").get<std::vector<double>>();
        const auto rows = j.at("values").get<std::vector<std::vector<double>>>();
        const auto cols = rows.empty() ? 0 : static_cast<Eigen::Index>(rows[0].size());
        g.values = Matrix::Zero(static_cast<Eigen::Index>(rows.size()), cols);
        for (size_t r = 0; r < rows.size(); r++) {
            if (static_cast<Eigen::Index>(rows[r].size()) != cols) {
                throw std::invalid_argument("json grid: ragged values");
            }
            for (Eigen::Index c = 0; c < cols; c++) {
                g.values(static_cast<Eigen::Index>(r), c) = rows[r][static_cast<size_t>(c)];
            }
        }
        return g;
    } catch (const json::exception &e) {
        throw std::invalid_argument(std::string("json grid: ") + e.what());
    }
}

std::string grid_to_pgm(const LightconeGrid &g) {
    std::string out = "P5\n" + std::to_string(g.sites()) + " " + std::to_string(g.rows()) + "\n255\n";
    for (int r = 0; r < g.rows(); r++) {
        for (int s = 0; s < g.sites(); s++) {
            const double v = std::clamp(g.values(r, s), 0.0, 1.0);
            out.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * v))));
        }
    }
    return out;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "' for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) {
        throw std::runtime_error("error reading '" + path + "'");
    }
    return ss.str();
}

void write_file(const std::string &path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) {
        throw std::runtime_error("error writing '" + path + "'");
    }
}

void write_grid(const LightconeGrid &g, const std::string &path, GridFormat format) {
    switch (format) {
        case GridFormat::Csv:
            write_file(path, grid_to_csv(g));
            break;
        case GridFormat::Json:
            write_file(path, grid_to_json(g));
            break;
        case GridFormat::Pgm:
            write_file(path, grid_to_pgm(g));
            break;
    }
}

void write_grid(const LightconeGrid &g, const std::string &path) { write_grid(g, path, format_from_path(path)); }

LightconeGrid read_grid_csv(const std::string &path) { return grid_from_csv(read_file(path)); }

namespace {

void reject_unknown(const json &obj, const std::string &where, const std::set<std::string> &allowed) {
    if (!obj.is_object()) {
        throw ConfigError(where + ": expected an object");
    }
    for (const auto &[key, value] : obj.items()) {
        if (!allowed.count(key)) {
            throw ConfigError((where.empty() ? "" : where + ".") + key + ": unknown key");
        }
    }
}

int get_int(const json &v, const std::string &field, long long minimum) {
    if (!v.is_number_integer()) {
        throw ConfigError(field + ": expected an integer");
    }
    const auto x = v.get<long long>();
    if (x < minimum) {
        throw ConfigError(field + ": must be >= " + std::to_string(minimum));
    }
    if (x > 1000000000LL) {
        throw ConfigError(field + ": out of range");
    }
    return static_cast<int>(x);
}

double get_number(const json &v, const std::string &field, double minimum, bool exclusive) {
    if (!v.is_number()) {
        throw ConfigError(field + ": expected a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x) || (exclusive ? !(x > minimum) : !(x >= minimum))) {
        throw ConfigError(field + ": must be " + (exclusive ? "> " : ">= ") + format9(minimum));
    }
    return x;
}

std::string get_enum(const json &v, const std::string &field, const std::set<std::string> &choices) {
    if (!v.is_string()) {
        throw ConfigError(field + ": expected a string");
    }
    auto s = v.get<std::string>();
    if (!choices.count(s)) {
        std::string list;
        for (const auto &c : choices) {
            list += (list.empty() ? "" : ", ") + c;
        }
        throw ConfigError(field + ": '" + s + "' is not one of " + list);
    }
    return s;
}

std::string get_pattern(const json &v, const std::string &field, const std::regex &re) {
    if (!v.is_string()) {
        throw ConfigError(field + ": expected a string");
    }
    auto s = v.get<std::string>();
    if (!std::regex_match(s, re)) {
        throw ConfigError(field + ": malformed value '" + s + "'");
    }
    return s;
}

const std::regex kPauli("^[XYZxyz][0-9]+$");
const std::regex kGates(R"(^\s*(\d+@[-+0-9.eE]+\s*(,\s*\d+@[-+0-9.eE]+\s*)*)?$)");

}  // namespace

RunConfig parse_run_config(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    reject_unknown(j, "", {"engine", "model", "approx", "observable", "probe", "ensemble", "output", "threads"});
    RunConfig c;
    if (j.contains("engine")) {
        c.engine = get_enum(j["engine"], "engine", {"exact", "approx", "gaussian", "oracle"});
    }
    if (j.contains("model")) {
        const auto &m = j["model"];
        reject_unknown(m, "model", {"n", "nu", "dt", "periods", "interactions", "steps", "gates"});
        if (m.contains("n")) {
            c.n = get_int(m["n"], "model.n", 2);
        }
        if (m.contains("nu")) {
            c.nu = get_number(m["nu"], "model.nu", 0.0, false);
        }
        if (m.contains("dt")) {
            c.dt = get_number(m["dt"], "model.dt", 0.0, true);
        }
        if (m.contains("periods")) {
            c.periods = get_int(m["periods"], "model.periods", 1);
        }
        if (m.contains("interactions")) {
            if (!m["interactions"].is_boolean()) {
                throw ConfigError("model.interactions: expected a boolean");
            }
            c.interactions = m["interactions"].get<bool>();
        }
        if (m.contains("steps")) {
            c.steps = get_int(m["steps"], "model.steps", 1);
        }
        if (m.contains("gates")) {
            c.gates = get_pattern(m["gates"], "model.gates", kGates);
        }
    }
    if (j.contains("approx")) {
        const auto &a = j["approx"];
        reject_unknown(a, "approx", {"epsilon", "scheme"});
        if (a.contains("epsilon")) {
            c.epsilon = get_number(a["epsilon"], "approx.epsilon", 0.0, false);
        }
        if (a.contains("scheme")) {
            c.scheme = get_enum(a["scheme"], "approx.scheme", {"mirrored", "single-pass"});
        }
    }
    if (j.contains("observable")) {
        c.observable = get_pattern(j["observable"], "observable", kPauli);
    }
    if (j.contains("probe")) {
        c.probe = get_pattern(j["probe"], "probe", kPauli);
    }
    if (j.contains("ensemble")) {
        const auto &e = j["ensemble"];
        reject_unknown(e, "ensemble", {"realizations", "base_seed"});
        if (e.contains("realizations")) {
            c.realizations = get_int(e["realizations"], "ensemble.realizations", 1);
        }
        if (e.contains("base_seed")) {
            if (!e["base_seed"].is_number_unsigned() && !(e["base_seed"].is_number_integer() &&
                                                         e["base_seed"].get<long long>() >= 0)) {
                throw ConfigError("ensemble.base_seed: expected a nonnegative integer");
            }
            c.base_seed = e["base_seed"].get<std::uint64_t>();
        }
    }
    if (j.contains("output")) {
        const auto &o = j["output"];
        reject_unknown(o, "output", {"path", "format"});
        if (o.contains("path")) {
            if (!o["path"].is_string()) {
                throw ConfigError("output.path: expected a string");
            }
            c.output_path = o["path"].get<std::string>();
        }
        if (o.contains("format")) {
            c.output_format = get_enum(o["format"], "output.format", {"csv", "json", "pgm"});
        }
    }
    if (j.contains("threads")) {
        c.threads = get_int(j["threads"], "threads", 0);
    }
    return c;
}

RunConfig load_run_config(const std::string &path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const std::runtime_error &e) {
        throw ConfigError(e.what());
    }
    return parse_run_config(text);
}

std::string run_config_to_json(const RunConfig &c) {
    json j = json::object();
    if (c.engine) {
        j["engine"] = *c.engine;
    }
    json m = json::object();
    if (c.n) {
        m["n"] = *c.n;
    }
    if (c.nu) {
        m["nu"] = *c.nu;
    }
    if (c.dt) {
        m["dt"] = *c.dt;
    }
    if (c.periods) {
        m["periods"] = *c.periods;
    }
    if (c.interactions) {
        m["interactions"] = *c.interactions;
    }
    if (c.steps) {
        m["steps"] = *c.steps;
    }
    if (c.gates) {
        m["gates"] = *c.gates;
    }
    if (!m.empty()) {
        j["model"] = m;
    }
    json a = json::object();
    if (c.epsilon) {
        a["epsilon"] = *c.epsilon;
    }
    if (c.scheme) {
        a["scheme"] = *c.scheme;
    }
    if (!a.empty()) {
        j["approx"] = a;
    }
    if (c.observable) {
        j["observable"] = *c.observable;
    }
    if (c.probe) {
        j["probe"] = *c.probe;
    }
    json e = json::object();
    if (c.realizations) {
        e["realizations"] = *c.realizations;
    }
    if (c.base_seed) {
        e["base_seed"] = *c.base_seed;
    }
    if (!e.empty()) {
        j["ensemble"] = e;
    }
    json o = json::object();
    if (c.output_path) {
        o["path"] = *c.output_path;
    }
    if (c.output_format) {
        o["format"] = *c.output_format;
    }
    if (!o.empty()) {
        j["output"] = o;
    }
    if (c.threads) {
        j["threads"] = *c.threads;
    }
    return j.dump(2) + "\n";
}

RunConfig merge(const RunConfig &base, const RunConfig &overrides) {
    RunConfig r = base;
    auto take = [](auto &dst, const auto &src) {
        if (src) {
            dst = src;
        }
    };
    take(r.engine, overrides.engine);
    take(r.n, overrides.n);
    take(r.nu, overrides.nu);
    take(r.dt, overrides.dt);
    take(r.periods, overrides.periods);
    take(r.interactions, overrides.interactions);
    take(r.steps, overrides.steps);
    take(r.gates, overrides.gates);
    take(r.epsilon, overrides.epsilon);
    take(r.scheme, overrides.scheme);
    take(r.observable, overrides.observable);
    take(r.probe, overrides.probe);
    take(r.realizations, overrides.realizations);
    take(r.base_seed, overrides.base_seed);
    take(r.output_path, overrides.output_path);
    take(r.output_format, overrides.output_format);
    take(r.threads, overrides.threads);
    return r;
}

}  // namespace otoc
