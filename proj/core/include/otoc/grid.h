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

#ifndef OTOC_GRID_H
#define OTOC_GRID_H

#include <cstdint>
#include <string>
#include <vector>

#include "otoc/majorana.h"

namespace otoc {

struct GridMeta {
    std::string engine;
    int n = 0;
    double nu = 0.0;
    double epsilon = 0.0;
    double dt = 0.0;
    std::uint64_t seed = 0;
    int realizations = 1;
    std::string observable;  // the evolved operator, e.g. "X15"
};

/// values(t, s-1) holds C(Z_s, B(t)). Rows follow `times`.
struct LightconeGrid {
    Matrix values;
    std::vector<double> times;
    GridMeta meta;

    int rows() const { return static_cast<int>(values.rows()); }
    int sites() const { return static_cast<int>(values.cols()); }
};

/// Throws std::invalid_argument if values leave [0,1] or times do not increase.
void check_grid(const LightconeGrid &g);

}  // namespace otoc

#endif
