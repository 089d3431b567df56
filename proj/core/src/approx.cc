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

#include "otoc/approx.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace otoc {

ApproxState initial_approx_state(int n, const PauliObservable &b) {
    if (b.site < 1 || b.site > n) {
        throw std::out_of_range("approx: observable site out of range");
    }
    ApproxState s;
    s.n = n;
    s.center = b.site;
    s.phi = select_rows(Matrix::Identity(2 * n, 2 * n), to_configuration(b, n).modes);
    return s;
}

void conditional_replace(ApproxState &state, int j, Edge side) {
    const int n = state.n;
    if (j < 1 || j >= n) {
        throw std::out_of_range("conditional_replace: gate needs 1 <= j < n, got " + std::to_string(j));
    }
    const int rotated = side == Edge::Right ? j : j + 1;
    const int swapped = side == Edge::Right ? j + 1 : j;
    const Eigen::Index rows = state.phi.rows();
    const Eigen::Index cols = state.phi.cols();

    // Fresh ancilla in Z: two new columns, and the pair of ancilla modes
    // joins the evolved configuration.
    Matrix next = Matrix::Zero(rows + 2, cols + 2);
    next.topLeftCorner(rows, cols) = state.phi;
    next(rows, cols) = 1.0;
    next(rows + 1, cols + 1) = 1.0;

    // exp(-i pi/4 Z): c_{2r-1} -> c_{2r}, c_{2r} -> -c_{2r-1}.
    const Eigen::Index r1 = 2 * rotated - 2;
    const Eigen::Index r2 = 2 * rotated - 1;
    Vector c1 = next.col(r1);
    next.col(r1) = -next.col(r2);
    next.col(r2) = c1;

    // Fermionic swap of the outer neighbor with the ancilla.
    next.col(2 * swapped - 2).swap(next.col(cols));
    next.col(2 * swapped - 1).swap(next.col(cols + 1));

    state.phi = std::move(next);
    state.sides.push_back(side);
}

int approx_step(ApproxState &state, const Step &step, double epsilon, bool allow_left) {
    const int n = state.n;
    if (step.transition.size() != 0) {
        state.phi.leftCols(2 * n) = (state.phi.leftCols(2 * n) * step.transition).eval();
    }
    if (step.gates.empty()) {
        return 0;
    }
    // Weights are read once per layer, before any of its gates act.
    const BoundaryWeights bw = boundary_weights(state.phi, n);
    int replaced = 0;
    for (int j : step.gates) {
        if (j >= state.center && bw.right[j - 1] >= epsilon) {
            conditional_replace(state, j, Edge::Right);
            replaced++;
        } else if (allow_left && j + 1 <= state.center && bw.left[j] >= epsilon) {
            conditional_replace(state, j, Edge::Left);
            replaced++;
        }
    }
    return replaced;
}

std::vector<double> approx_row(const ApproxState &state) {
    std::vector<double> row(static_cast<size_t>(state.n));
    for (int s = 1; s <= state.n; s++) {
        row[static_cast<size_t>(s - 1)] = std::sqrt(gaussian_otoc_sq(state.phi, {2 * s - 1, 2 * s}));
    }
    return row;
}

namespace {

ApproxResult single_run(const Circuit &c, const PauliObservable &b, double epsilon, bool allow_left) {
    ApproxResult out;
    ApproxState state = initial_approx_state(c.n, b);
    out.grid.values = Matrix::Zero(static_cast<Eigen::Index>(c.steps.size() + 1), c.n);
    for (size_t k = 0; k <= c.steps.size(); k++) {
        if (k > 0) {
            out.replacements += approx_step(state, c.steps[k - 1], epsilon, allow_left);
        }
        out.grid.times.push_back(c.time_after(k));
        const auto row = approx_row(state);
        for (int s = 0; s < c.n; s++) {
            out.grid.values(static_cast<Eigen::Index>(k), s) = row[static_cast<size_t>(s)];
        }
    }
    return out;
}

}  // namespace

ApproxResult approx_lightcone(const Circuit &c, const PauliObservable &b, const ApproxOptions &options) {
    validate(c);
    ApproxResult out;
    if (options.scheme == EdgeScheme::SinglePass) {
        out = single_run(c, b, options.epsilon, true);
    } else {
        out = single_run(c, b, options.epsilon, false);
        const PauliObservable mb{b.op, c.n + 1 - b.site};
        ApproxResult mirror = single_run(reflect(c), mb, options.epsilon, false);
        for (int s = 1; s < b.site; s++) {
            out.grid.values.col(s - 1) = mirror.grid.values.col(c.n - s);
        }
        out.replacements += mirror.replacements;
    }
    out.grid.meta.engine = "approx";
    out.grid.meta.n = c.n;
    out.grid.meta.epsilon = options.epsilon;
    out.grid.meta.observable = b.str();
    return out;
}

}  // namespace otoc
