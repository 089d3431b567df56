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

#include "otoc/gaussian.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace otoc {

Matrix circuit_transition(const Circuit &c) {
    validate(c);
    Matrix u = Matrix::Identity(2 * c.n, 2 * c.n);
    for (const auto &s : c.steps) {
        if (!s.gates.empty()) {
            throw std::invalid_argument("gaussian engine: circuit contains interaction gates");
        }
        if (s.transition.size() != 0) {
            u = u * s.transition;
        }
    }
    return u;
}

Matrix select_rows(const Matrix &u, const ModeTuple &alpha) {
    Matrix phi(static_cast<Eigen::Index>(alpha.size()), u.cols());
    for (size_t r = 0; r < alpha.size(); r++) {
        phi.row(static_cast<Eigen::Index>(r)) = u.row(alpha[r] - 1);
    }
    return phi;
}

double gaussian_otoc_sq(const Matrix &phi, const ModeTuple &eta) {
    const auto k = static_cast<Eigen::Index>(eta.size());
    Matrix w(phi.rows(), k);
    for (Eigen::Index c = 0; c < k; c++) {
        w.col(c) = phi.col(eta[c] - 1);
    }
    Matrix m = Matrix::Identity(k, k) - 2.0 * w.transpose() * w;
    const double d = det(m);
    const bool odd = (static_cast<long>(phi.rows()) * static_cast<long>(k)) % 2 == 1;
    const double c2 = 0.5 * (1.0 + (odd ? d : -d));
    return std::clamp(c2, 0.0, 1.0);
}

double gaussian_otoc(const Matrix &u, const ModeTuple &alpha, const ModeTuple &eta) {
    return std::sqrt(gaussian_otoc_sq(select_rows(u, alpha), eta));
}

double gaussian_otoc(const Circuit &c, const PauliObservable &a, const PauliObservable &b) {
    const Matrix u = circuit_transition(c);
    return gaussian_otoc(u, to_configuration(b, c.n).modes, to_configuration(a, c.n).modes);
}

namespace {

// det [[0, V^T], [V, phi_F phi_F^T]] with V = phi[:, pinned], F = free columns.
double bordered(const Matrix &phi, const std::vector<int> &pinned, const std::vector<int> &free_cols) {
    const auto k = static_cast<Eigen::Index>(pinned.size());
    const Eigen::Index a = phi.rows();
    Matrix pf(a, static_cast<Eigen::Index>(free_cols.size()));
    for (size_t c = 0; c < free_cols.size(); c++) {
        pf.col(static_cast<Eigen::Index>(c)) = phi.col(free_cols[c]);
    }
    Matrix m = Matrix::Zero(k + a, k + a);
    for (Eigen::Index c = 0; c < k; c++) {
        m.block(k, c, a, 1) = phi.col(pinned[c]);
        m.block(c, k, 1, a) = phi.col(pinned[c]).transpose();
    }
    m.block(k, k, a, a) = pf * pf.transpose();
    return det(m);
}

// Same determinant via the identity det [[0,V^T],[V, I - Y Y^T]] =
// det [[-V^T V, -V^T Y], [-Y^T V, I - Y^T Y]], with Y = phi[:, pinned+excluded].
// Needs only the Gram matrix of the system columns.
double bordered_gram(const Matrix &gram, const std::vector<int> &pinned, const std::vector<int> &y_cols) {
    const auto k = static_cast<Eigen::Index>(pinned.size());
    const auto w = static_cast<Eigen::Index>(y_cols.size());
    Matrix m(k + w, k + w);
    auto idx = [&](Eigen::Index i) { return i < k ? pinned[i] : y_cols[i - k]; };
    for (Eigen::Index r = 0; r < k + w; r++) {
        for (Eigen::Index c = 0; c < k + w; c++) {
            m(r, c) = -gram(idx(r), idx(c));
        }
    }
    for (Eigen::Index i = k; i < k + w; i++) {
        m(i, i) += 1.0;
    }
    return det(m);
}

// One family of configurations: every mode in `pinned`, no mode in
// `excluded`, the rest of the system modes and all ancillas free.
struct EdgeTerm {
    std::vector<int> pinned;
    std::vector<int> excluded;
};

std::vector<int> mode_range(int first, int last) {
    std::vector<int> out;
    for (int m = first; m <= last; m++) {
        out.push_back(m);
    }
    return out;
}

// Qubit q carries modes 2q-2 and 2q-1 (0-based). A term counts when the
// string's edge sits at qubit s with letter X or Y there, i.e. exactly one of
// the two modes of s is present; Z ends commute with the gate and are left out.
// The right end is the qubit of the largest mode. On the left, every mode
// below the edge is present for odd |beta| and absent for even |beta|.
std::vector<EdgeTerm> edge_terms(int n, int s, Edge side, bool odd) {
    const int a = 2 * s - 2;
    const int b = 2 * s - 1;
    if (side == Edge::Right) {
        std::vector<int> above_a = mode_range(b, 2 * n - 1);
        std::vector<int> above_b = mode_range(b + 1, 2 * n - 1);
        above_b.push_back(a);
        return {{{a}, above_a}, {{b}, above_b}};
    }
    if (!odd) {
        std::vector<int> below_a = mode_range(0, a - 1);
        below_a.push_back(b);
        return {{{a}, below_a}, {{b}, mode_range(0, a)}};
    }
    EdgeTerm only_a{mode_range(0, a - 1), {b}};
    only_a.pinned.push_back(a);
    EdgeTerm only_b{mode_range(0, a - 1), {a}};
    only_b.pinned.push_back(b);
    return {only_a, only_b};
}

double signed_weight(double bordered_det, const EdgeTerm &t) {
    return t.pinned.size() % 2 == 1 ? -bordered_det : bordered_det;
}

}  // namespace

double boundary_weight_sq(const Matrix &phi, int n, int s, Edge side) {
    if (s < 1 || s > n) {
        throw std::out_of_range("boundary site out of range");
    }
    if (phi.cols() < 2 * n) {
        throw std::invalid_argument("boundary: phi has fewer than 2n columns");
    }
    const int total = static_cast<int>(phi.cols());
    double sum = 0.0;
    for (const auto &t : edge_terms(n, s, side, phi.rows() % 2 == 1)) {
        std::vector<int> free_cols;
        for (int m = 0; m < total; m++) {
            const bool taken = std::find(t.pinned.begin(), t.pinned.end(), m) != t.pinned.end() ||
                               std::find(t.excluded.begin(), t.excluded.end(), m) != t.excluded.end();
            if (!taken) {
                free_cols.push_back(m);
            }
        }
        sum += signed_weight(bordered(phi, t.pinned, free_cols), t);
    }
    return sum;
}

BoundaryWeights boundary_weights(const Matrix &phi, int n) {
    const Matrix sys = phi.leftCols(2 * n);
    const Matrix gram = sys.transpose() * sys;
    const bool odd = phi.rows() % 2 == 1;
    BoundaryWeights b;
    b.right.resize(n);
    b.left.resize(n);
    auto weight = [&](int s, Edge side) {
        double v = 0.0;
        for (const auto &t : edge_terms(n, s, side, odd)) {
            std::vector<int> y = t.pinned;
            y.insert(y.end(), t.excluded.begin(), t.excluded.end());
            v += signed_weight(bordered_gram(gram, t.pinned, y), t);
        }
        return std::sqrt(std::max(v, 0.0));
    };
    for (int s = 1; s <= n; s++) {
        b.right[s - 1] = weight(s, Edge::Right);
        b.left[s - 1] = weight(s, Edge::Left);
    }
    return b;
}

GaussianLightcone gaussian_lightcone(const Circuit &c, const PauliObservable &b, bool drop_gates) {
    validate(c);
    if (!drop_gates && c.gate_count() > 0) {
        throw std::invalid_argument("gaussian engine: circuit contains interaction gates");
    }
    const int n = c.n;
    const int center = b.site;
    const auto rows = static_cast<Eigen::Index>(c.steps.size() + 1);
    GaussianLightcone out;
    out.otoc.values = Matrix::Zero(rows, n);
    out.boundary.values = Matrix::Zero(rows, n);
    Matrix phi = select_rows(Matrix::Identity(2 * n, 2 * n), to_configuration(b, n).modes);
    for (Eigen::Index k = 0; k < rows; k++) {
        if (k > 0) {
            const auto &s = c.steps[k - 1];
            if (s.transition.size() != 0) {
                phi = phi * s.transition;
            }
        }
        const double t = c.time_after(static_cast<size_t>(k));
        out.otoc.times.push_back(t);
        out.boundary.times.push_back(t);
        for (int s = 1; s <= n; s++) {
            out.otoc.values(k, s - 1) = std::sqrt(gaussian_otoc_sq(phi, {2 * s - 1, 2 * s}));
        }
        const auto bw = boundary_weights(phi, n);
        for (int s = 1; s <= n; s++) {
            double v = 0.0;
            if (s >= center) {
                v = std::max(v, bw.right[s - 1]);
            }
            if (s <= center) {
                v = std::max(v, bw.left[s - 1]);
            }
            out.boundary.values(k, s - 1) = std::min(v, 1.0);
        }
    }
    out.otoc.meta.engine = "gaussian";
    out.otoc.meta.n = n;
    out.otoc.meta.observable = b.str();
    out.boundary.meta = out.otoc.meta;
    out.boundary.meta.engine = "gaussian-boundary";
    return out;
}

}  // namespace otoc
