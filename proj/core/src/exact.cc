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

#include "otoc/exact.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include <Eigen/LU>

#include "otoc/parallel.h"

namespace otoc {

InteractionImage interaction_image(const ModeTuple &beta, const ModeTuple &q) {
    if (q.size() != 4 || q[0] % 2 != 1 || q[1] != q[0] + 1 || q[2] != q[0] + 2 || q[3] != q[0] + 3) {
        throw std::invalid_argument("interaction_image: q must be (2j-1, 2j, 2j+1, 2j+2)");
    }
    if (!is_valid_tuple(beta, q[3]) || (!beta.empty() && beta.front() < q[0])) {
        throw std::invalid_argument("interaction_image: beta is not an ordered subset of q");
    }
    InteractionImage out;
    if (beta.size() % 2 == 0) {
        out.image = beta;
        return out;
    }
    int sum = 0;
    for (int b : beta) {
        sum += b;
    }
    for (int m : q) {
        if (std::find(beta.begin(), beta.end(), m) == beta.end()) {
            out.image.push_back(m);
        }
    }
    // (-i)(-1)^sum = i^{3 + 2 sum}
    out.phase = (3 + 2 * (sum % 2)) % 4;
    return out;
}

AssembledEvolution initial_evolution(int n) {
    if (n < 1) {
        throw std::invalid_argument("initial_evolution: n must be positive");
    }
    AssembledEvolution s;
    s.n = n;
    s.u = Matrix::Identity(2 * n, 2 * n);
    return s;
}

void absorb_gaussian(AssembledEvolution &state, const Matrix &layer) {
    const int sys = 2 * state.n;
    if (layer.rows() != sys || layer.cols() != sys) {
        throw std::invalid_argument("absorb_gaussian: layer must act on the 2n system modes");
    }
    state.u.rightCols(sys) = (state.u.rightCols(sys) * layer).eval();
}

void extend_with_interaction(AssembledEvolution &state, int j) {
    if (j < 1 || j >= state.n) {
        throw std::out_of_range("extend_with_interaction: gate needs 1 <= j < n, got " + std::to_string(j));
    }
    const Eigen::Index m = state.u.rows();
    const Eigen::Index a = state.ancilla_modes();
    const Eigen::Index q0 = a + 2 * j - 2;
    Matrix next = Matrix::Zero(m + 4, m + 4);
    for (Eigen::Index r = 0; r < 4; r++) {
        next(r, 4 + q0 + r) = 1.0;
    }
    next.block(4, 0, m, 4) = state.u.middleCols(q0, 4);
    next.block(4, 4, m, m) = state.u;
    next.block(4, 4 + q0, m, 4).setZero();
    // Gate orientation: B(t) = U B U^dag flips the sign of the gated system modes.
    next.middleCols(4 + q0, 4) *= -1.0;
    state.u = std::move(next);
    state.gates.push_back(j);
}

void absorb_step(AssembledEvolution &state, const Step &step) {
    if (step.transition.size() != 0) {
        absorb_gaussian(state, step.transition);
    }
    for (int j : step.gates) {
        extend_with_interaction(state, j);
    }
}

AssembledEvolution assemble(const Circuit &c) {
    validate(c);
    AssembledEvolution s = initial_evolution(c.n);
    for (const auto &step : c.steps) {
        absorb_step(s, step);
    }
    return s;
}

Matrix build_kernel(const AssembledEvolution &state, const ModeTuple &eta) {
    const int sys = 2 * state.n;
    if (!is_valid_tuple(eta, sys)) {
        throw std::invalid_argument("build_kernel: eta must be a tuple of system modes");
    }
    const Eigen::Index a = state.ancilla_modes();
    const Eigen::Index m = state.u.rows();
    Vector r = Vector::Ones(sys);
    for (int e : eta) {
        r(e - 1) = -1.0;
    }
    if (eta.size() % 2 == 1) {
        r = -r;
    }
    const Matrix us = state.u.rightCols(sys);
    Matrix k = Matrix::Zero(a + m, a + m);
    k.block(0, a, a, m) = state.u.leftCols(a).transpose();
    k.block(a, 0, m, a) = state.u.leftCols(a);
    k.block(a, a, m, m) = us * r.asDiagonal() * us.transpose();
    return k;
}

namespace {

// Per-gate input subset choices, flattened over all gates.
struct SubsetChoice {
    std::vector<int> rows;   // positions of B in [0, A)
    std::vector<int> image;  // positions of V(B) in [0, A)
    int parity = 0;          // sum_i |beta_i| sum(beta_i) + [|beta_i| = 3], mod 2
    int size() const { return static_cast<int>(rows.size()); }
    int image_size() const { return static_cast<int>(image.size()); }
};

std::vector<SubsetChoice> enumerate_choices(int g) {
    std::vector<SubsetChoice> out;
    long long total = 1;
    for (int i = 0; i < g; i++) {
        total *= 16;
    }
    out.reserve(static_cast<size_t>(total));
    for (long long idx = 0; idx < total; idx++) {
        SubsetChoice c;
        // Gate i (1-based, in order applied) owns the 1-based block 4(g-i)+1..4(g-i)+4;
        // walk blocks left to right so the tuples come out sorted.
        for (int i = g; i >= 1; i--) {
            int mask = static_cast<int>((idx >> (4 * (i - 1))) & 15);
            const int base = 4 * (g - i) + 1;
            ModeTuple beta;
            for (int k = 0; k < 4; k++) {
                if (mask & (1 << k)) {
                    beta.push_back(base + k);
                }
            }
            InteractionImage img = interaction_image(beta, {base, base + 1, base + 2, base + 3});
            int sum = 0;
            for (int b : beta) {
                sum += b;
                c.rows.push_back(b - 1);
            }
            for (int v : img.image) {
                c.image.push_back(v - 1);
            }
            c.parity += static_cast<int>(beta.size()) * sum + (beta.size() == 3 ? 1 : 0);
        }
        c.parity &= 1;
        out.push_back(std::move(c));
    }
    return out;
}

constexpr int kSmallMax = 48;

// Determinant of a k x k row-major buffer by partial pivoting; destroys it.
double small_det(double *a, int k) {
    double d = 1.0;
    for (int col = 0; col < k; col++) {
        int piv = col;
        double best = std::abs(a[col * k + col]);
        for (int r = col + 1; r < k; r++) {
            double v = std::abs(a[r * k + col]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0) {
            return 0.0;
        }
        if (piv != col) {
            for (int c = col; c < k; c++) {
                std::swap(a[col * k + c], a[piv * k + c]);
            }
            d = -d;
        }
        const double p = a[col * k + col];
        d *= p;
        for (int r = col + 1; r < k; r++) {
            const double f = a[r * k + col] / p;
            if (f != 0.0) {
                for (int c = col + 1; c < k; c++) {
                    a[r * k + c] -= f * a[col * k + c];
                }
            }
        }
    }
    return d;
}

}  // namespace

ExactResult exact_series(const AssembledEvolution &state, const ModeTuple &alpha, const ModeTuple &eta,
                         const ExactOptions &options) {
    const int g = static_cast<int>(state.gates.size());
    if (g > options.max_gates) {
        throw std::invalid_argument("exact engine: " + std::to_string(g) + " interaction gates exceed the limit of " +
                                    std::to_string(options.max_gates) + "; the series has 256^g = 2^" +
                                    std::to_string(8 * g) + " subset pairs");
    }
    const int sys = 2 * state.n;
    if (!is_valid_tuple(alpha, sys) || alpha.empty()) {
        throw std::invalid_argument("exact engine: alpha must be a nonempty tuple of system modes");
    }
    const Matrix k = build_kernel(state, eta);
    const int a = state.ancilla_modes();
    const int na = static_cast<int>(alpha.size());
    std::vector<Eigen::Index> ahat;
    for (int x : alpha) {
        ahat.push_back(2 * a + x - 1);
    }
    Matrix w(na, na);
    for (int r = 0; r < na; r++) {
        for (int c = 0; c < na; c++) {
            w(r, c) = k(ahat[r], ahat[c]);
        }
    }
    ExactResult result;
    if (g == 0) {
        result.series = det(w);
        result.terms = 1;
        result.value = std::sqrt(std::clamp(0.5 * (1.0 - result.series), 0.0, 1.0));
        return result;
    }

    // Schur complement on the fixed alpha block when it is well conditioned:
    // det K[r+ahat, c+ahat] = det W * det (K - K[:,ahat] W^-1 K[ahat,:])[r, c].
    Eigen::PartialPivLU<Matrix> lu(w);
    const bool use_schur = lu.rcond() > 1e-6;
    const double det_w = use_schur ? lu.determinant() : 0.0;
    Matrix kt;
    Matrix k_ra, k_ac;
    if (use_schur) {
        k_ra.resize(2 * a, na);
        k_ac.resize(na, 2 * a);
        for (int c = 0; c < na; c++) {
            k_ra.col(c) = k.col(ahat[c]).head(2 * a);
            k_ac.row(c) = k.row(ahat[c]).head(2 * a);
        }
        kt = k.topLeftCorner(2 * a, 2 * a) - k_ra * lu.solve(k_ac);
    }

    const std::vector<SubsetChoice> choices = enumerate_choices(g);
    // Group choices by |V(B)| - |B|; a minor is square only within a group.
    // A minor with |B| > |V(B)| + |alpha| contains a zero block too large to
    // be nonsingular, since K vanishes on ancilla x ancilla.
    std::map<int, std::vector<int>> groups;
    for (size_t i = 0; i < choices.size(); i++) {
        const auto &c = choices[i];
        if (c.size() <= c.image_size() + na) {
            groups[c.image_size() - c.size()].push_back(static_cast<int>(i));
        }
    }
    // K is symmetric, so the (B', B) minor is the transpose of the (B, B')
    // minor and the sign is symmetric too: visit each unordered pair once.
    std::vector<const std::vector<int> *> group_list;
    std::vector<std::pair<size_t, size_t>> order;  // (group, position)
    for (const auto &[key, members] : groups) {
        group_list.push_back(&members);
        for (size_t p = 0; p < members.size(); p++) {
            order.emplace_back(group_list.size() - 1, p);
        }
    }
    const Matrix &src = use_schur ? kt : k;
    // Row-major copy for cache-friendly gathers.
    const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> srcr = src;
    const Eigen::Index stride = srcr.cols();
    const double *base = srcr.data();

    std::vector<double> partial(order.size(), 0.0);
    std::vector<long long> counts(order.size(), 0);
    parallel_for(
        order.size(),
        [&](size_t slot) {
            const auto &members = *group_list[order[slot].first];
            const size_t pos = order[slot].second;
            const SubsetChoice &cb = choices[static_cast<size_t>(members[pos])];
            int rows[kSmallMax];
            int cols[kSmallMax];
            double buf[kSmallMax * kSmallMax];
            std::vector<double> big;
            // Fixed parts for this B: rows A + V(B) after the B' rows; columns B first.
            const int nb = cb.size();
            for (int c = 0; c < nb; c++) {
                cols[c] = cb.rows[static_cast<size_t>(c)];
            }
            KahanSum acc;
            long long count = 0;
            for (size_t q = pos; q < members.size(); q++) {
                const SubsetChoice &cp = choices[static_cast<size_t>(members[q])];
                const int nbp = cp.size();
                int sz = 0;
                for (int x : cp.rows) {
                    rows[sz++] = x;
                }
                for (int x : cb.image) {
                    rows[sz++] = a + x;
                }
                int cz = nb;
                for (int x : cp.image) {
                    cols[cz++] = a + x;
                }
                double d;
                if (use_schur) {
                    for (int r = 0; r < sz; r++) {
                        const double *row = base + rows[r] * stride;
                        double *out = buf + r * sz;
                        for (int c = 0; c < sz; c++) {
                            out[c] = row[cols[c]];
                        }
                    }
                    d = det_w * small_det(buf, sz);
                } else {
                    const int tot = sz + na;
                    double *m = buf;
                    if (tot > kSmallMax) {
                        big.resize(static_cast<size_t>(tot) * tot);
                        m = big.data();
                    }
                    for (int r = 0; r < tot; r++) {
                        const Eigen::Index rr = r < sz ? rows[r] : ahat[static_cast<size_t>(r - sz)];
                        for (int c = 0; c < tot; c++) {
                            const Eigen::Index cc = c < sz ? cols[c] : ahat[static_cast<size_t>(c - sz)];
                            m[r * tot + c] = base[rr * stride + cc];
                        }
                    }
                    d = small_det(m, tot);
                }
                const int f = nb + nbp + nb * nbp + cb.parity + cp.parity;
                if (q != pos) {
                    d *= 2.0;
                }
                acc.add((f & 1) ? -d : d);
                count += q != pos ? 2 : 1;
            }
            partial[slot] = acc.value();
            counts[slot] = count;
        },
        options.threads);

    KahanSum total;
    for (size_t i = 0; i < partial.size(); i++) {
        total.add(partial[i]);
        result.terms += counts[i];
    }
    result.series = total.value();
    result.value = std::sqrt(std::clamp(0.5 * (1.0 - result.series), 0.0, 1.0));
    return result;
}

ExactResult exact_otoc_detailed(const Circuit &c, const PauliObservable &a, const PauliObservable &b,
                                const ExactOptions &options) {
    validate(c);
    if (c.gate_count() > options.max_gates) {
        throw std::invalid_argument("exact engine: " + std::to_string(c.gate_count()) +
                                    " interaction gates exceed the limit of " + std::to_string(options.max_gates));
    }
    const AssembledEvolution state = assemble(c);
    return exact_series(state, to_configuration(b, c.n).modes, to_configuration(a, c.n).modes, options);
}

double exact_otoc(const Circuit &c, const PauliObservable &a, const PauliObservable &b,
                  const ExactOptions &options) {
    return exact_otoc_detailed(c, a, b, options).value;
}

LightconeGrid exact_lightcone(const Circuit &c, const PauliObservable &b, const ExactOptions &options) {
    validate(c);
    if (c.gate_count() > options.max_gates) {
        throw std::invalid_argument("exact engine: " + std::to_string(c.gate_count()) +
                                    " interaction gates exceed the limit of " + std::to_string(options.max_gates));
    }
    const int n = c.n;
    const ModeTuple alpha = to_configuration(b, n).modes;
    LightconeGrid grid;
    grid.values = Matrix::Zero(static_cast<Eigen::Index>(c.steps.size() + 1), n);
    AssembledEvolution state = initial_evolution(n);
    ExactOptions inner = options;
    inner.threads = 1;
    for (size_t k = 0; k <= c.steps.size(); k++) {
        if (k > 0) {
            absorb_step(state, c.steps[k - 1]);
        }
        grid.times.push_back(c.time_after(k));
        std::vector<double> row(static_cast<size_t>(n));
        parallel_for(
            static_cast<size_t>(n),
            [&](size_t s) {
                const int site = static_cast<int>(s) + 1;
                row[s] = exact_series(state, alpha, {2 * site - 1, 2 * site}, inner).value;
            },
            options.threads);
        for (int s = 0; s < n; s++) {
            grid.values(static_cast<Eigen::Index>(k), s) = row[static_cast<size_t>(s)];
        }
    }
    grid.meta.engine = "exact";
    grid.meta.n = n;
    grid.meta.observable = b.str();
    return grid;
}

}  // namespace otoc
