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

// Acceptance suite: one [PASS]/[FAIL] line per criterion, exit status 1 if
// any criterion fails. Pass criterion numbers as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracle.h"
#include "otoc/approx.h"
#include "otoc/exact.h"
#include "otoc/experiments.h"
#include "otoc/gaussian.h"
#include "otoc/io.h"

namespace {

using namespace otoc;

constexpr double kPi = std::numbers::pi;
const double kPage = 1.0 / std::sqrt(2.0);

// Time windows: see README "Acceptance".
constexpr int kEpsilonPeriods = 5;
constexpr int kLongPeriods = 55;
constexpr int kGatePairPeriods = 10;

struct Outcome {
    bool pass = false;
    std::string detail;
};

class Stopwatch {
  public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char *f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, a);
    return buf;
}

// ---- 1: exact engine against the dense oracle --------------------------------

Outcome exact_equivalence() {
    std::mt19937_64 rng(20261019);
    std::uniform_real_distribution<double> nu_dist(0.0, 5.0);
    Stopwatch clock;
    double worst = 0.0;
    int pairs = 0;
    for (int i = 0; i < 200; i++) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const int g = static_cast<int>(rng() % 4);
        const oracle::TestCircuit t = oracle::random_circuit(n, g, nu_dist(rng), rng);
        const Circuit c = t.to_library();
        const auto u = t.unitary();
        const int a = n / 2;
        const auto pa = oracle::site_pauli(n, a, 'X');
        for (int s = 1; s <= n; s++) {
            const double want = oracle::otoc(u, pa, oracle::site_pauli(n, s, 'Z'));
            worst = std::max(worst, std::abs(exact_otoc(c, {PauliOp::X, a}, {PauliOp::Z, s}) - want));
            pairs++;
        }
    }
    const double secs = clock.seconds();
    return {worst <= 1e-8 && secs <= 600.0, "200 circuits, " + std::to_string(pairs) + " pairs, max |diff| " +
                                                fmt("%.2e", worst) + " (<= 1e-8), " + fmt("%.0f", secs) +
                                                " s (<= 600 s)"};
}

// ---- 2: Gaussian engine against the dense oracle -----------------------------

Outcome gaussian_equivalence() {
    std::mt19937_64 rng(2);
    double worst = 0.0;
    int circuits = 0;
    for (int n = 2; n <= 8; n++) {
        for (int k = 0; k < 3; k++) {
            oracle::TestCircuit t;
            t.n = n;
            for (int l = 0; l < 3; l++) {
                t.layers.push_back(oracle::random_circuit(n, 0, 3.0, rng).layers.front());
            }
            const Circuit c = t.to_library();
            const auto u = t.unitary();
            for (int a = 1; a <= n; a++) {
                for (int b = 1; b <= n; b++) {
                    for (auto [la, lb] : {std::pair{'X', 'Z'}, std::pair{'Z', 'X'}, std::pair{'Y', 'X'}}) {
                        const double want =
                            oracle::otoc(u, oracle::site_pauli(n, a, la), oracle::site_pauli(n, b, lb));
                        const double got = gaussian_otoc(c, parse_pauli(std::string(1, la) + std::to_string(a)),
                                                         parse_pauli(std::string(1, lb) + std::to_string(b)));
                        worst = std::max(worst, std::abs(got - want));
                    }
                }
            }
            circuits++;
        }
    }
    return {worst <= 1e-10 && circuits >= 20,
            std::to_string(circuits) + " circuits, n = 2..8, max |diff| " + fmt("%.2e", worst) + " (<= 1e-10)"};
}

// ---- 3: modified Cauchy-Binet ------------------------------------------------

Outcome cauchy_binet() {
    std::mt19937_64 rng(3);
    double worst = 0.0;
    int pairs = 0, flips = 0, largest = 0;
    std::set<std::pair<int, int>> covered;
    for (int i = 0; pairs < 108; i++) {
        const int ns = (i / 3) % 3, nsp = i % 3;
        const int m = 4 + static_cast<int>(rng() % 7);
        const int mid = std::max(ns, nsp) + static_cast<int>(rng() % 2);
        const int left = static_cast<int>(rng() % static_cast<unsigned>(m - mid + 1));
        std::vector<int> bl, middle, br, all;
        for (int x = 1; x <= m; x++) {
            (x <= left ? bl : (x <= left + mid ? middle : br)).push_back(x);
            all.push_back(x);
        }
        const auto s_opts = oracle::subsets(middle, ns);
        const auto sp_opts = oracle::subsets(middle, nsp);
        const int na = 1 + static_cast<int>(rng() % 3);
        const int ng = na + ns - nsp;
        if (ng < 0 || ng > m) {
            continue;
        }
        CauchyBinetTerms t;
        t.u1 = oracle::random_orthogonal(m, rng);
        t.u2 = oracle::random_orthogonal(m, rng);
        t.s = s_opts[rng() % s_opts.size()];
        t.s_prime = sp_opts[rng() % sp_opts.size()];
        const auto a_opts = oracle::subsets(all, na);
        const auto g_opts = oracle::subsets(all, ng);
        t.alpha = a_opts[rng() % a_opts.size()];
        t.gamma = g_opts[rng() % g_opts.size()];
        t.b_left = bl;
        t.b_right = br;
        double lhs = 0.0;
        for (const auto &beta : oracle::subsets(oracle::sorted_union(bl, br), na - nsp)) {
            lhs += oracle::laplace_minor(t.u1, t.alpha, oracle::sorted_union(beta, t.s_prime)) *
                   oracle::laplace_minor(t.u2, oracle::sorted_union(beta, t.s), t.gamma);
        }
        worst = std::max(worst, std::abs(cauchy_binet_block_det(t) - lhs));
        covered.insert({ns, nsp});
        flips += (ns + nsp) % 2;
        largest = std::max(largest, m);
        pairs++;
    }
    const bool pass = worst <= 1e-10 && covered.size() == 9 && flips > 0 && largest == 10;
    return {pass, std::to_string(pairs) + " pairs up to " + std::to_string(largest) + "x" + std::to_string(largest) +
                      ", " + std::to_string(covered.size()) + "/9 (|S|,|S'|) combos, " + std::to_string(flips) +
                      " opposite-parity, max |diff| " + fmt("%.2e", worst) + " (<= 1e-10)"};
}

// ---- 4: boundary weights -----------------------------------------------------

bool identity_at(const ModeTuple &beta, int q) {
    const bool a = std::find(beta.begin(), beta.end(), 2 * q - 1) != beta.end();
    const bool b = std::find(beta.begin(), beta.end(), 2 * q) != beta.end();
    const long above = std::count_if(beta.begin(), beta.end(), [q](int m) { return m > 2 * q; });
    return (!a && !b && above % 2 == 0) || (a && b && above % 2 == 1);
}

// The letter at qubit q is X or Y iff exactly one of its two modes is present.
bool xy_at(const ModeTuple &beta, int q) {
    const bool a = std::find(beta.begin(), beta.end(), 2 * q - 1) != beta.end();
    const bool b = std::find(beta.begin(), beta.end(), 2 * q) != beta.end();
    return a != b;
}

Outcome boundary_formula() {
    std::mt19937_64 rng(4);
    double worst = 0.0;
    int checks = 0;
    for (int n = 2; n <= 6; n++) {
        for (int k = 0; k < 2; k++) {
            const oracle::TestCircuit t = oracle::random_circuit(n, 0, 2.0, rng);
            const Matrix u = circuit_transition(t.to_library());
            for (int center = 1; center <= n; center++) {
                ModeTuple alpha;
                for (int m = 1; m <= 2 * center - 1; m++) {
                    alpha.push_back(m);
                }
                const Matrix phi = select_rows(u, alpha);
                std::vector<int> all(2 * n);
                std::iota(all.begin(), all.end(), 1);
                std::vector<double> right(n + 1, 0.0), left(n + 1, 0.0);
                for (const auto &beta : oracle::subsets(all, static_cast<int>(alpha.size()))) {
                    const double amp = oracle::laplace_minor(u, alpha, beta);
                    int l = 0, r = 0;
                    for (int q = 1; q <= n; q++) {
                        if (!identity_at(beta, q)) {
                            l = l == 0 ? q : l;
                            r = q;
                        }
                    }
                    if (xy_at(beta, r)) {
                        right[r] += amp * amp;
                    }
                    if (xy_at(beta, l)) {
                        left[l] += amp * amp;
                    }
                }
                for (int s = 1; s <= n; s++) {
                    worst = std::max(worst, std::abs(boundary_weight_sq(phi, n, s, Edge::Right) - right[s]));
                    worst = std::max(worst, std::abs(boundary_weight_sq(phi, n, s, Edge::Left) - left[s]));
                    checks += 2;
                }
            }
        }
    }
    return {worst <= 1e-10, std::to_string(checks) + " (site, side) weights, n = 2..6, max |diff| " +
                                fmt("%.2e", worst) + " (<= 1e-10)"};
}

// ---- 5-8: experiments; CSV artifacts are kept for the determinism check --------

using Artifacts = std::map<std::string, std::string>;

std::string curve_csv(const EpsilonCurve &c) {
    std::string out = "epsilon,error\n";
    char buf[64];
    for (size_t i = 0; i < c.epsilons.size(); i++) {
        std::snprintf(buf, sizeof(buf), "%.9g,%.9g\n", c.epsilons[i], c.errors[i]);
        out += buf;
    }
    return out;
}

Outcome epsilon_curves(int threads, Artifacts &art) {
    Stopwatch clock;
    const auto grid = epsilon_grid(0.05, 0.95, 0.05);
    bool pass = true;
    std::string detail;
    for (double nu : {2.0, 3.0, 4.0, 0.1, 0.5}) {
        EnsembleSpec s;
        s.n = 6;
        s.nu = nu;
        s.periods = kEpsilonPeriods;
        s.realizations = 25;
        s.threads = threads;
        const EpsilonCurve c = optimize_epsilon(s, grid);
        art["eps_nu" + fmt("%g", nu)] = curve_csv(c);
        bool ok;
        if (nu >= 2.0) {
            ok = c.minimizer && *c.minimizer >= 0.15 - 1e-9 && *c.minimizer <= 0.45 + 1e-9;
            detail += "nu=" + fmt("%g", nu) + ": min at " + (c.minimizer ? fmt("%.2f", *c.minimizer) : "none");
        } else {
            ok = !c.pronounced(0.1);
            detail += "nu=" + fmt("%g", nu) + ": depth/range " + fmt("%.2f", c.range > 0 ? c.depth / c.range : 0.0);
        }
        detail += ok ? "; " : " (X); ";
        pass = pass && ok;
    }
    const double secs = clock.seconds();
    return {pass && secs <= 1800.0, detail + fmt("%.0f s (<= 1800 s)", secs)};
}

Outcome gate_pair(int threads, Artifacts &art) {
    const int n = 30;
    const DisorderRealization d = draw_disorder(n, 10.0, 1, 0);
    const Circuit c =
        build_gate_schedule(n, d, kPi / 4.0, 2 * kGatePairPeriods, parse_gate_list("17@4.71238898,17@9.42477796"));
    const PauliObservable b{PauliOp::X, n / 2};
    ExactOptions o;
    o.threads = threads;
    Stopwatch clock;
    const LightconeGrid exact = exact_lightcone(c, b, o);
    const double secs = clock.seconds();
    const LightconeGrid approx = approx_lightcone(c, b, {0.2, EdgeScheme::Mirrored}).grid;
    art["gates_exact"] = grid_to_csv(exact);
    art["gates_approx"] = grid_to_csv(approx);
    int worst = 0;
    bool presence_ok = true;
    for (int r = 0; r < exact.rows(); r++) {
        const auto [el, er] = envelope(exact, r);
        const auto [al, ar] = envelope(approx, r);
        if ((el == 0) != (al == 0)) {
            presence_ok = false;
            continue;
        }
        worst = std::max({worst, std::abs(el - al), std::abs(er - ar)});
    }
    const bool pass = secs <= 60.0 && worst <= 2 && presence_ok;
    return {pass, "exact " + fmt("%.1f s (<= 60 s)", secs) + ", max envelope offset " + std::to_string(worst) +
                      " sites (<= 2) over " + std::to_string(exact.rows()) + " time slices"};
}

EnsembleSpec long_spec(double nu, int threads) {
    EnsembleSpec s;
    s.n = 30;
    s.nu = nu;
    s.periods = kLongPeriods;
    s.realizations = 100;
    s.epsilon = 0.2;
    s.threads = threads;
    return s;
}

struct MblRuns {
    std::map<double, LightconeGrid> grids;
};

Outcome mbl_signature(int threads, Artifacts &art, MblRuns &runs) {
    Stopwatch clock;
    bool pass = true;
    std::string detail;
    for (double nu : {0.0, 0.5, 2.0}) {
        const LightconeGrid g = run_ensemble(long_spec(nu, threads), Engine::Approx).mean;
        art["mbl_nu" + fmt("%g", nu)] = grid_to_csv(g);
        runs.grids[nu] = g;
        const double v = asymptotic_value(g, 25);
        const bool ok = nu < 1.0 ? std::abs(v - kPage) <= 0.05 : v < kPage - 0.05;
        detail += "nu=" + fmt("%g", nu) + ": " + fmt("%.4f", v) + (ok ? "; " : " (X); ");
        pass = pass && ok;
    }
    const double secs = clock.seconds();
    return {pass && secs <= 3600.0, detail + "need |v - 0.7071| <= 0.05 below nu_c, v < 0.6571 at nu=2; " +
                                        fmt("%.0f s (<= 3600 s)", secs)};
}

Outcome log_lightcone(const MblRuns &runs) {
    const SvdAnalysis loc = svd_principal_vector(runs.grids.at(2.0));
    const SvdAnalysis bal = svd_principal_vector(runs.grids.at(0.0));
    const bool a = !loc.degenerate && loc.log_fit.r_squared >= 0.95;
    const bool b = !bal.degenerate && bal.log_fit.r_squared <= bal.linear_fit.r_squared - 0.1;
    return {a && b, "nu=2 semi-log R2 " + fmt("%.3f", loc.log_fit.r_squared) + " (>= 0.95); nu=0 semi-log R2 " +
                        fmt("%.3f", bal.log_fit.r_squared) + " vs linear " + fmt("%.3f", bal.linear_fit.r_squared) +
                        " (needs >= 0.1 lower)"};
}

// ---- 9: Anderson baseline ----------------------------------------------------

Outcome anderson() {
    EnsembleSpec s;
    s.n = 40;
    s.nu = 1.0;
    s.periods = kLongPeriods;
    s.realizations = 25;
    s.interactions = false;
    const LightconeGrid g = run_ensemble(s, Engine::Gaussian).mean;
    const int q = g.rows() / 4;
    const double second = mean_support_width(g, q, 2 * q);
    const double last = mean_support_width(g, 3 * q, g.rows());
    return {last - second < 2.0, "mean width second quarter " + fmt("%.2f", second) + ", final quarter " +
                                     fmt("%.2f", last) + ", growth " + fmt("%.2f", last - second) + " (< 2)"};
}

}  // namespace

int main(int argc, char **argv) {
    std::set<int> only;
    for (int i = 1; i < argc; i++) {
        only.insert(std::atoi(argv[i]));
    }
    const auto wanted = [&](int k) { return only.empty() || only.count(k) > 0; };

    int failures = 0;
    const auto report = [&](int k, const char *name, const Outcome &o) {
        std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", k, name, o.detail.c_str());
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    };

    if (wanted(1)) {
        report(1, "oracle equivalence, exact engine", exact_equivalence());
    }
    if (wanted(2)) {
        report(2, "oracle equivalence, Gaussian engine", gaussian_equivalence());
    }
    if (wanted(3)) {
        report(3, "modified Cauchy-Binet identity", cauchy_binet());
    }
    if (wanted(4)) {
        report(4, "boundary weight two-determinant form", boundary_formula());
    }

    Artifacts first;
    MblRuns runs;
    const bool need_mbl = wanted(7) || wanted(8) || wanted(10);
    if (wanted(5) || wanted(10)) {
        const Outcome o = epsilon_curves(1, first);
        if (wanted(5)) {
            report(5, "epsilon optimization curve", o);
        }
    }
    if (wanted(6) || wanted(10)) {
        const Outcome o = gate_pair(1, first);
        if (wanted(6)) {
            report(6, "two-gate exact reference vs approximation", o);
        }
    }
    if (need_mbl) {
        const Outcome o = mbl_signature(1, first, runs);
        if (wanted(7)) {
            report(7, "localization transition signature", o);
        }
        if (wanted(8)) {
            report(8, "logarithmic lightcone fit", log_lightcone(runs));
        }
    }
    if (wanted(9)) {
        report(9, "Anderson baseline", anderson());
    }
    if (wanted(10)) {
        Artifacts second;
        MblRuns unused;
        epsilon_curves(3, second);
        gate_pair(3, second);
        mbl_signature(3, second, unused);
        int differing = 0;
        for (const auto &[name, text] : first) {
            differing += second.at(name) == text ? 0 : 1;
        }
        report(10, "determinism across thread counts",
               {differing == 0 && first.size() == second.size(),
                std::to_string(first.size()) + " CSV outputs (threads 1 vs 3), " + std::to_string(differing) +
                    " differ"});
    }
    return failures == 0 ? 0 : 1;
}
