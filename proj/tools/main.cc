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

// otoc: out-of-time-ordered correlators of Gaussian + interaction circuits.
//
// Exit status: 0 success, 1 input error, 2 internal-consistency failure.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "otoc/approx.h"
#include "otoc/dense.h"
#include "otoc/exact.h"
#include "otoc/experiments.h"
#include "otoc/gaussian.h"
#include "otoc/io.h"
#include "otoc/parallel.h"

namespace {

using namespace otoc;

constexpr int kInputError = 1;
constexpr int kConsistencyError = 2;

struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flags shared by the engine subcommands; each mirrors a RunConfig field.
struct Flags {
    RunConfig cfg;
    std::string config_path;
    std::string boundary_out;
};

void add_model_flags(CLI::App *app, Flags &f, bool with_output = true) {
    app->add_option("--config", f.config_path, "JSON run configuration; flags override it");
    app->add_option("--n", f.cfg.n, "qubits");
    app->add_option("--nu", f.cfg.nu, "disorder strength");
    app->add_option("--dt", f.cfg.dt, "Gaussian layer duration (default pi/4)");
    app->add_option("--periods", f.cfg.periods, "alternating periods (two steps each)");
    app->add_option("--interactions", f.cfg.interactions, "include interaction layers (true/false)");
    app->add_option("--steps", f.cfg.steps, "steps when --gates is given (default 2*periods)");
    app->add_option("--gates", f.cfg.gates, "explicit gates 'qubit@time,...' instead of alternating layers");
    app->add_option("--epsilon", f.cfg.epsilon, "approximation threshold");
    app->add_option("--scheme", f.cfg.scheme, "left-edge scheme: mirrored | single-pass");
    app->add_option("--observable", f.cfg.observable, "evolved operator B (default X_{n/2})");
    app->add_option("--probe", f.cfg.probe, "single probe A; prints C(A, B(t)) at the final time");
    app->add_option("--realizations", f.cfg.realizations, "disorder realizations");
    app->add_option("--seed", f.cfg.base_seed, "base seed");
    if (with_output) {
        app->add_option("--out", f.cfg.output_path, "output file");
        app->add_option("--format", f.cfg.output_format, "csv | json | pgm (default from extension)");
    }
    app->add_option("--threads", f.cfg.threads, "worker threads (default OTOC_THREADS or all cores)");
}

RunConfig resolve(const Flags &f) {
    RunConfig c = f.config_path.empty() ? RunConfig{} : load_run_config(f.config_path);
    c = merge(c, f.cfg);
    // Re-validate the merged result through the same schema checks.
    c = parse_run_config(run_config_to_json(c));
    if (c.threads) {
        set_default_threads(*c.threads);
    }
    return c;
}

EnsembleSpec spec_from(const RunConfig &c) {
    EnsembleSpec s;
    if (!c.n) {
        throw ConfigError("model.n: required");
    }
    s.n = *c.n;
    s.nu = c.nu.value_or(0.0);
    s.dt = c.dt.value_or(std::numbers::pi / 4.0);
    s.periods = c.periods.value_or(10);
    s.interactions = c.interactions.value_or(true);
    s.epsilon = c.epsilon.value_or(0.2);
    s.scheme = c.scheme.value_or("mirrored") == "single-pass" ? EdgeScheme::SinglePass : EdgeScheme::Mirrored;
    s.realizations = c.realizations.value_or(1);
    s.base_seed = c.base_seed.value_or(1);
    if (c.observable) {
        s.observable = parse_pauli(*c.observable);
    }
    s.threads = c.threads.value_or(0);
    return s;
}

Circuit scheduled_circuit(const RunConfig &c, const EnsembleSpec &s, std::uint64_t r) {
    const auto d = draw_disorder(s.n, s.nu, s.base_seed, r);
    std::vector<double> snapped;
    const int steps = c.steps.value_or(2 * s.periods);
    Circuit circ = build_gate_schedule(s.n, d, s.dt, steps, parse_gate_list(*c.gates), &snapped);
    for (size_t i = 0; i < snapped.size(); i++) {
        if (snapped[i] > 1e-6) {
            std::cerr << "warning: gate " << i + 1 << " moved by " << snapped[i] << " to the nearest layer boundary\n";
        }
    }
    return circ;
}

LightconeGrid engine_grid(Engine e, const Circuit &c, const EnsembleSpec &s) {
    const PauliObservable b = s.evolved();
    switch (e) {
        case Engine::Exact:
            return exact_lightcone(c, b);
        case Engine::Approx:
            return approx_lightcone(c, b, {s.epsilon, s.scheme}).grid;
        case Engine::Gaussian:
            return gaussian_lightcone(c, b).otoc;
        case Engine::Oracle:
            return dense::lightcone(c, b);
    }
    throw std::logic_error("unreachable");
}

double engine_value(Engine e, const Circuit &c, const PauliObservable &a, const PauliObservable &b) {
    switch (e) {
        case Engine::Exact:
            return exact_otoc(c, a, b);
        case Engine::Gaussian:
            return gaussian_otoc(c, a, b);
        case Engine::Oracle:
            return dense::otoc(c, a, b);
        case Engine::Approx:
            throw ConfigError("probe: the approx engine only produces full lightcone grids");
    }
    throw std::logic_error("unreachable");
}

void emit(const LightconeGrid &g, const RunConfig &c) {
    check_grid(g);
    if (c.output_path) {
        const GridFormat fmt = c.output_format ? parse_format(*c.output_format) : format_from_path(*c.output_path);
        write_grid(g, *c.output_path, fmt);
        std::cerr << "wrote " << g.rows() << " x " << g.sites() << " grid to " << *c.output_path << "\n";
    } else {
        std::cout << grid_to_csv(g);
    }
}

int run_engine(Engine e, const Flags &f) {
    const RunConfig c = resolve(f);
    EnsembleSpec s = spec_from(c);
    if (e == Engine::Gaussian && !c.interactions && !c.gates) {
        s.interactions = false;
    }
    if (c.probe) {
        const Circuit circ = c.gates ? scheduled_circuit(c, s, 0) : realization_circuit(s, 0).first;
        const double v = engine_value(e, circ, parse_pauli(*c.probe), s.evolved());
        std::printf("%.12g\n", v);
        return 0;
    }
    LightconeGrid g;
    if (c.gates) {
        const Circuit circ = scheduled_circuit(c, s, 0);
        g = engine_grid(e, circ, s);
        g.meta.engine = engine_name(e);
        g.meta.nu = s.nu;
        g.meta.dt = s.dt;
        g.meta.seed = s.base_seed;
        g.meta.epsilon = e == Engine::Approx ? s.epsilon : 0.0;
        if (s.realizations > 1) {
            std::cerr << "note: --gates runs a single realization\n";
        }
    } else {
        g = run_ensemble(s, e).mean;
    }
    emit(g, c);
    if (e == Engine::Gaussian && !f.boundary_out.empty()) {
        const Circuit circ = c.gates ? scheduled_circuit(c, s, 0) : realization_circuit(s, 0).first;
        write_grid(gaussian_lightcone(circ, s.evolved(), true).boundary, f.boundary_out);
    }
    return 0;
}

// Random matchgate + interaction circuits against the dense oracle.
int run_validate(int max_n, int max_gates, int circuits, std::uint64_t seed) {
    if (max_n < 2 || max_n > dense::kMaxQubits || max_gates < 0 || circuits < 1) {
        throw ConfigError("validate: need 2 <= max-n <= 12, max-gates >= 0, circuits >= 1");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst_exact = 0.0;
    double worst_gauss = 0.0;
    for (int i = 0; i < circuits; i++) {
        const int n = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_n - 1));
        const int g = static_cast<int>(rng() % static_cast<std::uint64_t>(max_gates + 1));
        const double nu = 5.0 * unit(rng);
        std::vector<double> nus(static_cast<size_t>(n));
        for (auto &x : nus) {
            x = nu * (2.0 * unit(rng) - 1.0);
        }
        const Matrix gen = xy_generator(nus);
        Circuit c;
        c.n = n;
        for (int k = 0; k <= g; k++) {
            std::vector<int> gates;
            if (k < g) {
                gates.push_back(1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1)));
            }
            c.steps.push_back(make_step(gen, 0.1 + 1.4 * unit(rng), gates));
        }
        const auto u = dense::circuit_unitary(c);
        const auto free_u = dense::circuit_unitary(c.without_gates());
        const PauliObservable a{PauliOp::X, std::max(1, n / 2)};
        for (int s = 1; s <= n; s++) {
            const PauliObservable b{PauliOp::Z, s};
            const auto pa = dense::pauli(n, a);
            const auto pb = dense::pauli(n, b);
            worst_exact = std::max(worst_exact, std::abs(exact_otoc(c, a, b) - dense::otoc(pa, dense::evolve(u, pb))));
            worst_gauss = std::max(worst_gauss, std::abs(gaussian_otoc(c.without_gates(), a, b) -
                                                         dense::otoc(pa, dense::evolve(free_u, pb))));
        }
    }
    std::printf("exact    max |diff| = %.3e (tolerance 1e-8)\n", worst_exact);
    std::printf("gaussian max |diff| = %.3e (tolerance 1e-10)\n", worst_gauss);
    if (worst_exact > 1e-8 || worst_gauss > 1e-10) {
        throw ConsistencyError("engines disagree with the dense oracle");
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Out-of-time-ordered correlators for Gaussian-fermionic circuits with interaction gates"};
    app.require_subcommand(1);

    Flags exact_f, approx_f, gauss_f, oracle_f, ens_f, opt_f;
    auto *exact = app.add_subcommand("exact", "exact determinantal series");
    add_model_flags(exact, exact_f);
    auto *approx = app.add_subcommand("approx", "conditional-Gaussian lightcone approximation");
    add_model_flags(approx, approx_f);
    auto *gauss = app.add_subcommand("gaussian", "closed form for matchgate-only circuits");
    add_model_flags(gauss, gauss_f);
    gauss->add_option("--boundary-out", gauss_f.boundary_out, "also write the boundary weights b_s(t)");
    auto *oracle = app.add_subcommand("oracle", "dense state-vector reference (n <= 12)");
    add_model_flags(oracle, oracle_f);

    std::string ens_engine = "approx";
    auto *ens = app.add_subcommand("ensemble", "disorder-averaged lightcone with any engine");
    add_model_flags(ens, ens_f);
    ens->add_option("--engine", ens_engine, "exact | approx | gaussian | oracle");

    double eps_start = 0.05, eps_stop = 0.95, eps_step = 0.05;
    auto *opt = app.add_subcommand("optimize-eps", "error of the approximation against the oracle versus epsilon");
    add_model_flags(opt, opt_f, false);
    opt->add_option("--eps-start", eps_start, "first epsilon (default 0.05)");
    opt->add_option("--eps-stop", eps_stop, "last epsilon (default 0.95)");
    opt->add_option("--eps-step", eps_step, "epsilon spacing (default 0.05)");

    std::string in_path;
    int site = 0;
    double fit_start = kDefaultFitStart;
    auto *analyze = app.add_subcommand("analyze", "principal singular vector fit and limiting value of a grid");
    analyze->add_option("--in", in_path, "grid CSV")->required();
    analyze->add_option("--site", site, "site for the limiting value (default 5n/6)");
    analyze->add_option("--fit-start", fit_start, "fit window start time (default 11 pi/4)");

    int max_n = 6, max_gates = 3, circuits = 20;
    std::uint64_t val_seed = 1;
    auto *validate_cmd = app.add_subcommand("validate", "oracle equivalence of the exact and Gaussian engines");
    validate_cmd->add_option("--max-n", max_n, "largest chain length (default 6)");
    validate_cmd->add_option("--max-gates", max_gates, "largest interaction gate count (default 3)");
    validate_cmd->add_option("--circuits", circuits, "random circuits, sizes drawn in [2, max-n] (default 20)");
    validate_cmd->add_option("--seed", val_seed, "circuit seed (default 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }

    try {
        if (*exact) {
            return run_engine(Engine::Exact, exact_f);
        }
        if (*approx) {
            return run_engine(Engine::Approx, approx_f);
        }
        if (*gauss) {
            return run_engine(Engine::Gaussian, gauss_f);
        }
        if (*oracle) {
            return run_engine(Engine::Oracle, oracle_f);
        }
        if (*ens) {
            ens_f.cfg.engine = ens_engine;
            const RunConfig c = resolve(ens_f);
            EnsembleSpec s = spec_from(c);
            const EnsembleResult r = run_ensemble(s, parse_engine(c.engine.value_or("approx")));
            emit(r.mean, c);
            return 0;
        }
        if (*opt) {
            const RunConfig c = resolve(opt_f);
            EnsembleSpec s = spec_from(c);
            if (!c.realizations) {
                s.realizations = 25;
            }
            const EpsilonCurve curve = optimize_epsilon(s, epsilon_grid(eps_start, eps_stop, eps_step));
            std::printf("epsilon,error\n");
            for (size_t i = 0; i < curve.epsilons.size(); i++) {
                std::printf("%.9g,%.9g\n", curve.epsilons[i], curve.errors[i]);
            }
            if (curve.minimizer) {
                std::printf("# interior minimum at epsilon = %.4g (depth %.3g, curve range %.3g)\n", *curve.minimizer,
                            curve.depth, curve.range);
            } else {
                std::printf("# no interior minimum (flat curve)\n");
            }
            return 0;
        }
        if (*analyze) {
            const LightconeGrid g = read_grid_csv(in_path);
            check_grid(g);
            const int s = site > 0 ? site : std::max(1, (5 * g.sites()) / 6);
            const SvdAnalysis a = svd_principal_vector(g, fit_start);
            std::printf("sigma1 %.9g\nsigma2 %.9g\n", a.sigma1, a.sigma2);
            if (a.degenerate) {
                std::printf("degenerate leading singular pair; no fit\n");
            } else {
                std::printf("log10 fit slope %.6g intercept %.6g R2 %.6f points %d\n", a.log_fit.slope,
                            a.log_fit.intercept, a.log_fit.r_squared, a.log_fit.points);
                std::printf("linear fit slope %.6g intercept %.6g R2 %.6f\n", a.linear_fit.slope,
                            a.linear_fit.intercept, a.linear_fit.r_squared);
            }
            std::printf("limiting value at site %d: %.9g\n", s, asymptotic_value(g, s));
            return 0;
        }
        if (*validate_cmd) {
            return run_validate(max_n, max_gates, circuits, val_seed);
        }
    } catch (const ConsistencyError &e) {
        std::cerr << "consistency failure: " << e.what() << "\n";
        return kConsistencyError;
    } catch (const std::invalid_argument &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::out_of_range &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::runtime_error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kConsistencyError;
    }
    return 0;
}
