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

#include "otoc/experiments.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

#include "otoc/dense.h"
#include "otoc/exact.h"
#include "otoc/gaussian.h"
#include "otoc/parallel.h"

namespace otoc {

void check_grid(const LightconeGrid &g) {
    if (static_cast<size_t>(g.values.rows()) != g.times.size()) {
        throw std::invalid_argument("grid: " + std::to_string(g.values.rows()) + " rows but " +
                                    std::to_string(g.times.size()) + " times");
    }
    for (size_t k = 1; k < g.times.size(); k++) {
        if (!(g.times[k] > g.times[k - 1])) {
            throw std::invalid_argument("grid: times not strictly increasing at row " + std::to_string(k));
        }
    }
    for (Eigen::Index r = 0; r < g.values.rows(); r++) {
        for (Eigen::Index c = 0; c < g.values.cols(); c++) {
            const double v = g.values(r, c);
            if (!(v >= 0.0 && v <= 1.0)) {
                throw std::invalid_argument("grid: value " + std::to_string(v) + " outside [0, 1] at (" +
                                            std::to_string(r) + ", " + std::to_string(c) + ")");
            }
        }
    }
}

Engine parse_engine(std::string_view name) {
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (s == "exact") {
        return Engine::Exact;
    }
    if (s == "approx") {
        return Engine::Approx;
    }
    if (s == "gaussian") {
        return Engine::Gaussian;
    }
    if (s == "oracle") {
        return Engine::Oracle;
    }
    throw std::invalid_argument("unknown engine '" + s + "'");
}

std::string engine_name(Engine e) {
    switch (e) {
        case Engine::Exact:
            return "exact";
        case Engine::Approx:
            return "approx";
        case Engine::Gaussian:
            return "gaussian";
        case Engine::Oracle:
            return "oracle";
    }
    return "unknown";
}

PauliObservable EnsembleSpec::evolved() const {
    if (observable) {
        return *observable;
    }
    return {PauliOp::X, std::max(1, n / 2)};
}

std::pair<Circuit, DisorderRealization> realization_circuit(const EnsembleSpec &spec, std::uint64_t r) {
    DisorderRealization d = draw_disorder(spec.n, spec.nu, spec.base_seed, r);
    Circuit c = build_alternating_circuit(spec.n, d, spec.dt, spec.periods, spec.interactions);
    return {std::move(c), std::move(d)};
}

LightconeGrid run_realization(const EnsembleSpec &spec, Engine engine, std::uint64_t r) {
    const auto [c, d] = realization_circuit(spec, r);
    const PauliObservable b = spec.evolved();
    LightconeGrid g;
    switch (engine) {
        case Engine::Exact: {
            ExactOptions o;
            o.threads = 1;
            g = exact_lightcone(c, b, o);
            break;
        }
        case Engine::Approx:
            g = approx_lightcone(c, b, {spec.epsilon, spec.scheme}).grid;
            break;
        case Engine::Gaussian:
            g = gaussian_lightcone(c, b).otoc;
            break;
        case Engine::Oracle:
            g = dense::lightcone(c, b);
            break;
    }
    g.meta.engine = engine_name(engine);
    g.meta.nu = spec.nu;
    g.meta.epsilon = engine == Engine::Approx ? spec.epsilon : 0.0;
    g.meta.dt = spec.dt;
    g.meta.seed = spec.base_seed;
    g.meta.realizations = 1;
    return g;
}

EnsembleResult run_ensemble(const EnsembleSpec &spec, Engine engine) {
    if (spec.realizations < 1) {
        throw std::invalid_argument("ensemble: realizations must be >= 1");
    }
    const auto count = static_cast<size_t>(spec.realizations);
    std::vector<LightconeGrid> grids(count);
    parallel_for(
        count, [&](size_t r) { grids[r] = run_realization(spec, engine, r); }, spec.threads);

    EnsembleResult out;
    out.mean = grids[0];
    Matrix sum = Matrix::Zero(grids[0].values.rows(), grids[0].values.cols());
    Matrix sumsq = sum;
    for (const auto &g : grids) {
        sum += g.values;
        sumsq += g.values.cwiseProduct(g.values);
    }
    const double rr = static_cast<double>(count);
    out.mean.values = sum / rr;
    out.standard_error = Matrix::Zero(sum.rows(), sum.cols());
    if (count > 1) {
        Matrix var = (sumsq - sum.cwiseProduct(sum) / rr) / (rr - 1.0);
        out.standard_error = (var.cwiseMax(0.0) / rr).cwiseSqrt();
    }
    out.mean.meta.realizations = spec.realizations;
    return out;
}

double per_pixel_error(const LightconeGrid &approx, const LightconeGrid &exact) {
    if (approx.values.rows() != exact.values.rows() || approx.values.cols() != exact.values.cols()) {
        throw std::invalid_argument("per_pixel_error: grid shapes differ");
    }
    return (approx.values - exact.values).norm() / static_cast<double>(approx.values.size());
}

std::vector<double> epsilon_grid(double start, double stop, double step) {
    if (!(step > 0.0) || stop < start) {
        throw std::invalid_argument("epsilon_grid: need step > 0 and stop >= start");
    }
    std::vector<double> out;
    const auto count = static_cast<int>(std::floor((stop - start) / step + 1e-9));
    for (int i = 0; i <= count; i++) {
        out.push_back(start + step * i);
    }
    return out;
}

EpsilonCurve analyze_curve(std::vector<double> epsilons, std::vector<double> errors) {
    if (epsilons.size() != errors.size()) {
        throw std::invalid_argument("analyze_curve: size mismatch");
    }
    EpsilonCurve c;
    c.epsilons = std::move(epsilons);
    c.errors = std::move(errors);
    const size_t m = c.errors.size();
    if (m == 0) {
        return c;
    }
    const auto [lo, hi] = std::minmax_element(c.errors.begin(), c.errors.end());
    c.range = *hi - *lo;
    for (size_t i = 1; i + 1 < m; i++) {
        if (!(c.errors[i] < c.errors[i - 1] && c.errors[i] <= c.errors[i + 1])) {
            continue;
        }
        const double left = *std::max_element(c.errors.begin(), c.errors.begin() + static_cast<long>(i));
        const double right = *std::max_element(c.errors.begin() + static_cast<long>(i) + 1, c.errors.end());
        const double depth = std::min(left, right) - c.errors[i];
        if (depth > c.depth) {
            c.depth = depth;
            c.minimizer = c.epsilons[i];
        }
    }
    return c;
}

EpsilonCurve optimize_epsilon(const EnsembleSpec &spec, const std::vector<double> &epsilons) {
    if (spec.realizations < 1 || epsilons.empty()) {
        throw std::invalid_argument("optimize_epsilon: need realizations >= 1 and a nonempty grid");
    }
    const auto count = static_cast<size_t>(spec.realizations);
    std::vector<std::vector<double>> per(count);
    parallel_for(
        count,
        [&](size_t r) {
            const auto [c, d] = realization_circuit(spec, r);
            const PauliObservable b = spec.evolved();
            const LightconeGrid exact = dense::lightcone(c, b);
            per[r].resize(epsilons.size());
            for (size_t i = 0; i < epsilons.size(); i++) {
                per[r][i] = per_pixel_error(approx_lightcone(c, b, {epsilons[i], spec.scheme}).grid, exact);
            }
        },
        spec.threads);
    std::vector<double> errors(epsilons.size(), 0.0);
    for (const auto &row : per) {
        for (size_t i = 0; i < row.size(); i++) {
            errors[i] += row[i];
        }
    }
    for (double &e : errors) {
        e /= static_cast<double>(count);
    }
    return analyze_curve(epsilons, errors);
}

LineFit fit_line(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("fit_line: need at least two paired points");
    }
    const auto m = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (size_t i = 0; i < x.size(); i++) {
        mx += x[i];
        my += y[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (size_t i = 0; i < x.size(); i++) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LineFit f;
    f.points = static_cast<int>(x.size());
    f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    f.intercept = my - f.slope * mx;
    double ssr = 0.0;
    for (size_t i = 0; i < x.size(); i++) {
        const double r = y[i] - (f.slope * x[i] + f.intercept);
        ssr += r * r;
    }
    f.r_squared = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
    return f;
}

SvdAnalysis svd_principal_vector(const LightconeGrid &grid, double fit_start) {
    if (grid.rows() < 2 || grid.sites() < 2) {
        throw std::invalid_argument("svd_principal_vector: grid must be at least 2 x 2");
    }
    Eigen::JacobiSVD<Matrix> svd(grid.values, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SvdAnalysis out;
    const auto &s = svd.singularValues();
    out.sigma1 = s(0);
    out.sigma2 = s.size() > 1 ? s(1) : 0.0;
    Vector u = svd.matrixU().col(0);
    Vector v = svd.matrixV().col(0);
    if (u.mean() < 0.0) {
        u = -u;
        v = -v;
    }
    out.u1.assign(u.data(), u.data() + u.size());
    out.v1.assign(v.data(), v.data() + v.size());
    out.degenerate = out.sigma1 - out.sigma2 < 1e-12;
    if (out.degenerate) {
        return out;
    }
    std::vector<double> lx;
    std::vector<double> tx;
    std::vector<double> y;
    for (size_t k = 0; k < grid.times.size(); k++) {
        const double t = grid.times[k];
        if (t >= fit_start - 1e-9 && t > 0.0) {
            lx.push_back(std::log10(t));
            tx.push_back(t);
            y.push_back(out.u1[k]);
        }
    }
    if (y.size() >= 2) {
        out.log_fit = fit_line(lx, y);
        out.linear_fit = fit_line(tx, y);
    }
    return out;
}

double asymptotic_value(const LightconeGrid &grid, int site) {
    if (site < 1 || site > grid.sites()) {
        throw std::out_of_range("asymptotic_value: site out of range");
    }
    if (grid.rows() == 0) {
        return 0.0;
    }
    return grid.values.col(site - 1).maxCoeff();
}

std::pair<int, int> envelope(const LightconeGrid &grid, int row, double threshold) {
    int left = 0;
    int right = 0;
    for (int s = 1; s <= grid.sites(); s++) {
        if (grid.values(row, s - 1) > threshold) {
            if (left == 0) {
                left = s;
            }
            right = s;
        }
    }
    return {left, right};
}

int support_width(const LightconeGrid &grid, int row, double threshold) {
    const auto [l, r] = envelope(grid, row, threshold);
    return l == 0 ? 0 : r - l + 1;
}

double mean_support_width(const LightconeGrid &grid, int begin, int end, double threshold) {
    if (begin < 0 || end > grid.rows() || begin >= end) {
        throw std::out_of_range("mean_support_width: bad row range");
    }
    double sum = 0.0;
    for (int r = begin; r < end; r++) {
        sum += support_width(grid, r, threshold);
    }
    return sum / (end - begin);
}

}  // namespace otoc
