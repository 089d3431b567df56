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

#ifndef OTOC_EXPERIMENTS_H
#define OTOC_EXPERIMENTS_H

#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "otoc/approx.h"
#include "otoc/circuit.h"
#include "otoc/grid.h"

namespace otoc {

enum class Engine { Exact, Approx, Gaussian, Oracle };

Engine parse_engine(std::string_view name);
std::string engine_name(Engine e);

struct EnsembleSpec {
    int n = 30;
    double nu = 0.0;
    double dt = std::numbers::pi / 4.0;
    int periods = 10;
    double epsilon = 0.2;
    EdgeScheme scheme = EdgeScheme::Mirrored;
    int realizations = 100;
    std::uint64_t base_seed = 1;
    bool interactions = true;
    std::optional<PauliObservable> observable;  // default X_{floor(n/2)}
    int threads = 0;

    PauliObservable evolved() const;
};

/// Circuit and disorder of realization r; realization r always draws from
/// (base_seed, r) so any subset can be rerun alone.
std::pair<Circuit, DisorderRealization> realization_circuit(const EnsembleSpec &spec, std::uint64_t r);

/// Lightcone of one realization with the given engine.
LightconeGrid run_realization(const EnsembleSpec &spec, Engine engine, std::uint64_t r);

struct EnsembleResult {
    LightconeGrid mean;    // mean of C over realizations
    Matrix standard_error;  // per pixel; zero when R = 1
};

/// Realizations run concurrently; the reduction runs in realization order.
EnsembleResult run_ensemble(const EnsembleSpec &spec, Engine engine);

struct EpsilonCurve {
    std::vector<double> epsilons;
    std::vector<double> errors;
    std::optional<double> minimizer;  // interior local minimum, if any
    double depth = 0.0;               // of that minimum
    double range = 0.0;               // max - min of the curve

    bool pronounced(double fraction = 0.1) const { return minimizer.has_value() && depth >= fraction * range; }
};

/// ||approx - exact||_F / (T n), with the dense oracle as reference.
double per_pixel_error(const LightconeGrid &approx, const LightconeGrid &exact);

/// Error curve against the dense oracle, averaged over spec.realizations.
EpsilonCurve optimize_epsilon(const EnsembleSpec &spec, const std::vector<double> &epsilons);

/// Locates the deepest interior local minimum of a curve. The depth of a
/// candidate is min(max to its left, max to its right) minus its value.
EpsilonCurve analyze_curve(std::vector<double> epsilons, std::vector<double> errors);

std::vector<double> epsilon_grid(double start, double stop, double step);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int points = 0;
};

/// Least squares y = slope x + intercept.
LineFit fit_line(const std::vector<double> &x, const std::vector<double> &y);

struct SvdAnalysis {
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    std::vector<double> u1;  // temporal, nonnegative mean
    std::vector<double> v1;  // spatial
    bool degenerate = false;
    LineFit log_fit;     // u1 against log10 t on t >= fit_start
    LineFit linear_fit;  // u1 against t on the same window
};

constexpr double kDefaultFitStart = 11.0 * std::numbers::pi / 4.0;

SvdAnalysis svd_principal_vector(const LightconeGrid &grid, double fit_start = kDefaultFitStart);

/// max_t C(t, s).
double asymptotic_value(const LightconeGrid &grid, int site);

/// Outermost sites with C > threshold in row t; (0, 0) when none.
std::pair<int, int> envelope(const LightconeGrid &grid, int row, double threshold = 0.1);

/// right - left + 1 of the envelope; 0 when empty.
int support_width(const LightconeGrid &grid, int row, double threshold = 0.1);

/// Mean support width over rows [begin, end).
double mean_support_width(const LightconeGrid &grid, int begin, int end, double threshold = 0.1);

}  // namespace otoc

#endif
