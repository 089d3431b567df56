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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

namespace otoc {
namespace {

LightconeGrid make_grid(const Matrix &values, double dt = 1.0) {
    LightconeGrid g;
    g.values = values;
    for (Eigen::Index r = 0; r < values.rows(); r++) {
        g.times.push_back(dt * static_cast<double>(r));
    }
    return g;
}

TEST(Engine, NamesRoundTrip) {
    for (Engine e : {Engine::Exact, Engine::Approx, Engine::Gaussian, Engine::Oracle}) {
        EXPECT_EQ(parse_engine(engine_name(e)), e);
    }
    EXPECT_EQ(parse_engine("EXACT"), Engine::Exact);
    EXPECT_THROW(parse_engine("mps"), std::invalid_argument);
}

TEST(CheckGrid, RejectsMalformedGrids) {
    LightconeGrid g = make_grid(Matrix::Constant(3, 2, 0.5));
    EXPECT_NO_THROW(check_grid(g));
    g.values(1, 1) = 1.5;
    EXPECT_THROW(check_grid(g), std::invalid_argument);
    g = make_grid(Matrix::Constant(3, 2, 0.5));
    g.times[2] = g.times[1];
    EXPECT_THROW(check_grid(g), std::invalid_argument);
    g.times.pop_back();
    EXPECT_THROW(check_grid(g), std::invalid_argument);
}

EnsembleSpec small_spec() {
    EnsembleSpec s;
    s.n = 12;
    s.nu = 1.0;
    s.periods = 4;
    s.realizations = 5;
    s.base_seed = 77;
    return s;
}

TEST(Ensemble, MeanIsOrderedAverageOfRealizations) {
    EnsembleSpec s = small_spec();
    const EnsembleResult res = run_ensemble(s, Engine::Approx);
    Matrix sum = Matrix::Zero(res.mean.rows(), res.mean.sites());
    for (int r = 0; r < s.realizations; r++) {
        sum += run_realization(s, Engine::Approx, r).values;
    }
    EXPECT_EQ(res.mean.values, sum / static_cast<double>(s.realizations));
    EXPECT_EQ(res.mean.meta.realizations, 5);
    EXPECT_GT(res.standard_error.maxCoeff(), 0.0);
}

TEST(Ensemble, BitIdenticalAcrossThreadCounts) {
    EnsembleSpec s = small_spec();
    s.threads = 1;
    const EnsembleResult a = run_ensemble(s, Engine::Approx);
    s.threads = 4;
    const EnsembleResult b = run_ensemble(s, Engine::Approx);
    EXPECT_EQ(a.mean.values, b.mean.values);
    EXPECT_EQ(a.standard_error, b.standard_error);
}

TEST(Ensemble, RealizationDependsOnlyOnSeedAndIndex) {
    EnsembleSpec s = small_spec();
    s.interactions = false;
    const auto a = run_realization(s, Engine::Gaussian, 3);
    s.realizations = 50;
    const auto b = run_realization(s, Engine::Gaussian, 3);
    EXPECT_EQ(a.values, b.values);
    s.realizations = 1;
    EXPECT_EQ(run_ensemble(s, Engine::Gaussian).standard_error.maxCoeff(), 0.0);
}

TEST(Ensemble, GaussianEngineRefusesInteractions) {
    EnsembleSpec s = small_spec();
    s.realizations = 1;
    EXPECT_THROW(run_ensemble(s, Engine::Gaussian), std::invalid_argument);
}

TEST(Ensemble, DefaultObservableIsCentralX) {
    EnsembleSpec s;
    s.n = 30;
    EXPECT_EQ(s.evolved(), (PauliObservable{PauliOp::X, 15}));
}

TEST(PerPixelError, FrobeniusOverPixelCount) {
    const LightconeGrid a = make_grid(Matrix::Zero(2, 3));
    const LightconeGrid b = make_grid(Matrix::Ones(2, 3));
    EXPECT_DOUBLE_EQ(per_pixel_error(a, a), 0.0);
    EXPECT_NEAR(per_pixel_error(a, b), std::sqrt(6.0) / 6.0, 1e-15);
    EXPECT_THROW(per_pixel_error(a, make_grid(Matrix::Zero(3, 3))), std::invalid_argument);
}

TEST(EpsilonGrid, InclusiveStop) {
    const auto g = epsilon_grid(0.05, 0.95, 0.05);
    ASSERT_EQ(g.size(), 19u);
    EXPECT_NEAR(g.front(), 0.05, 1e-15);
    EXPECT_NEAR(g.back(), 0.95, 1e-12);
}

TEST(AnalyzeCurve, InteriorMinimumDepthAndRange) {
    const EpsilonCurve c = analyze_curve({0.1, 0.2, 0.3, 0.4, 0.5}, {1.0, 0.6, 0.2, 0.5, 0.8});
    ASSERT_TRUE(c.minimizer.has_value());
    EXPECT_NEAR(*c.minimizer, 0.3, 1e-15);
    EXPECT_NEAR(c.depth, 0.6, 1e-15);
    EXPECT_NEAR(c.range, 0.8, 1e-15);
    EXPECT_TRUE(c.pronounced());
}

TEST(AnalyzeCurve, MonotoneHasNoInteriorMinimum) {
    const EpsilonCurve c = analyze_curve({0.1, 0.2, 0.3}, {0.9, 0.5, 0.1});
    EXPECT_FALSE(c.minimizer.has_value());
    EXPECT_FALSE(c.pronounced());
    const EpsilonCurve shallow = analyze_curve({0.1, 0.2, 0.3, 0.4}, {1.0, 0.10, 0.09, 0.095});
    ASSERT_TRUE(shallow.minimizer.has_value());
    EXPECT_FALSE(shallow.pronounced());
}

TEST(FitLine, ExactLine) {
    const LineFit f = fit_line({1, 2, 3, 4}, {3, 5, 7, 9});
    EXPECT_NEAR(f.slope, 2.0, 1e-12);
    EXPECT_NEAR(f.intercept, 1.0, 1e-12);
    EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
    EXPECT_EQ(f.points, 4);
}

TEST(Svd, RankOneGridRecoversFactors) {
    const int t = 40, n = 8;
    Vector time_profile(t), space(n);
    std::vector<double> times;
    for (int k = 0; k < t; k++) {
        times.push_back(0.5 * (k + 1));
        time_profile(k) = 0.3 + 0.2 * std::log10(times.back());
    }
    for (int s = 0; s < n; s++) {
        space(s) = 1.0 / (1.0 + std::abs(s - 3.5));
    }
    LightconeGrid g;
    g.values = time_profile * space.transpose();
    g.times = times;
    const SvdAnalysis a = svd_principal_vector(g, 2.0);
    EXPECT_FALSE(a.degenerate);
    EXPECT_NEAR(a.sigma2, 0.0, 1e-12);
    EXPECT_NEAR(a.sigma1, time_profile.norm() * space.norm(), 1e-10);
    const Vector u = Eigen::Map<const Vector>(a.u1.data(), t);
    EXPECT_NEAR(std::abs(u.dot(time_profile.normalized())), 1.0, 1e-12);
    EXPECT_GT(u.mean(), 0.0);
    EXPECT_NEAR(a.log_fit.r_squared, 1.0, 1e-12);
    EXPECT_LT(a.linear_fit.r_squared, a.log_fit.r_squared);
    EXPECT_EQ(a.log_fit.points, 37);
}

TEST(Svd, DegenerateTopPairIsReported) {
    LightconeGrid g = make_grid(Matrix::Identity(3, 3));
    const SvdAnalysis a = svd_principal_vector(g);
    EXPECT_TRUE(a.degenerate);
    EXPECT_EQ(a.log_fit.points, 0);
}

TEST(AsymptoticValue, MaxOverTime) {
    Matrix v = Matrix::Zero(4, 3);
    EXPECT_EQ(asymptotic_value(make_grid(v), 2), 0.0);
    v(1, 1) = 0.7;
    v(3, 1) = 0.6;
    EXPECT_NEAR(asymptotic_value(make_grid(v), 2), 0.7, 1e-15);
    Matrix w = v;
    w(2, 1) = 0.65;
    // Pointwise domination carries over to the maximum.
    EXPECT_GE(asymptotic_value(make_grid(w), 2), asymptotic_value(make_grid(v), 2));
    EXPECT_THROW(asymptotic_value(make_grid(v), 4), std::out_of_range);
}

TEST(Envelope, OutermostSitesAboveThreshold) {
    Matrix v = Matrix::Zero(2, 6);
    v(1, 1) = 0.2;
    v(1, 2) = 0.05;
    v(1, 4) = 0.11;
    const LightconeGrid g = make_grid(v);
    EXPECT_EQ(envelope(g, 0), (std::pair<int, int>{0, 0}));
    EXPECT_EQ(envelope(g, 1), (std::pair<int, int>{2, 5}));
    EXPECT_EQ(support_width(g, 1), 4);
    EXPECT_EQ(support_width(g, 0), 0);
    EXPECT_NEAR(mean_support_width(g, 0, 2), 2.0, 1e-15);
    EXPECT_THROW(mean_support_width(g, 1, 1), std::out_of_range);
}

}  // namespace
}  // namespace otoc
