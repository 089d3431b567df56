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

#include "otoc/circuit.h"

#include <charconv>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace otoc {

DisorderRealization draw_disorder(int n, double strength, std::uint64_t seed, std::uint64_t realization) {
    if (n < 1) {
        throw std::invalid_argument("n must be positive");
    }
    if (!(strength >= 0.0)) {
        throw std::invalid_argument("disorder strength must be >= 0");
    }
    DisorderRealization d;
    d.strength = strength;
    d.seed = seed;
    d.realization = realization;
    d.nu_values.resize(n);
    std::seed_seq seq{
        static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
        static_cast<std::uint32_t>(realization), static_cast<std::uint32_t>(realization >> 32),
    };
    std::mt19937_64 gen(seq);
    for (int j = 0; j < n; j++) {
        // 53 uniform bits; avoids the implementation-defined distribution classes.
        double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        d.nu_values[j] = strength * (2.0 * u - 1.0);
    }
    return d;
}

Matrix xy_generator(const std::vector<double> &nu) {
    const int n = static_cast<int>(nu.size());
    Matrix g = Matrix::Zero(2 * n, 2 * n);
    // A term -i*coef*c_a*c_b (a < b) of H contributes G_ab = -2 coef.
    auto add = [&](int a, int b, double coef) {
        g(a - 1, b - 1) += -2.0 * coef;
        g(b - 1, a - 1) += 2.0 * coef;
    };
    for (int j = 1; j < n; j++) {
        add(2 * j, 2 * j + 1, 1.0);
        add(2 * j - 1, 2 * j + 2, -1.0);
    }
    for (int j = 1; j <= n; j++) {
        add(2 * j - 1, 2 * j, nu[j - 1]);
    }
    return g;
}

Matrix gaussian_layer_matrix(const Matrix &generator, double dt) {
    Matrix scaled = -dt * generator;
    return scaled.exp();
}

int Circuit::gate_count() const {
    int g = 0;
    for (const auto &s : steps) {
        g += static_cast<int>(s.gates.size());
    }
    return g;
}

double Circuit::time_after(size_t k) const {
    double t = 0.0;
    for (size_t i = 0; i < k && i < steps.size(); i++) {
        t += steps[i].dt;
    }
    return t;
}

Circuit Circuit::prefix(size_t k) const {
    Circuit c;
    c.n = n;
    c.steps.assign(steps.begin(), steps.begin() + std::min(k, steps.size()));
    return c;
}

Circuit Circuit::without_gates() const {
    Circuit c = *this;
    for (auto &s : c.steps) {
        s.gates.clear();
    }
    return c;
}

void validate(const Circuit &c) {
    if (c.n < 1) {
        throw std::invalid_argument("circuit: n must be positive");
    }
    for (size_t k = 0; k < c.steps.size(); k++) {
        const auto &s = c.steps[k];
        if (s.generator.size() != 0) {
            if (s.generator.rows() != 2 * c.n || s.generator.cols() != 2 * c.n) {
                throw std::invalid_argument("circuit: step " + std::to_string(k) + " generator is not 2n x 2n");
            }
            if ((s.generator + s.generator.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
                throw std::invalid_argument("circuit: step " + std::to_string(k) + " generator is not antisymmetric");
            }
        }
        for (int j : s.gates) {
            if (j < 1 || j >= c.n) {
                throw std::invalid_argument("circuit: step " + std::to_string(k) + " gate on qubit " +
                                            std::to_string(j) + " needs 1 <= j < n");
            }
        }
    }
}

Step make_step(const Matrix &generator, double dt, std::vector<int> gates) {
    Step s;
    s.generator = generator;
    s.dt = dt;
    if (generator.size() != 0) {
        s.transition = gaussian_layer_matrix(generator, dt);
    }
    s.gates = std::move(gates);
    return s;
}

Circuit build_alternating_circuit(int n, const DisorderRealization &disorder, double dt, int periods,
                                  bool interactions) {
    if (static_cast<int>(disorder.nu_values.size()) != n) {
        throw std::invalid_argument("disorder realization has the wrong length");
    }
    if (periods < 0) {
        throw std::invalid_argument("periods must be >= 0");
    }
    Circuit c;
    c.n = n;
    const Matrix g = xy_generator(disorder.nu_values);
    const Matrix u = gaussian_layer_matrix(g, dt);
    for (int k = 0; k < 2 * periods; k++) {
        Step s;
        s.generator = g;
        s.dt = dt;
        s.transition = u;
        if (interactions) {
            for (int j = (k % 2 == 0) ? 1 : 2; j < n; j += 2) {
                s.gates.push_back(j);
            }
        }
        c.steps.push_back(std::move(s));
    }
    return c;
}

std::pair<Circuit, DisorderRealization> build_alternating_circuit(int n, double strength, double dt, int periods,
                                                                  std::uint64_t seed) {
    auto d = draw_disorder(n, strength, seed);
    auto c = build_alternating_circuit(n, d, dt, periods, true);
    return {std::move(c), std::move(d)};
}

std::vector<GatePlacement> parse_gate_list(std::string_view text) {
    std::vector<GatePlacement> out;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t end = text.find(',', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string item(text.substr(pos, end - pos));
        pos = end + 1;
        if (item.empty()) {
            continue;
        }
        size_t at = item.find('@');
        if (at == std::string::npos) {
            throw std::invalid_argument("gates: expected qubit@time, got '" + item + "'");
        }
        GatePlacement g;
        try {
            size_t used = 0;
            g.qubit = std::stoi(item.substr(0, at), &used);
            if (used != at) {
                throw std::invalid_argument(item);
            }
            g.time = std::stod(item.substr(at + 1), &used);
            if (used != item.size() - at - 1) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception &) {
            throw std::invalid_argument("gates: cannot parse '" + item + "'");
        }
        out.push_back(g);
    }
    return out;
}

Circuit build_gate_schedule(int n, const DisorderRealization &disorder, double dt, int steps,
                            const std::vector<GatePlacement> &gates, std::vector<double> *snapped) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("dt must be positive");
    }
    Circuit c;
    c.n = n;
    const Matrix g = xy_generator(disorder.nu_values);
    const Matrix u = gaussian_layer_matrix(g, dt);
    for (int k = 0; k < steps; k++) {
        Step s;
        s.generator = g;
        s.dt = dt;
        s.transition = u;
        c.steps.push_back(std::move(s));
    }
    if (snapped) {
        snapped->clear();
    }
    for (const auto &p : gates) {
        if (p.qubit < 1 || p.qubit >= n) {
            throw std::invalid_argument("gates: qubit " + std::to_string(p.qubit) + " needs 1 <= qubit < n");
        }
        long k = std::lround(p.time / dt);
        if (k < 1 || k > steps) {
            throw std::invalid_argument("gates: time " + std::to_string(p.time) + " lies outside the circuit");
        }
        c.steps[k - 1].gates.push_back(p.qubit);
        if (snapped) {
            snapped->push_back(std::abs(static_cast<double>(k) * dt - p.time));
        }
    }
    return c;
}

Matrix fswap_matrix(int j, int k, int n) {
    if (j < 1 || j > n || k < 1 || k > n) {
        throw std::out_of_range("fswap: qubit outside 1.." + std::to_string(n));
    }
    Matrix m = Matrix::Identity(2 * n, 2 * n);
    for (int d = 0; d < 2; d++) {
        const int a = 2 * j - 2 + d;
        const int b = 2 * k - 2 + d;
        m(a, a) = m(b, b) = 0.0;
        m(a, b) = m(b, a) = 1.0;
    }
    if (j == k) {
        m = Matrix::Identity(2 * n, 2 * n);
    }
    return m;
}

Matrix reflection_mode_map(int n) {
    Matrix m = Matrix::Zero(2 * n, 2 * n);
    for (int j = 1; j <= n; j++) {
        int jr = n + 1 - j;
        m(2 * j - 2, 2 * jr - 1) = 1.0;
        m(2 * j - 1, 2 * jr - 2) = -1.0;
    }
    return m;
}

Circuit reflect(const Circuit &c) {
    const Matrix m = reflection_mode_map(c.n);
    Circuit r;
    r.n = c.n;
    for (const auto &s : c.steps) {
        Step t;
        t.dt = s.dt;
        if (s.generator.size() != 0) {
            t.generator = m.transpose() * s.generator * m;
            t.transition = m.transpose() * s.transition * m;
        }
        for (int j : s.gates) {
            t.gates.push_back(c.n - j);
        }
        r.steps.push_back(std::move(t));
    }
    return r;
}

}  // namespace otoc
