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

#ifndef OTOC_CIRCUIT_H
#define OTOC_CIRCUIT_H

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "otoc/majorana.h"

namespace otoc {

/// One draw of the local potentials, each nu_j uniform in [-strength, strength].
struct DisorderRealization {
    std::vector<double> nu_values;
    double strength = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t realization = 0;
};

/// Deterministic in (seed, realization): the same pair always yields the same
/// bits, independent of how many realizations were drawn before it.
DisorderRealization draw_disorder(int n, double strength, std::uint64_t seed, std::uint64_t realization = 0);

/// Real antisymmetric G with H = (i/4) sum_{ab} G_ab c_a c_b equal to
///   sum_j (X_j X_{j+1} + Y_j Y_{j+1}) + sum_j nu_j Z_j.
Matrix xy_generator(const std::vector<double> &nu);

/// Single-particle matrix u of L = exp(-i H dt), defined by
/// L c_mu L^dag = sum_nu u_{mu nu} c_nu. Equals exp(-G dt).
Matrix gaussian_layer_matrix(const Matrix &generator, double dt);

/// Quadratic evolution exp(-i H dt) followed by interaction gates
/// exp(-i pi/4 Z_j Z_{j+1}) for each j in `gates`.
struct Step {
    Matrix generator;   // 2n x 2n; empty means no Gaussian evolution
    double dt = 0.0;
    Matrix transition;  // cached exp(-generator * dt); empty when generator is empty
    std::vector<int> gates;
};

struct Circuit {
    int n = 0;
    std::vector<Step> steps;

    int gate_count() const;
    double time_after(size_t k) const;  // elapsed time after the first k steps
    Circuit prefix(size_t k) const;
    Circuit without_gates() const;
};

/// Throws std::invalid_argument naming the first defect.
void validate(const Circuit &c);

Step make_step(const Matrix &generator, double dt, std::vector<int> gates = {});

/// Gaussian layers of length dt, alternating with interaction layers on
/// (1,2),(3,4),... and (2,3),(4,5),... . One period is two steps.
Circuit build_alternating_circuit(int n, const DisorderRealization &disorder, double dt, int periods,
                                  bool interactions = true);

std::pair<Circuit, DisorderRealization> build_alternating_circuit(int n, double strength, double dt, int periods,
                                                                  std::uint64_t seed);

struct GatePlacement {
    int qubit = 1;  // gate acts on (qubit, qubit + 1)
    double time = 0.0;
};

/// Parses "17@4.71,17@9.42".
std::vector<GatePlacement> parse_gate_list(std::string_view text);

/// Steps of XY evolution with gates inserted after the step whose end time
/// is nearest to each placement. `snapped` (optional) receives, per
/// placement, the distance between requested and realized time.
Circuit build_gate_schedule(int n, const DisorderRealization &disorder, double dt, int steps,
                            const std::vector<GatePlacement> &gates, std::vector<double> *snapped = nullptr);

/// Orthogonal mode map of the site reflection j -> n+1-j acting on
/// quadratic operators: c_{2j-1} -> c_{2j'}, c_{2j} -> -c_{2j'-1}.
/// Fermionic swap of qubits j and k: c_{2j-1} <-> c_{2k-1}, c_{2j} <-> c_{2k}.
Matrix fswap_matrix(int j, int k, int n);

Matrix reflection_mode_map(int n);

/// Same circuit with sites reflected; gate j becomes n - j.
Circuit reflect(const Circuit &c);

}  // namespace otoc

#endif
