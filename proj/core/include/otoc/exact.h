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

#ifndef OTOC_EXACT_H
#define OTOC_EXACT_H

#include <vector>

#include "otoc/circuit.h"
#include "otoc/grid.h"
#include "otoc/majorana.h"

namespace otoc {

/// V^dag C_beta V for V = exp(-i pi/4 Z_j Z_{j+1}) and beta inside
/// q = (2j-1, 2j, 2j+1, 2j+2): even |beta| is left alone, odd |beta| maps to
/// q \ beta with phase (-i)(-1)^{sum beta}.
struct InteractionImage {
    int phase = 0;  // exponent of i, mod 4
    ModeTuple image;
};
InteractionImage interaction_image(const ModeTuple &beta, const ModeTuple &q);

/// The single-particle matrix of the whole circuit with every interaction
/// gate unfolded into four ancilla modes. Ancilla modes come first; the
/// last 2n modes are the system.
struct AssembledEvolution {
    int n = 0;
    Matrix u;
    std::vector<int> gates;  // qubit of each gate, in the order applied

    int ancilla_modes() const { return 4 * static_cast<int>(gates.size()); }
};

AssembledEvolution initial_evolution(int n);
void absorb_gaussian(AssembledEvolution &state, const Matrix &layer);
void extend_with_interaction(AssembledEvolution &state, int j);
void absorb_step(AssembledEvolution &state, const Step &step);
AssembledEvolution assemble(const Circuit &c);

/// [[0, u_anc^T], [u_anc, u_sys R u_sys^T]] with R = (-1)^{|eta|} (I - 2 P_eta),
/// where u_anc / u_sys are the ancilla / system columns of u. Symmetric and
/// orthogonal; size 4g + (4g + 2n).
Matrix build_kernel(const AssembledEvolution &state, const ModeTuple &eta);

struct ExactOptions {
    int max_gates = 6;
    int threads = 0;  // 0: default_threads()
};

struct ExactResult {
    double value = 0.0;       // C, clamped to [0, 1]
    double series = 0.0;      // signed sum, equal to 1 - 2 C^2
    long long terms = 0;      // square minors evaluated
};

/// C(A, B(t)) with B(t) = U B U^dag, for single-site Paulis.
/// Throws std::invalid_argument beyond options.max_gates.
ExactResult exact_otoc_detailed(const Circuit &c, const PauliObservable &a, const PauliObservable &b,
                                const ExactOptions &options = {});
double exact_otoc(const Circuit &c, const PauliObservable &a, const PauliObservable &b,
                  const ExactOptions &options = {});

/// Series value for arbitrary configurations: alpha evolved, eta probe.
ExactResult exact_series(const AssembledEvolution &state, const ModeTuple &alpha, const ModeTuple &eta,
                         const ExactOptions &options = {});

/// C(Z_s, B(t)) after every step.
LightconeGrid exact_lightcone(const Circuit &c, const PauliObservable &b, const ExactOptions &options = {});

}  // namespace otoc

#endif
