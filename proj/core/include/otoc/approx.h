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

#ifndef OTOC_APPROX_H
#define OTOC_APPROX_H

#include <vector>

#include "otoc/circuit.h"
#include "otoc/gaussian.h"
#include "otoc/grid.h"
#include "otoc/majorana.h"

namespace otoc {

/// How gates at the left edge of the lightcone are treated.
///   Mirrored:   only right-edge replacements; sites left of the center come
///               from a second run on the reflected circuit.
///   SinglePass: one run replacing gates at both edges.
enum class EdgeScheme { Mirrored, SinglePass };

struct ApproxOptions {
    double epsilon = 0.2;
    EdgeScheme scheme = EdgeScheme::Mirrored;
};

/// Amplitudes of the evolved operator B(t) (x) Z on every ancilla, restricted
/// to rows alpha_ext. Columns: 2n system modes, then two per ancilla qubit.
/// Ancillas are traced against the identity when the OTOC is read out, so the
/// probe configuration never touches them.
struct ApproxState {
    int n = 0;
    int center = 1;
    Matrix phi;
    std::vector<Edge> sides;  // one entry per ancilla qubit

    int ancillas() const { return static_cast<int>(sides.size()); }
};

ApproxState initial_approx_state(int n, const PauliObservable &b);

/// Replaces the gate on (j, j+1) by a Z rotation of the edge qubit and a
/// fermionic swap of its outer neighbor with a fresh ancilla in the Z state.
/// Right edge: qubit j rotates, j+1 swaps. Left edge: j+1 rotates, j swaps.
void conditional_replace(ApproxState &state, int j, Edge side);

/// One circuit step: the Gaussian layer, then each gate either replaced (if it
/// sits on an edge with b_s >= epsilon) or dropped. Returns the number of
/// replacements. `allow_left` enables left-edge replacements.
int approx_step(ApproxState &state, const Step &step, double epsilon, bool allow_left);

/// C(Z_s, B(t)) from the current state.
std::vector<double> approx_row(const ApproxState &state);

struct ApproxResult {
    LightconeGrid grid;
    int replacements = 0;
};

ApproxResult approx_lightcone(const Circuit &c, const PauliObservable &b, const ApproxOptions &options = {});

}  // namespace otoc

#endif
