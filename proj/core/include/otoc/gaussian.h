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

#ifndef OTOC_GAUSSIAN_H
#define OTOC_GAUSSIAN_H

#include <vector>

#include "otoc/circuit.h"
#include "otoc/grid.h"
#include "otoc/majorana.h"

namespace otoc {

/// Product of the single-particle matrices of a matchgate-only circuit.
/// Throws if the circuit contains interaction gates.
Matrix circuit_transition(const Circuit &c);

/// Rows `alpha` of u, i.e. the amplitudes of the evolved configuration C_alpha.
Matrix select_rows(const Matrix &u, const ModeTuple &alpha);

/// C^2 for A = C_eta (probe) and B(t) = U C_alpha U^dag, given phi = rows
/// alpha of the (possibly ancilla-extended) transition matrix:
///   C^2 = (1 + (-1)^{|alpha||eta|+1} det(I - 2 W^T W)) / 2,  W = phi[:, eta].
/// Clamped to [0, 1].
double gaussian_otoc_sq(const Matrix &phi, const ModeTuple &eta);

double gaussian_otoc(const Matrix &u, const ModeTuple &alpha, const ModeTuple &eta);

/// C(A, B(t)) for single-site Paulis on a matchgate-only circuit.
double gaussian_otoc(const Circuit &c, const PauliObservable &a, const PauliObservable &b);

enum class Edge { Left, Right };

/// Squared weight of the terms of B(t) whose Pauli string ends at qubit s
/// on the given side, evaluated as the sum of two bordered determinants.
/// phi holds rows alpha; its first 2n columns are system modes and any
/// further columns (ancillas) are summed over freely.
double boundary_weight_sq(const Matrix &phi, int n, int s, Edge side);

/// Same quantity through the Gram matrix of the system columns; all sites at once.
struct BoundaryWeights {
    std::vector<double> right;  // b_s, index s-1
    std::vector<double> left;
};
BoundaryWeights boundary_weights(const Matrix &phi, int n);

/// Grid of C(Z_s, B(t)) after every step, plus optionally b_s(t).
/// Interaction gates, if present, are ignored only when `drop_gates` is set.
struct GaussianLightcone {
    LightconeGrid otoc;
    LightconeGrid boundary;  // max of left/right weight where each applies
};
GaussianLightcone gaussian_lightcone(const Circuit &c, const PauliObservable &b, bool drop_gates = false);

}  // namespace otoc

#endif
