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

#ifndef OTOC_DENSE_H
#define OTOC_DENSE_H

#include <complex>

#include "otoc/circuit.h"
#include "otoc/grid.h"
#include "otoc/majorana.h"

namespace otoc::dense {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// Refuses anything larger; 2^12 x 2^12 complex operators are ~256 MiB.
constexpr int kMaxQubits = 12;

/// Qubit 1 is the most significant tensor factor.
CMatrix pauli(int n, const PauliObservable &p);
CMatrix majorana(int n, int mode);
CMatrix configuration(int n, const ModeTuple &modes);

/// (i/4) sum_{ab} G_ab c_a c_b.
CMatrix quadratic_hamiltonian(int n, const Matrix &generator);

/// exp(-i pi/4 Z_j Z_{j+1}) is diagonal; returned as its diagonal.
Eigen::VectorXcd interaction_diagonal(int n, int j);

/// Unitary of one step: the Gaussian layer, then its interaction gates.
CMatrix step_unitary(int n, const Step &s);
CMatrix circuit_unitary(const Circuit &c);

/// U B U^dag.
CMatrix evolve(const CMatrix &u, const CMatrix &b);

/// ||[A, B]||_F / (2 sqrt(d)), computed as sqrt((1 - Re tr(ABAB)/d) / 2).
double otoc(const CMatrix &a, const CMatrix &bt);
/// Same quantity from the commutator norm; used to cross-check.
double otoc_commutator(const CMatrix &a, const CMatrix &bt);

double otoc(const Circuit &c, const PauliObservable &a, const PauliObservable &b);

/// Single-particle matrix of a Gaussian unitary: u_{mu nu} = tr(c_nu L c_mu L^dag) / d.
Matrix transition_from_unitary(int n, const CMatrix &l);

/// C(Z_s, B(t)) after every step.
LightconeGrid lightcone(const Circuit &c, const PauliObservable &b);

}  // namespace otoc::dense

#endif
