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

#ifndef OTOC_MAJORANA_H
#define OTOC_MAJORANA_H

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace otoc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Strictly increasing list of 1-based Majorana mode indices.
using ModeTuple = std::vector<int>;

enum class PauliOp : char { X = 'X', Y = 'Y', Z = 'Z' };

/// Single-site Pauli operator. Sites are 1-based.
struct PauliObservable {
    PauliOp op = PauliOp::X;
    int site = 1;

    std::string str() const;
    bool operator==(const PauliObservable &) const = default;
};

/// Parses strings such as "X15" or "z3".
PauliObservable parse_pauli(std::string_view text);

/// P = i^phase * C_modes, with C_modes the ordered Majorana product.
struct Configuration {
    ModeTuple modes;
    int phase = 0;  // mod 4
};

/// Jordan-Wigner image of a single-site Pauli on n qubits:
///   c_{2j-1} = Z^{<j} X_j,  c_{2j} = Z^{<j} Y_j.
Configuration to_configuration(const PauliObservable &p, int n);

/// Product a * b as a single ordered configuration.
Configuration multiply(const Configuration &a, const Configuration &b);

/// Pauli string (one letter I/X/Y/Z per qubit, qubit 1 first) as i^phase C_modes.
Configuration jordan_wigner_encode(std::string_view letters);

/// True iff modes are strictly increasing and lie in [1, num_modes].
bool is_valid_tuple(const ModeTuple &modes, int num_modes);

/// Determinant of a square matrix; the empty matrix has determinant 1.
double det(const Eigen::Ref<const Matrix> &m);

/// det(u[rows, cols]) for 1-based tuples of equal length.
double minor_det(const Matrix &u, const ModeTuple &rows, const ModeTuple &cols);

/// Sorted union of two disjoint tuples.
ModeTuple tuple_union(const ModeTuple &a, const ModeTuple &b);

/// All k-element sub-tuples of `pool`, in lexicographic order.
std::vector<ModeTuple> combinations(const ModeTuple &pool, int k);

/// Operands of the modified Cauchy-Binet identity. The summed mode set is
/// B = (b_left, b_right); s and s_prime are pinned subsets of the block that
/// separates b_left from b_right.
struct CauchyBinetTerms {
    Matrix u1;
    Matrix u2;
    ModeTuple alpha;
    ModeTuple gamma;
    ModeTuple s;
    ModeTuple s_prime;
    ModeTuple b_left;
    ModeTuple b_right;
};

/// Exhaustive sum over beta in B of det(u1[alpha, beta+S']) det(u2[beta+S, gamma]).
double cauchy_binet_subset_sum(const CauchyBinetTerms &t);

/// Single bordered determinant equal to cauchy_binet_subset_sum.
double cauchy_binet_block_det(const CauchyBinetTerms &t);

}  // namespace otoc

#endif
