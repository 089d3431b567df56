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

#include "otoc/majorana.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>

namespace otoc {

std::string PauliObservable::str() const {
    return std::string(1, static_cast<char>(op)) + std::to_string(site);
}

PauliObservable parse_pauli(std::string_view text) {
    if (text.size() < 2) {
        throw std::invalid_argument("pauli: expected a letter and a site, got '" + std::string(text) + "'");
    }
    PauliObservable p;
    switch (std::toupper(static_cast<unsigned char>(text[0]))) {
        case 'X':
            p.op = PauliOp::X;
            break;
        case 'Y':
            p.op = PauliOp::Y;
            break;
        case 'Z':
            p.op = PauliOp::Z;
            break;
        default:
            throw std::invalid_argument("pauli: unknown letter in '" + std::string(text) + "'");
    }
    auto digits = text.substr(1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p.site);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || p.site < 1) {
        throw std::invalid_argument("pauli: bad site in '" + std::string(text) + "'");
    }
    return p;
}

Configuration to_configuration(const PauliObservable &p, int n) {
    if (p.site < 1 || p.site > n) {
        throw std::out_of_range("pauli site " + std::to_string(p.site) + " outside 1.." + std::to_string(n));
    }
    const int j = p.site;
    Configuration c;
    switch (p.op) {
        case PauliOp::Z:
            // c_{2j-1} c_{2j} = i Z_j.
            c.modes = {2 * j - 1, 2 * j};
            c.phase = 3;
            break;
        case PauliOp::X:
        case PauliOp::Y:
            // (c1 c2)...(c_{2j-3} c_{2j-2}) = i^{j-1} Z^{<j}, which cancels the string.
            for (int m = 1; m <= 2 * j - 2; m++) {
                c.modes.push_back(m);
            }
            c.modes.push_back(p.op == PauliOp::X ? 2 * j - 1 : 2 * j);
            c.phase = ((1 - j) % 4 + 4) % 4;
            break;
    }
    return c;
}

Configuration multiply(const Configuration &a, const Configuration &b) {
    // Move each mode of b left past the modes of a that sort after it.
    Configuration out;
    out.phase = (a.phase + b.phase) % 4;
    int swaps = 0;
    for (int m : b.modes) {
        swaps += static_cast<int>(std::count_if(a.modes.begin(), a.modes.end(), [m](int x) { return x > m; }));
    }
    size_t i = 0, k = 0;
    while (i < a.modes.size() || k < b.modes.size()) {
        if (k == b.modes.size() || (i < a.modes.size() && a.modes[i] < b.modes[k])) {
            out.modes.push_back(a.modes[i++]);
        } else if (i == a.modes.size() || b.modes[k] < a.modes[i]) {
            out.modes.push_back(b.modes[k++]);
        } else {
            // c_m c_m = 1; the pair is adjacent once the m of b has moved past
            // the larger modes of a.
            i++;
            k++;
        }
    }
    if (swaps % 2 != 0) {
        out.phase = (out.phase + 2) % 4;
    }
    return out;
}

Configuration jordan_wigner_encode(std::string_view letters) {
    const int n = static_cast<int>(letters.size());
    Configuration out;
    for (int j = 1; j <= n; j++) {
        PauliObservable p;
        p.site = j;
        switch (std::toupper(static_cast<unsigned char>(letters[j - 1]))) {
            case 'I':
                continue;
            case 'X':
                p.op = PauliOp::X;
                break;
            case 'Y':
                p.op = PauliOp::Y;
                break;
            case 'Z':
                p.op = PauliOp::Z;
                break;
            default:
                throw std::invalid_argument("pauli string: unexpected letter '" + std::string(1, letters[j - 1]) +
                                            "'");
        }
        out = multiply(out, to_configuration(p, n));
    }
    return out;
}

bool is_valid_tuple(const ModeTuple &modes, int num_modes) {
    for (size_t k = 0; k < modes.size(); k++) {
        if (modes[k] < 1 || modes[k] > num_modes) {
            return false;
        }
        if (k > 0 && modes[k] <= modes[k - 1]) {
            return false;
        }
    }
    return true;
}

double det(const Eigen::Ref<const Matrix> &m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("det of a non-square matrix");
    }
    if (m.rows() == 0) {
        return 1.0;
    }
    return m.partialPivLu().determinant();
}

double minor_det(const Matrix &u, const ModeTuple &rows, const ModeTuple &cols) {
    if (rows.size() != cols.size()) {
        throw std::invalid_argument("minor_det: row and column tuples differ in length");
    }
    const auto k = static_cast<Eigen::Index>(rows.size());
    Matrix sub(k, k);
    for (Eigen::Index r = 0; r < k; r++) {
        for (Eigen::Index c = 0; c < k; c++) {
            sub(r, c) = u(rows[r] - 1, cols[c] - 1);
        }
    }
    return det(sub);
}

ModeTuple tuple_union(const ModeTuple &a, const ModeTuple &b) {
    ModeTuple out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<ModeTuple> combinations(const ModeTuple &pool, int k) {
    std::vector<ModeTuple> out;
    const int m = static_cast<int>(pool.size());
    if (k < 0 || k > m) {
        return out;
    }
    std::vector<int> idx(k);
    for (int i = 0; i < k; i++) {
        idx[i] = i;
    }
    while (true) {
        ModeTuple t(k);
        for (int i = 0; i < k; i++) {
            t[i] = pool[idx[i]];
        }
        out.push_back(std::move(t));
        int i = k - 1;
        while (i >= 0 && idx[i] == m - k + i) {
            i--;
        }
        if (i < 0) {
            break;
        }
        idx[i]++;
        for (int r = i + 1; r < k; r++) {
            idx[r] = idx[r - 1] + 1;
        }
    }
    return out;
}

double cauchy_binet_subset_sum(const CauchyBinetTerms &t) {
    const ModeTuple b = tuple_union(t.b_left, t.b_right);
    const int k = static_cast<int>(t.alpha.size()) - static_cast<int>(t.s_prime.size());
    if (k < 0 || k + t.s.size() != t.gamma.size()) {
        return 0.0;
    }
    double sum = 0.0;
    for (const auto &beta : combinations(b, k)) {
        sum += minor_det(t.u1, t.alpha, tuple_union(beta, t.s_prime)) * minor_det(t.u2, tuple_union(beta, t.s), t.gamma);
    }
    return sum;
}

double cauchy_binet_block_det(const CauchyBinetTerms &t) {
    const ModeTuple b = tuple_union(t.b_left, t.b_right);
    const auto ns = static_cast<Eigen::Index>(t.s.size());
    const auto nsp = static_cast<Eigen::Index>(t.s_prime.size());
    const auto na = static_cast<Eigen::Index>(t.alpha.size());
    const auto ng = static_cast<Eigen::Index>(t.gamma.size());
    if (ns + na != nsp + ng) {
        return 0.0;
    }
    Matrix u2t = t.u2;
    if ((ns + nsp) % 2 == 1) {
        for (int m : t.b_left) {
            u2t.row(m - 1) *= -1.0;
        }
    }
    Matrix block = Matrix::Zero(ns + na, nsp + ng);
    for (Eigen::Index r = 0; r < ns; r++) {
        for (Eigen::Index c = 0; c < ng; c++) {
            block(r, nsp + c) = t.u2(t.s[r] - 1, t.gamma[c] - 1);
        }
    }
    for (Eigen::Index r = 0; r < na; r++) {
        for (Eigen::Index c = 0; c < nsp; c++) {
            block(ns + r, c) = t.u1(t.alpha[r] - 1, t.s_prime[c] - 1);
        }
        for (Eigen::Index c = 0; c < ng; c++) {
            double acc = 0.0;
            for (int m : b) {
                acc += t.u1(t.alpha[r] - 1, m - 1) * u2t(m - 1, t.gamma[c] - 1);
            }
            block(ns + r, nsp + c) = acc;
        }
    }
    const double sign = (ns * nsp) % 2 == 0 ? 1.0 : -1.0;
    return sign * det(block);
}

}  // namespace otoc
