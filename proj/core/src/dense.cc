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

#include "otoc/dense.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace otoc::dense {

namespace {

void check_size(int n) {
    if (n < 1 || n > kMaxQubits) {
        throw std::invalid_argument("dense oracle supports 1 <= n <= " + std::to_string(kMaxQubits) + ", got " +
                                    std::to_string(n));
    }
}

// Bit of qubit j (1-based) in a basis index; qubit 1 is the top bit.
inline int bit(std::size_t index, int n, int j) { return static_cast<int>((index >> (n - j)) & 1u); }

// A Pauli string as a monomial matrix: column `col` maps to row col ^ flip
// with amplitude phase[col].
struct Monomial {
    std::size_t flip = 0;
    Eigen::VectorXcd phase;
};

Monomial monomial(int n, const std::string &letters) {
    const std::size_t d = std::size_t{1} << n;
    Monomial m;
    m.phase.resize(static_cast<Eigen::Index>(d));
    for (int j = 1; j <= n; j++) {
        char l = letters[j - 1];
        if (l == 'X' || l == 'Y') {
            m.flip |= std::size_t{1} << (n - j);
        }
    }
    for (std::size_t col = 0; col < d; col++) {
        Complex amp = 1.0;
        for (int j = 1; j <= n; j++) {
            int b = bit(col, n, j);
            switch (letters[j - 1]) {
                case 'Y':
                    amp *= b ? Complex(0, -1) : Complex(0, 1);
                    break;
                case 'Z':
                    if (b) {
                        amp = -amp;
                    }
                    break;
                default:
                    break;
            }
        }
        m.phase(static_cast<Eigen::Index>(col)) = amp;
    }
    return m;
}

// a * b
Monomial multiply(const Monomial &a, const Monomial &b) {
    Monomial m;
    m.flip = a.flip ^ b.flip;
    m.phase.resize(b.phase.size());
    for (Eigen::Index col = 0; col < b.phase.size(); col++) {
        m.phase(col) = b.phase(col) * a.phase(static_cast<Eigen::Index>(static_cast<std::size_t>(col) ^ b.flip));
    }
    return m;
}

void accumulate(CMatrix &out, const Monomial &m, Complex scale) {
    for (Eigen::Index col = 0; col < m.phase.size(); col++) {
        out(static_cast<Eigen::Index>(static_cast<std::size_t>(col) ^ m.flip), col) += scale * m.phase(col);
    }
}

CMatrix to_dense(const Monomial &m) {
    const auto d = m.phase.size();
    CMatrix out = CMatrix::Zero(d, d);
    accumulate(out, m, 1.0);
    return out;
}

Monomial majorana_monomial(int n, int mode) {
    const int j = (mode + 1) / 2;
    std::string letters(n, 'I');
    for (int k = 1; k < j; k++) {
        letters[k - 1] = 'Z';
    }
    letters[j - 1] = (mode % 2 == 1) ? 'X' : 'Y';
    return monomial(n, letters);
}

}  // namespace

CMatrix pauli(int n, const PauliObservable &p) {
    check_size(n);
    if (p.site < 1 || p.site > n) {
        throw std::out_of_range("pauli site out of range");
    }
    std::string letters(n, 'I');
    letters[p.site - 1] = static_cast<char>(p.op);
    return to_dense(monomial(n, letters));
}

CMatrix majorana(int n, int mode) {
    check_size(n);
    if (mode < 1 || mode > 2 * n) {
        throw std::out_of_range("majorana mode out of range");
    }
    return to_dense(majorana_monomial(n, mode));
}

CMatrix configuration(int n, const ModeTuple &modes) {
    check_size(n);
    Monomial m = monomial(n, std::string(n, 'I'));
    for (int mode : modes) {
        if (mode < 1 || mode > 2 * n) {
            throw std::out_of_range("majorana mode out of range");
        }
        m = multiply(m, majorana_monomial(n, mode));
    }
    return to_dense(m);
}

CMatrix quadratic_hamiltonian(int n, const Matrix &generator) {
    check_size(n);
    const auto d = static_cast<Eigen::Index>(std::size_t{1} << n);
    CMatrix h = CMatrix::Zero(d, d);
    std::vector<Monomial> c;
    for (int m = 1; m <= 2 * n; m++) {
        c.push_back(majorana_monomial(n, m));
    }
    for (int a = 0; a < 2 * n; a++) {
        for (int b = a + 1; b < 2 * n; b++) {
            double g = generator(a, b);
            if (g != 0.0) {
                // G_ab c_a c_b + G_ba c_b c_a = 2 G_ab c_a c_b for a != b.
                accumulate(h, multiply(c[a], c[b]), Complex(0.0, 0.5 * g));
            }
        }
    }
    return h;
}

Eigen::VectorXcd interaction_diagonal(int n, int j) {
    check_size(n);
    if (j < 1 || j >= n) {
        throw std::out_of_range("interaction gate needs 1 <= j < n");
    }
    const std::size_t d = std::size_t{1} << n;
    Eigen::VectorXcd v(static_cast<Eigen::Index>(d));
    const Complex plus = std::polar(1.0, -M_PI / 4.0);
    const Complex minus = std::polar(1.0, M_PI / 4.0);
    for (std::size_t i = 0; i < d; i++) {
        bool same = bit(i, n, j) == bit(i, n, j + 1);
        v(static_cast<Eigen::Index>(i)) = same ? plus : minus;
    }
    return v;
}

namespace {

CMatrix gaussian_unitary(int n, const Matrix &generator, double dt) {
    const auto d = static_cast<Eigen::Index>(std::size_t{1} << n);
    if (generator.size() == 0) {
        return CMatrix::Identity(d, d);
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(quadratic_hamiltonian(n, generator));
    Eigen::VectorXcd phase(d);
    for (Eigen::Index i = 0; i < d; i++) {
        phase(i) = std::polar(1.0, -eig.eigenvalues()(i) * dt);
    }
    return eig.eigenvectors() * phase.asDiagonal() * eig.eigenvectors().adjoint();
}

// Alternating circuits repeat one Gaussian layer; diagonalize it once.
class StepCache {
  public:
    explicit StepCache(int n) : n_(n) {}

    CMatrix unitary(const Step &s) {
        if (!valid_ || s.dt != dt_ || s.generator.rows() != generator_.rows() ||
            s.generator.cols() != generator_.cols() || s.generator != generator_) {
            generator_ = s.generator;
            dt_ = s.dt;
            gaussian_ = gaussian_unitary(n_, generator_, dt_);
            valid_ = true;
        }
        CMatrix u = gaussian_;
        for (int j : s.gates) {
            u = interaction_diagonal(n_, j).asDiagonal() * u;
        }
        return u;
    }

  private:
    int n_;
    bool valid_ = false;
    Matrix generator_;
    double dt_ = 0.0;
    CMatrix gaussian_;
};

}  // namespace

CMatrix step_unitary(int n, const Step &s) {
    check_size(n);
    StepCache cache(n);
    return cache.unitary(s);
}

CMatrix circuit_unitary(const Circuit &c) {
    validate(c);
    check_size(c.n);
    const auto d = static_cast<Eigen::Index>(std::size_t{1} << c.n);
    CMatrix u = CMatrix::Identity(d, d);
    StepCache cache(c.n);
    for (const auto &s : c.steps) {
        u = cache.unitary(s) * u;
    }
    return u;
}

CMatrix evolve(const CMatrix &u, const CMatrix &b) { return u * b * u.adjoint(); }

double otoc(const CMatrix &a, const CMatrix &bt) {
    const double d = static_cast<double>(a.rows());
    CMatrix ab = a * bt;
    // tr(ABAB) = sum_ij (AB)_ij (AB)_ji
    Complex tr = (ab.array() * ab.transpose().array()).sum();
    double c2 = 0.5 * (1.0 - tr.real() / d);
    return std::sqrt(std::clamp(c2, 0.0, 1.0));
}

double otoc_commutator(const CMatrix &a, const CMatrix &bt) {
    const double d = static_cast<double>(a.rows());
    CMatrix comm = a * bt - bt * a;
    return std::sqrt(comm.squaredNorm() / (4.0 * d));
}

double otoc(const Circuit &c, const PauliObservable &a, const PauliObservable &b) {
    CMatrix u = circuit_unitary(c);
    return otoc(pauli(c.n, a), evolve(u, pauli(c.n, b)));
}

Matrix transition_from_unitary(int n, const CMatrix &l) {
    check_size(n);
    const double d = static_cast<double>(std::size_t{1} << n);
    std::vector<CMatrix> c;
    for (int m = 1; m <= 2 * n; m++) {
        c.push_back(to_dense(majorana_monomial(n, m)));
    }
    Matrix u(2 * n, 2 * n);
    for (int mu = 0; mu < 2 * n; mu++) {
        CMatrix o = l * c[mu] * l.adjoint();
        for (int nu = 0; nu < 2 * n; nu++) {
            // tr(c_nu^dag O) as an elementwise sum.
            Complex x = (c[nu].conjugate().array() * o.array()).sum() / d;
            u(mu, nu) = x.real();
        }
    }
    return u;
}

LightconeGrid lightcone(const Circuit &c, const PauliObservable &b) {
    validate(c);
    check_size(c.n);
    const int n = c.n;
    LightconeGrid g;
    g.values = Matrix::Zero(static_cast<Eigen::Index>(c.steps.size() + 1), n);
    std::vector<CMatrix> probes;
    for (int s = 1; s <= n; s++) {
        probes.push_back(pauli(n, {PauliOp::Z, s}));
    }
    CMatrix bt = pauli(n, b);
    StepCache cache(n);
    for (size_t k = 0; k <= c.steps.size(); k++) {
        if (k > 0) {
            bt = evolve(cache.unitary(c.steps[k - 1]), bt);
        }
        g.times.push_back(c.time_after(k));
        for (int s = 1; s <= n; s++) {
            g.values(static_cast<Eigen::Index>(k), s - 1) = otoc(probes[s - 1], bt);
        }
    }
    g.meta.engine = "oracle";
    g.meta.n = n;
    g.meta.observable = b.str();
    return g;
}

}  // namespace otoc::dense
