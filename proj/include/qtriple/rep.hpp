/*
   Copyright 2026 The qtriple Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef QTRIPLE_REP_HPP
#define QTRIPLE_REP_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ncpoly.hpp"

namespace qtriple {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Window of l2(N0) (x) l2(Z): Fock indices 0..fock_dim-1, Z indices
/// -z_band..z_band, and an interior margin.
struct TruncationSpec {
    int fock_dim = 16;
    int z_band = 8;
    int margin = 2;

    TruncationSpec() = default;
    TruncationSpec(int fock, int zband, int mu) : fock_dim(fock), z_band(zband), margin(mu) { validate(); }

    void validate() const {
        if (fock_dim < 4 || z_band < 2 || margin < 0 || margin >= std::min(fock_dim, z_band))
            throw std::invalid_argument("truncation needs fock >= 4, zband >= 2, 0 <= margin < min(fock, zband); got fock=" +
                                        std::to_string(fock_dim) + " zband=" + std::to_string(z_band) +
                                        " margin=" + std::to_string(margin));
    }

    int z_count() const noexcept { return 2 * z_band + 1; }
    int dim() const noexcept { return fock_dim * z_count(); }
    /// Row-major (fock, z) index.
    int index(int fock, int z) const noexcept { return fock * z_count() + (z + z_band); }

    TruncationSpec with_margin(int mu) const { return TruncationSpec(fock_dim, z_band, mu); }
};

// Each generator maps a basis vector to at most one basis vector, so letters
// are applied as weighted row shifts instead of dense products.
namespace detail {

/// Applies one letter on the left: returns rho(letter) * m.
inline Matrix apply_letter(Letter l, const Matrix& m, const TruncationSpec& t, double q) {
    Matrix out = Matrix::Zero(m.rows(), m.cols());
    const int nz = t.z_band;
    for (int k = 0; k < t.fock_dim; ++k) {
        for (int z = -nz; z <= nz; ++z) {
            const int src = t.index(k, z);
            switch (l) {
            case Letter::Alpha:  // e_k -> sqrt(1 - q^2k) e_{k-1}
                if (k >= 1)
                    out.row(t.index(k - 1, z)) += std::sqrt(1.0 - std::pow(q, 2 * k)) * m.row(src);
                break;
            case Letter::AlphaStar:  // e_k -> sqrt(1 - q^{2(k+1)}) e_{k+1}, dropped at the edge
                if (k + 1 < t.fock_dim)
                    out.row(t.index(k + 1, z)) += std::sqrt(1.0 - std::pow(q, 2 * (k + 1))) * m.row(src);
                break;
            case Letter::Beta:  // e_k (x) e_z -> q^k e_k (x) e_{z+1}
                if (z < nz)
                    out.row(t.index(k, z + 1)) += std::pow(q, k) * m.row(src);
                break;
            case Letter::BetaStar:
                if (z > -nz)
                    out.row(t.index(k, z - 1)) += std::pow(q, k) * m.row(src);
                break;
            }
        }
    }
    return out;
}

} // namespace detail

/// Truncated images of a and b.
struct Generators {
    Matrix alpha;
    Matrix beta;
};

inline Generators build_generators(const TruncationSpec& t, const QParam& q) {
    const Matrix id = Matrix::Identity(t.dim(), t.dim());
    return {detail::apply_letter(Letter::Alpha, id, t, q.value()),
            detail::apply_letter(Letter::Beta, id, t, q.value())};
}

/// Image of a free word: the ordered product of truncated generator matrices.
inline Matrix represent(const Word& w, const TruncationSpec& t, const QParam& q) {
    Matrix m = Matrix::Identity(t.dim(), t.dim());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        m = detail::apply_letter(*it, m, t, q.value());
    return m * w.coefficient;
}

inline Matrix represent(const std::vector<Word>& words, const TruncationSpec& t, const QParam& q) {
    Matrix m = Matrix::Zero(t.dim(), t.dim());
    for (const auto& w : words)
        m += represent(w, t, q);
    return m;
}

inline Matrix represent(const Polynomial& x, const TruncationSpec& t) {
    Matrix m = Matrix::Zero(t.dim(), t.dim());
    for (const auto& [mono, c] : x.terms()) {
        Word w = mono.word();
        w.coefficient = c;
        m += represent(w, t, x.q());
    }
    return m;
}

/// Applies rho(x) to a single vector; cheaper than building the matrix.
inline Vector apply(const Polynomial& x, const Vector& v, const TruncationSpec& t) {
    Vector out = Vector::Zero(v.size());
    for (const auto& [mono, c] : x.terms()) {
        Matrix cur = v;
        const Word w = mono.word();
        for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
            cur = detail::apply_letter(*it, cur, t, x.q().value());
        out += c * cur.col(0);
    }
    return out;
}

/// Orthogonal projector onto fock <= fock_dim-1-margin and |z| <= z_band-margin.
inline Matrix interior_projector(const TruncationSpec& t) {
    Matrix p = Matrix::Zero(t.dim(), t.dim());
    for (int k = 0; k <= t.fock_dim - 1 - t.margin; ++k)
        for (int z = -(t.z_band - t.margin); z <= t.z_band - t.margin; ++z)
            p(t.index(k, z), t.index(k, z)) = 1.0;
    return p;
}

/// P a P for the interior projector P, by masking rows and columns.
inline Matrix compress_interior(const Matrix& a, const TruncationSpec& t) {
    const Eigen::VectorXd mask = interior_projector(t).diagonal().real();
    return mask.asDiagonal() * a * mask.asDiagonal();
}

/// Largest singular value by power iteration on A^* A (200 iterations max,
/// relative convergence 1e-12). Deterministic start vector.
inline double operator_norm(const Matrix& a, int max_iter = 200, double tol = 1e-12) {
    if (a.size() == 0)
        return 0.0;
    const double scale = a.cwiseAbs().maxCoeff();
    if (scale == 0.0)
        return 0.0;
    const Matrix b = a / scale;
    std::mt19937_64 rng(0x5eed);
    std::normal_distribution<double> gauss;
    Vector v(b.cols());
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v(i) = Complex{gauss(rng), gauss(rng)};
    v.normalize();
    double sigma2 = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        Vector w = b.adjoint() * (b * v);
        const double next = w.norm();
        if (next == 0.0)
            return 0.0;
        v = w / next;
        if (std::abs(next - sigma2) <= tol * next) {
            sigma2 = next;
            break;
        }
        sigma2 = next;
    }
    return scale * std::sqrt(sigma2);
}

struct RelationResidual {
    std::string name;
    std::vector<Word> relation;  // free polynomial that vanishes in the algebra
    int degree;
    double residual;
};

/// The five defining relations, as free words.
inline std::vector<RelationResidual> defining_relations(const QParam& q) {
    using L = Letter;
    const double qq = q.value();
    auto w = [](std::initializer_list<L> ls, Complex c) { return Word{std::vector<L>(ls), c}; };
    return {
        {"a'a + b'b - 1", {w({L::AlphaStar, L::Alpha}, 1.0), w({L::BetaStar, L::Beta}, 1.0), w({}, -1.0)}, 2, 0.0},
        {"a a' + q^2 b b' - 1", {w({L::Alpha, L::AlphaStar}, 1.0), w({L::Beta, L::BetaStar}, qq * qq), w({}, -1.0)}, 2, 0.0},
        {"a b - q b a", {w({L::Alpha, L::Beta}, 1.0), w({L::Beta, L::Alpha}, -qq)}, 2, 0.0},
        {"a b' - q b' a", {w({L::Alpha, L::BetaStar}, 1.0), w({L::BetaStar, L::Alpha}, -qq)}, 2, 0.0},
        {"b'b - b b'", {w({L::BetaStar, L::Beta}, 1.0), w({L::Beta, L::BetaStar}, -1.0)}, 2, 0.0},
    };
}

/// ||P r(a,b) P|| for each defining relation, P the interior projector with
/// margin shifted by the relation degree. With project = false the raw
/// truncated norm is reported, which exposes the cutoff edge.
inline std::vector<RelationResidual> relation_residuals(const TruncationSpec& t, const QParam& q, bool project = true) {
    auto rels = defining_relations(q);
    for (auto& r : rels) {
        Matrix m = represent(r.relation, t, q);
        if (project) {
            if (t.margin < 1)
                throw std::invalid_argument("relation residuals need margin >= 1");
            const Matrix p = interior_projector(t.with_margin(std::min(t.margin + r.degree, std::min(t.fock_dim, t.z_band) - 1)));
            m = p * m * p;
        }
        r.residual = operator_norm(m);
    }
    return rels;
}

} // namespace qtriple

#endif // QTRIPLE_REP_HPP
