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

#ifndef QTRIPLE_GNS_HPP
#define QTRIPLE_GNS_HPP

#include <cmath>
#include <compare>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ncpoly.hpp"
#include "rep.hpp"

namespace qtriple {

/// Half-integer stored as twice its value.
struct HalfInt {
    int twice = 0;

    static constexpr HalfInt from_twice(int t) noexcept { return HalfInt{t}; }
    double value() const noexcept { return twice / 2.0; }
    bool is_integer() const noexcept { return twice % 2 == 0; }

    friend auto operator<=>(const HalfInt&, const HalfInt&) = default;
};

inline std::string to_string(HalfInt h) {
    return h.is_integer() ? std::to_string(h.twice / 2) : std::to_string(h.twice) + "/2";
}

/// Basis label (l, j, k) of e^(l)_jk.
struct Label {
    HalfInt l, j, k;

    bool valid() const noexcept {
        return l.twice >= 0 && std::abs(j.twice) <= l.twice && std::abs(k.twice) <= l.twice &&
               (l.twice - j.twice) % 2 == 0 && (l.twice - k.twice) % 2 == 0;
    }

    friend auto operator<=>(const Label&, const Label&) = default;
};

inline std::string to_string(const Label& x) {
    return "(" + to_string(x.l) + "," + to_string(x.j) + "," + to_string(x.k) + ")";
}

/// All labels with l <= lmax, ordered by (l, j, k).
inline std::vector<Label> labels_up_to(HalfInt lmax) {
    std::vector<Label> out;
    for (int l2 = 0; l2 <= lmax.twice; ++l2)
        for (int j2 = -l2; j2 <= l2; j2 += 2)
            for (int k2 = -l2; k2 <= l2; k2 += 2)
                out.push_back({{l2}, {j2}, {k2}});
    return out;
}

/// Haar state from its closed form: h(a^s b^n b*^m) vanishes unless s = 0 and
/// n = m, and h((b b*)^n) = (1 - q^2) / (1 - q^{2(n+1)}). Normalized so h(1) = 1.
inline Complex haar_exact(const Polynomial& x) {
    const double q2 = x.q().value() * x.q().value();
    Complex sum{};
    for (const auto& [m, c] : x.terms()) {
        if (m.alpha_exp != 0 || m.beta_exp != m.beta_star_exp)
            continue;
        if (x.q().is_classical())
            sum += c / static_cast<double>(m.beta_exp + 1);
        else
            sum += c * (1.0 - q2) / (1.0 - std::pow(q2, m.beta_exp + 1));
    }
    return sum;
}

/// (1 - q^2) sum_{n < fock_dim} q^{2n} <e_n (x) e_0, rho(x) e_n (x) e_0>.
inline Complex haar_numeric(const Polynomial& x, const TruncationSpec& t) {
    const double q2 = x.q().value() * x.q().value();
    Complex sum{};
    for (int n = 0; n < t.fock_dim; ++n) {
        Vector e = Vector::Zero(t.dim());
        e(t.index(n, 0)) = 1.0;
        const Vector image = apply(x, e, t);
        sum += std::pow(q2, n) * image(t.index(n, 0));
    }
    return (1.0 - q2) * sum;
}

/// <a, b> = h(a^* b), evaluated by expanding a^* b first. Loses digits to
/// cancellation once a^* b contains a*^k a^k with k beyond 3 or so.
inline Complex gns_inner_expanded(const Polynomial& a, const Polynomial& b) {
    return haar_exact(mul(adjoint(a), b));
}

namespace detail {

/// (Q; Q)_n.
inline double q_pochhammer(double base, int n) {
    double p = 1.0;
    for (int i = 1; i <= n; ++i)
        p *= 1.0 - std::pow(base, i);
    return p;
}

} // namespace detail

/// h(u^* v) for canonical monomials. Zero across charge sectors; otherwise
/// u^* v reduces to x^A times a*^k a^k or a^k a*^k (x = b b*), and the Haar
/// integral of that is a q-Beta value built from positive factors only:
///   a^k a*^k x^A  ->  (1-q^2) (q^2;q^2)_A (q^2;q^2)_k / (q^2;q^2)_{A+k+1}
///   a*^k a^k x^A  ->  q^{2k(A+1)} times the same.
inline double monomial_pairing(const Monomial& u, const Monomial& v, const QParam& q) {
    if (u.alpha_exp != v.alpha_exp || u.beta_exp - u.beta_star_exp != v.beta_exp - v.beta_star_exp)
        return 0.0;
    const int k = std::abs(u.alpha_exp);
    const int A = u.beta_star_exp + v.beta_exp;
    if (q.is_classical()) {
        // Beta integral A! k! / (A+k+1)!.
        return std::exp(std::lgamma(A + 1.0) + std::lgamma(k + 1.0) - std::lgamma(A + k + 2.0));
    }
    const double q2 = q.value() * q.value();
    double w = (1.0 - q2) * detail::q_pochhammer(q2, A) * detail::q_pochhammer(q2, k) /
               detail::q_pochhammer(q2, A + k + 1);
    if (u.alpha_exp > 0)
        w *= std::pow(q2, k * (A + 1));
    return w;
}

/// <a, b> = h(a^* b), summed over monomial pairs.
inline Complex gns_inner(const Polynomial& a, const Polynomial& b) {
    a.check_compatible(b);
    Complex sum{};
    for (const auto& [u, cu] : a.terms())
        for (const auto& [v, cv] : b.terms())
            if (const double w = monomial_pairing(u, v, a.q()); w != 0.0)
                sum += std::conj(cu) * cv * w;
    return sum;
}

/// Torus charges (alpha exponent, beta exponent minus beta* exponent). All
/// rewrite rules preserve both.
struct Charge {
    int c1 = 0;
    int c2 = 0;
    friend auto operator<=>(const Charge&, const Charge&) = default;
};

inline Charge charge_of(const Monomial& m) noexcept { return {m.alpha_exp, m.beta_exp - m.beta_star_exp}; }

/// The sector of e^(l)_jk: c1 = -(j+k), c2 = k - j.
inline Charge sector_of(const Label& x) noexcept {
    return {-(x.j.twice + x.k.twice) / 2, (x.k.twice - x.j.twice) / 2};
}

/// Smallest l carried by a sector, as twice its value.
inline int sector_min_l2(const Charge& c) noexcept { return std::abs(c.c1) + std::abs(c.c2); }

inline Label label_of(const Charge& c, int depth) noexcept {
    const int l2 = sector_min_l2(c) + 2 * depth;
    return {{l2}, {-c.c1 - c.c2}, {c.c2 - c.c1}};
}

/// Monomial of a sector at filtration depth d: a^{c1} b^{d+c2+} b*^{d+c2-}.
inline Monomial sector_monomial(const Charge& c, int depth) noexcept {
    return {c.c1, depth + std::max(c.c2, 0), depth + std::max(-c.c2, 0)};
}

class SingularGramError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct GNSBasis {
    HalfInt lmax;
    std::map<Label, Polynomial> entries;
    std::map<Label, double> norms;  // norm of each vector before normalization

    const Polynomial& at(const Label& x) const { return entries.at(x); }
};

/// Little q-Jacobi polynomial p_n(x; a, b | Q) = 2phi1(Q^-n, abQ^{n+1}; aQ; Q, Qx),
/// evaluated at an algebra element x (typically a multiple of b b*).
inline Polynomial little_jacobi(int n, double a, double b, double base, const Polynomial& x) {
    Polynomial out(x.params());
    Polynomial xr(x.params(), 1.0);
    double coeff = 1.0;
    for (int r = 0; r <= n; ++r) {
        if (r > 0) {
            const double rr = r - 1;
            coeff *= (1.0 - std::pow(base, -n + rr)) * (1.0 - a * b * std::pow(base, n + 1 + rr)) /
                     ((1.0 - std::pow(base, 1 + rr)) * (1.0 - a * std::pow(base, 1 + rr)));
            coeff *= base;
            xr = mul(xr, x);
        }
        out += xr * coeff;
    }
    return out;
}

/// Depth of e^(l)_jk inside its sector: l - max(|j|, |k|).
inline int label_depth(const Label& x) { return (x.l.twice - sector_min_l2(sector_of(x))) / 2; }

/// Normalized matrix coefficient t^(l)_jk. Inside sector (c1, c2) the
/// polynomial part is P(x) = p_d(q^{-2|c1|} x; q^{2|c2|}, q^{2|c1|} | q^2)
/// with x = b b*, placed as
///   j+k <= 0, k >= j :  a^{c1} b^{c2} P
///   j+k >= 0, k >= j :  P b^{c2} a*^{-c1}
///   j+k >= 0, j >= k :  P b*^{-c2} a*^{-c1}
///   j+k <= 0, j >= k :  adjoint of the (-j, -k) coefficient
/// Phase: the highest-degree coefficient is positive real.
inline Polynomial t_matrix(const Label& lab, const AlgebraParams& params) {
    if (!lab.valid())
        throw std::invalid_argument("label " + to_string(lab) + " violates |j|,|k| <= l or parity");
    const Charge c = sector_of(lab);
    const int d = label_depth(lab);
    const double q = params.q.value();
    const int u = std::abs(c.c1);
    const int v = std::abs(c.c2);
    const bool jk_nonpos = lab.j.twice + lab.k.twice <= 0;
    const bool k_ge_j = lab.k.twice >= lab.j.twice;

    Polynomial t(params);
    if (jk_nonpos && !k_ge_j) {
        const Label mirror{lab.l, {-lab.j.twice}, {-lab.k.twice}};
        t = adjoint(t_matrix(mirror, params));
    } else {
        const Polynomial x = Polynomial(params, Monomial{0, 1, 1}) * std::pow(q, -2 * u);
        const Polynomial p = little_jacobi(d, std::pow(q, 2 * v), std::pow(q, 2 * u), q * q, x);
        if (jk_nonpos) {
            t = mul(Polynomial(params, Monomial{u, v, 0}), p);
        } else if (k_ge_j) {
            t = mul(mul(p, Polynomial(params, Monomial{0, v, 0})), Polynomial(params, Monomial{-u, 0, 0}));
        } else {
            t = mul(mul(p, Polynomial(params, Monomial{0, 0, v})), Polynomial(params, Monomial{-u, 0, 0}));
        }
    }
    const double norm = std::sqrt(gns_inner(t, t).real());
    t *= 1.0 / norm;
    const Complex lead = t.coefficient(sector_monomial(c, d));
    t *= std::conj(lead) / std::abs(lead);
    return t;
}

/// Starting vectors for Gram-Schmidt inside a sector. Both span the same
/// depth flag, so they give the same basis in exact arithmetic. The monomial
/// seed has a moment-type Gram matrix whose condition number grows like
/// q^{-d^2}; past l = 2 only the matrix-coefficient seed stays orthonormal.
enum class GramSeed { MatrixCoefficient, Monomial };

/// Largest |<e, f> - delta| over pairs in the same sector.
inline double orthonormality_defect(const GNSBasis& basis) {
    double worst = 0.0;
    for (const auto& [la, ea] : basis.entries)
        for (const auto& [lb, eb] : basis.entries) {
            if (sector_of(la) != sector_of(lb))
                continue;
            worst = std::max(worst, std::abs(gns_inner(ea, eb) - (la == lb ? 1.0 : 0.0)));
        }
    return worst;
}

/// Orthonormalizes the depth filtration of every charge sector with
/// l <= lmax (modified Gram-Schmidt in the Haar metric, one
/// reorthogonalization pass). Vectors come out with a positive leading
/// coefficient.
inline GNSBasis gram_schmidt_basis(HalfInt lmax, const AlgebraParams& params, double dependence_tol = 1e-12,
                                   GramSeed seed = GramSeed::MatrixCoefficient) {
    GNSBasis basis{lmax, {}, {}};
    const int reach = lmax.twice;
    for (int c1 = -reach; c1 <= reach; ++c1) {
        for (int c2 = -(reach - std::abs(c1)); c2 <= reach - std::abs(c1); ++c2) {
            const Charge sector{c1, c2};
            const int depths = (reach - sector_min_l2(sector)) / 2 + 1;
            std::vector<Polynomial> start;
            for (int d = 0; d < depths; ++d) {
                if (seed == GramSeed::Monomial)
                    start.emplace_back(params, sector_monomial(sector, d));
                else
                    start.push_back(t_matrix(label_of(sector, d), params));
            }
            Eigen::MatrixXcd gram(depths, depths);
            for (int a = 0; a < depths; ++a)
                for (int b = a; b < depths; ++b) {
                    gram(a, b) = gns_inner(start[a], start[b]);
                    gram(b, a) = std::conj(gram(a, b));
                }
            auto inner = [&gram](const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
                return Complex((u.adjoint() * gram * v)(0, 0));
            };
            std::vector<Eigen::VectorXcd> done;
            for (int d = 0; d < depths; ++d) {
                Eigen::VectorXcd v = Eigen::VectorXcd::Unit(depths, d);
                for (int pass = 0; pass < 2; ++pass)
                    for (const auto& e : done)
                        v -= inner(e, v) * e;
                const double norm = std::sqrt(std::max(0.0, inner(v, v).real()));
                if (norm < dependence_tol * std::sqrt(gram(d, d).real()))
                    throw SingularGramError("Gram matrix of sector (" + std::to_string(c1) + "," +
                                            std::to_string(c2) + ") is numerically singular at depth " +
                                            std::to_string(d));
                v /= norm;
                done.push_back(v);
                Polynomial e(params);
                for (int i = 0; i <= d; ++i)
                    e += start[i] * v(i);
                const Complex lead = e.coefficient(sector_monomial(sector, d));
                e *= std::conj(lead) / std::abs(lead);
                const Label lab = label_of(sector, d);
                basis.entries.emplace(lab, std::move(e));
                basis.norms.emplace(lab, norm);
            }
        }
    }
    return basis;
}

} // namespace qtriple

#endif // QTRIPLE_GNS_HPP
