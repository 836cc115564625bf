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

#ifndef QTRIPLE_TRIPLE_HPP
#define QTRIPLE_TRIPLE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gns.hpp"
#include "ncpoly.hpp"
#include "parse.hpp"
#include "random.hpp"
#include "report.hpp"

namespace qtriple {

/// Diagonal Dirac data: d(l, j) = 2l+1 for j != l and -(2l+1) for j = l.
struct DiracSpec {
    HalfInt lmax;

    int eigenvalue(const Label& x) const noexcept {
        const int v = x.l.twice + 1;
        return x.j == x.l ? -v : v;
    }
    /// Z2 parity (-1)^{2l} of e^(l)_jk.
    int parity(const Label& x) const noexcept { return x.l.twice % 2 == 0 ? 1 : -1; }
};

using LabelVector = std::map<Label, Complex>;

inline LabelVector dirac_apply(const LabelVector& v, const DiracSpec& spec) {
    LabelVector out;
    for (const auto& [lab, c] : v) {
        if (lab.l > spec.lmax || !lab.valid())
            throw std::out_of_range("label " + to_string(lab) + " outside the Dirac domain");
        out.emplace(lab, c * static_cast<double>(spec.eigenvalue(lab)));
    }
    return out;
}

/// Diagonal matrices of D and of the parity operator over a label list.
inline Eigen::MatrixXd dirac_matrix(const std::vector<Label>& labels, const DiracSpec& spec) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(labels.size()), static_cast<Eigen::Index>(labels.size()));
    for (std::size_t i = 0; i < labels.size(); ++i)
        d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = spec.eigenvalue(labels[i]);
    return d;
}

inline Eigen::MatrixXd parity_matrix(const std::vector<Label>& labels, const DiracSpec& spec) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(labels.size()), static_cast<Eigen::Index>(labels.size()));
    for (std::size_t i = 0; i < labels.size(); ++i)
        g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = spec.parity(labels[i]);
    return g;
}

struct ParityResult {
    Label label;
    int expected;  // (-1)^{2l}
    bool pass;
};

inline std::vector<ParityResult> parity_results(const GNSBasis& basis) {
    std::vector<ParityResult> out;
    const DiracSpec spec{basis.lmax};
    for (const auto& [lab, e] : basis.entries) {
        const int sign = spec.parity(lab);
        const Polynomial expected = sign > 0 ? e : -e;
        out.push_back({lab, sign, z2_act(e) == expected});
    }
    return out;
}

/// Checks z2_act(e^(l)_jk) = (-1)^{2l} e^(l)_jk coefficientwise for l <= lmax <= 5/2.
inline std::vector<ParityResult> check_parity(HalfInt lmax, const AlgebraParams& params) {
    if (lmax.twice > 5)
        throw std::invalid_argument("check_parity supports lmax <= 5/2");
    return parity_results(gram_schmidt_basis(lmax, params));
}

class DegreeGuardError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// pi(a) and [D, pi(a)] in the orthonormal basis, compressed to the labels
/// with l <= lmax - deg(a).
struct CommutatorData {
    std::vector<Label> labels;
    Matrix pi;
    Matrix commutator;
};

inline CommutatorData commutator_matrix(const Polynomial& a, const GNSBasis& basis, const DiracSpec& spec) {
    const int deg = std::max(a.degree(), 0);
    const int guard2 = basis.lmax.twice - 2 * deg;
    if (guard2 < 0)
        throw DegreeGuardError("element of degree " + std::to_string(deg) + " needs lmax >= " + std::to_string(deg));
    CommutatorData out;
    out.labels = labels_up_to(HalfInt{guard2});
    const auto n = static_cast<Eigen::Index>(out.labels.size());
    out.pi = Matrix::Zero(n, n);
    std::vector<Charge> bra_charge;
    for (const auto& lab : out.labels)
        bra_charge.push_back(sector_of(lab));
    for (Eigen::Index c = 0; c < n; ++c) {
        const Polynomial image = mul(a, basis.at(out.labels[static_cast<std::size_t>(c)]));
        std::vector<Charge> image_charges;
        for (const auto& [m, coeff] : image.terms())
            image_charges.push_back(charge_of(m));
        for (Eigen::Index r = 0; r < n; ++r) {
            // The Haar pairing vanishes identically across charge sectors.
            if (std::find(image_charges.begin(), image_charges.end(), bra_charge[static_cast<std::size_t>(r)]) ==
                image_charges.end())
                continue;
            out.pi(r, c) = gns_inner(basis.at(out.labels[static_cast<std::size_t>(r)]), image);
        }
    }
    out.commutator = Matrix::Zero(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c)
            out.commutator(r, c) = static_cast<double>(spec.eigenvalue(out.labels[static_cast<std::size_t>(r)]) -
                                                       spec.eigenvalue(out.labels[static_cast<std::size_t>(c)])) *
                                   out.pi(r, c);
    return out;
}

/// Partial sums S(L) = sum_{l <= L} (2l+1)^2 |2l+1|^{-s}, for L = 0, 1/2, ..., lmax.
inline std::vector<std::pair<HalfInt, double>> summability_scan(HalfInt lmax, double s) {
    if (!(s > 0.0))
        throw std::invalid_argument("summability exponent must be positive");
    std::vector<std::pair<HalfInt, double>> out;
    double sum = 0.0;
    for (int l2 = 0; l2 <= lmax.twice; ++l2) {
        const double n = l2 + 1;
        sum += n * n * std::pow(n, -s);
        out.emplace_back(HalfInt{l2}, sum);
    }
    return out;
}

/// <a, b> = sum_{g in Z2} g(a^* b), valued in the fixed-point algebra.
inline Polynomial hilbert_module_product(const Polynomial& a, const Polynomial& b) {
    const Polynomial ab = mul(adjoint(a), b);
    return ab + z2_act(ab);
}

class CoveringError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct CoveringCert {
    std::vector<Letter> generators;
    std::map<Monomial, std::vector<ModuleTerm>> decompositions;
    int max_degree_checked = 0;
    std::size_t even_count = 0;
};

/// Decomposes every odd canonical monomial of degree <= max_degree over the
/// even subalgebra and re-verifies each reassembly exactly.
inline CoveringCert certify_covering(int max_degree, const AlgebraParams& params) {
    if (max_degree < 1 || max_degree > 10)
        throw std::invalid_argument("certify_covering supports 1 <= max_degree <= 10");
    CoveringCert cert;
    cert.generators = {Letter::Alpha, Letter::AlphaStar, Letter::Beta, Letter::BetaStar};
    cert.max_degree_checked = max_degree;
    for (int d = 0; d <= max_degree; ++d) {
        for (const auto& m : monomials_of_degree(d)) {
            if (m.parity() == 0) {
                ++cert.even_count;
                continue;
            }
            const Polynomial x(params, m);
            auto parts = module_decompose(x);
            for (const auto& p : parts)
                if (!is_even(p.even_factor))
                    throw CoveringError("non-even factor for " + detail::format_monomial(m));
            if (!(reassemble(parts, params) == x))
                throw CoveringError("reassembly failed for " + detail::format_monomial(m));
            cert.decompositions.emplace(m, std::move(parts));
        }
    }
    return cert;
}

struct SpectrumLine {
    int eig;
    int mult;
};

/// (eigenvalue, multiplicity) over labels, ascending eigenvalue.
inline std::vector<SpectrumLine> spectrum(const std::vector<Label>& labels, const DiracSpec& spec) {
    std::map<int, int> counts;
    for (const auto& lab : labels)
        ++counts[spec.eigenvalue(lab)];
    std::vector<SpectrumLine> out;
    for (const auto& [e, m] : counts)
        out.push_back({e, m});
    return out;
}

inline std::vector<Label> integer_labels(const std::vector<Label>& labels) {
    std::vector<Label> out;
    for (const auto& lab : labels)
        if (lab.l.is_integer())
            out.push_back(lab);
    return out;
}

struct TripleReport {
    Report report;
    std::vector<SpectrumLine> oriented;
    std::vector<SpectrumLine> unoriented;
};

/// Builds the oriented triple up to lmax, restricts D to the integer-l span
/// and runs the unoriented-triple checks.
inline TripleReport assemble_unoriented_triple(HalfInt lmax, const AlgebraParams& params, std::uint64_t seed = 0,
                                               int covering_degree = 6) {
    TripleReport out;
    Report& rep = out.report;
    const DiracSpec spec{lmax};
    const GNSBasis basis = gram_schmidt_basis(lmax, params);
    const auto labels = labels_up_to(lmax);
    const auto even = integer_labels(labels);
    Rng rng(seed);

    {
        const auto res = parity_results(basis);
        const auto bad = std::count_if(res.begin(), res.end(), [](const ParityResult& r) { return !r.pass; });
        rep.add("parity_of_basis", bad == 0,
                std::to_string(res.size()) + " labels, g e = (-1)^{2l} e coefficientwise", 0.0, static_cast<double>(bad));
    }
    {
        const Eigen::MatrixXd d = dirac_matrix(labels, spec);
        const Eigen::MatrixXd g = parity_matrix(labels, spec);
        const double err = (g * d - d * g).cwiseAbs().maxCoeff();
        rep.add("g_commutes_with_D", err == 0.0, "max |GD - DG| over all labels", 0.0, err);
    }
    {
        // D restricted to the fixed vectors of g is D applied to integer-l labels.
        LabelVector v;
        for (const auto& lab : even)
            v.emplace(lab, 1.0);
        const LabelVector dv = dirac_apply(v, spec);
        double err = 0.0;
        bool odd_only = true;
        for (const auto& [lab, c] : dv) {
            err = std::max(err, std::abs(c - static_cast<double>(spec.eigenvalue(lab))));
            const int e = spec.eigenvalue(lab);
            odd_only = odd_only && (std::abs(e) % 2 == 1) && std::abs(e) == lab.l.twice + 1;
        }
        rep.add("restricted_spectrum_odd", odd_only, "restricted eigenvalues are +-(2l+1), l integer", 0.0, err);
    }
    {
        // Even elements keep even vectors even. Degree <= 2 leaves a guard band.
        double leak = 0.0;
        const int deg = 2;
        if (lmax.twice >= 2 * deg) {
            const auto cols = integer_labels(labels_up_to(HalfInt{lmax.twice - 2 * deg}));
            for (int trial = 0; trial < 20; ++trial) {
                Polynomial a = z2_project(random_polynomial(rng, params, deg), Sector::Even);
                for (const auto& col : cols) {
                    const Polynomial image = mul(a, basis.at(col));
                    for (std::size_t r = 0; r < labels.size(); ++r)
                        if (!labels[r].l.is_integer())
                            leak = std::max(leak, std::abs(gns_inner(basis.at(labels[r]), image)));
                }
            }
        }
        rep.add("even_subspace_invariant", leak == 0.0,
                "20 random even a: components of pi(a)e on half-integer labels", 0.0, leak);
    }
    {
        bool ok = true;
        for (int trial = 0; trial < 20; ++trial) {
            const Polynomial x = random_polynomial(rng, params, 6, 6);
            const Polynomial e = z2_project(x, Sector::Even);
            const Polynomial o = z2_project(x, Sector::Odd);
            ok = ok && z2_act(e) == e && is_even(e) && (e + o).distance(x) <= params.prune;
            ok = ok && ((z2_act(x) == x) == o.is_zero());
        }
        rep.add("fixed_points_are_even", ok, "z2 fixed points coincide with even polynomials (20 random)", 0.0, ok ? 0.0 : 1.0);
    }
    {
        double err = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const Polynomial a = random_polynomial(rng, params, 4);
            const Polynomial b = random_polynomial(rng, params, 4);
            const Complex lhs = gns_inner(z2_act(a), z2_act(b));
            const Complex rhs = gns_inner(a, b);
            err = std::max(err, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
        }
        rep.add_bound("g_unitary_on_gns", err, 1e-12, "100 random pairs");
    }
    {
        bool ok = true;
        for (int trial = 0; trial < 100; ++trial) {
            const Polynomial p = hilbert_module_product(random_polynomial(rng, params, 4), random_polynomial(rng, params, 4));
            ok = ok && z2_act(p) == p;
        }
        rep.add("module_product_in_base", ok, "100 random pairs: <a,b> fixed by g", 0.0, ok ? 0.0 : 1.0);
    }
    {
        bool ok = true;
        std::string detail;
        try {
            const auto cert = certify_covering(covering_degree, params);
            detail = std::to_string(cert.decompositions.size()) + " odd monomials up to degree " +
                     std::to_string(covering_degree) + " over generators a, a', b, b'";
        } catch (const CoveringError& e) {
            ok = false;
            detail = e.what();
        }
        rep.add("finite_covering", ok, detail, 0.0, ok ? 0.0 : 1.0);
    }

    out.oriented = spectrum(labels, spec);
    out.unoriented = spectrum(even, spec);
    return out;
}

} // namespace qtriple

#endif // QTRIPLE_TRIPLE_HPP
