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

#include <gtest/gtest.h>

#include <limits>

#include "support.hpp"

namespace qtriple {
namespace {

class GnsTest : public ::testing::TestWithParam<double> {
  protected:
    double q() const { return GetParam(); }
    AlgebraParams params() const { return AlgebraParams(GetParam()); }
    Polynomial P(Monomial m, Complex c = 1.0) const { return Polynomial(params(), m, c); }
};

/// Independent oracle: (1-q^2) sum_j q^{2j} f(q^{2j}) for f(x) = x^n, summed
/// directly until the terms underflow.
double haar_series(double q, int n) {
    const double q2 = q * q;
    double s = 0.0;
    for (int j = 0; j < 100000; ++j) {
        const double term = std::pow(q2, j) * std::pow(q2, j * n);
        s += term;
        if (term < 1e-300)
            break;
    }
    return (1.0 - q2) * s;
}

TEST_P(GnsTest, HaarOfUnitIsOne) { EXPECT_EQ(haar_exact(Polynomial(params(), 1.0)), Complex(1.0)); }

TEST_P(GnsTest, HaarOfBetaBetaStar) {
    const double expected = (1.0 - q() * q()) / (1.0 - std::pow(q(), 4));
    EXPECT_NEAR(haar_exact(P({0, 1, 1})).real(), expected, 1e-15);
    EXPECT_NEAR(haar_series(q(), 1), expected, 1e-14);
    EXPECT_NEAR(haar_numeric(P({0, 1, 1}), TruncationSpec(24, 4, 0)).real(), expected, 2.0 * std::pow(q(), 48) + 1e-15);
}

TEST_P(GnsTest, HaarVanishesOffDiagonal) {
    EXPECT_EQ(haar_exact(P(kAlpha)), Complex(0.0));
    EXPECT_EQ(haar_numeric(P(kAlpha), TruncationSpec(16, 4, 0)), Complex(0.0));
    EXPECT_EQ(haar_numeric(P(kBeta), TruncationSpec(16, 4, 0)), Complex(0.0));
}

TEST_P(GnsTest, HaarNumericOfUnitIsPartialGeometricSum) {
    const TruncationSpec t(16, 4, 0);
    EXPECT_NEAR(haar_numeric(Polynomial(params(), 1.0), t).real(), 1.0 - std::pow(q(), 2 * 16), 1e-15);
}

TEST_P(GnsTest, HaarMatchesGeometricSeries) {
    for (int n = 0; n <= 6; ++n)
        EXPECT_NEAR(haar_exact(P({0, n, n})).real(), haar_series(q(), n), 1e-14) << "n=" << n;
}

TEST_P(GnsTest, HaarExactAgreesWithTruncation) {
    const TruncationSpec t(24, 8, 0);
    // Floor at a few ulps: for small q the truncation error drops below rounding.
    const double bound = std::max(10.0 * std::pow(q(), 48), 4.0 * std::numeric_limits<double>::epsilon());
    for (int d = 0; d <= 6; ++d)
        for (const auto& m : monomials_of_degree(d))
            EXPECT_LE(std::abs(haar_exact(P(m)) - haar_numeric(P(m), t)), bound) << detail::format_monomial(m);
}

TEST_P(GnsTest, HaarIsHermitian) {
    Rng rng(0);
    for (int i = 0; i < 50; ++i) {
        const Polynomial x = random_polynomial(rng, params(), 6, 6);
        EXPECT_LE(std::abs(haar_exact(adjoint(x)) - std::conj(haar_exact(x))), 1e-14);
    }
}

TEST_P(GnsTest, Positivity) {
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        const Polynomial x = random_polynomial(rng, params(), 4, 6);
        const Complex v = gns_inner(x, x);
        EXPECT_GE(v.real(), 0.0);
        EXPECT_LE(std::abs(v.imag()), 1e-14);
    }
}

TEST_P(GnsTest, PairingMatchesExpandedProduct) {
    // Low degree, where expanding a^* b loses nothing.
    Rng rng(2);
    for (int i = 0; i < 100; ++i) {
        const Polynomial a = random_polynomial(rng, params(), 4);
        const Polynomial b = random_polynomial(rng, params(), 4);
        EXPECT_LE(std::abs(gns_inner(a, b) - gns_inner_expanded(a, b)), 1e-12);
    }
}

TEST_P(GnsTest, InnerProductExamples) {
    EXPECT_EQ(gns_inner(Polynomial(params(), 1.0), Polynomial(params(), 1.0)), Complex(1.0));
    EXPECT_EQ(gns_inner(P(kAlpha), P(kBeta)), Complex(0.0));
    EXPECT_EQ(gns_inner_expanded(P(kAlpha), P(kBeta)), Complex(0.0));
    const double expected = (1.0 - q() * q()) / (1.0 - std::pow(q(), 4));
    EXPECT_NEAR(gns_inner(P(kBeta), P(kBeta)).real(), expected, 1e-15);
}

TEST_P(GnsTest, SectorGramMatricesPositiveDefinite) {
    for (int reach = 0; reach <= 8; ++reach)
        for (int c1 = -reach; c1 <= reach; ++c1)
            for (int c2 = -(reach - std::abs(c1)); c2 <= reach - std::abs(c1); ++c2) {
                const Charge s{c1, c2};
                if (sector_min_l2(s) != reach)
                    continue;
                const int depths = (8 - reach) / 2 + 1;
                Eigen::MatrixXd g(depths, depths);
                for (int a = 0; a < depths; ++a)
                    for (int b = 0; b < depths; ++b)
                        g(a, b) = monomial_pairing(sector_monomial(s, a), sector_monomial(s, b), params().q);
                EXPECT_EQ(Eigen::LLT<Eigen::MatrixXd>(g).info(), Eigen::Success) << c1 << "," << c2;
            }
}

TEST_P(GnsTest, ChargeSelectionIsExact) {
    const GNSBasis basis = gram_schmidt_basis(HalfInt{3}, params());
    for (const auto& [la, ea] : basis.entries)
        for (const auto& [lb, eb] : basis.entries)
            if (sector_of(la) != sector_of(lb)) {
                EXPECT_EQ(gns_inner(ea, eb), Complex(0.0));
                EXPECT_EQ(gns_inner_expanded(ea, eb), Complex(0.0));
            }
}

TEST_P(GnsTest, OrthonormalUpToThreeHalves) {
    for (GramSeed seed : {GramSeed::Monomial, GramSeed::MatrixCoefficient})
        EXPECT_LE(orthonormality_defect(gram_schmidt_basis(HalfInt{3}, params(), 1e-12, seed)), 1e-10);
}

TEST_P(GnsTest, SeedsAgree) {
    const GNSBasis a = gram_schmidt_basis(HalfInt{3}, params(), 1e-12, GramSeed::Monomial);
    const GNSBasis b = gram_schmidt_basis(HalfInt{3}, params(), 1e-12, GramSeed::MatrixCoefficient);
    for (const auto& [lab, e] : a.entries)
        EXPECT_LE(e.distance(b.at(lab)), 1e-9) << to_string(lab);
}

TEST_P(GnsTest, Completeness) {
    const GNSBasis basis = gram_schmidt_basis(HalfInt{6}, params());
    std::map<int, int> per_l;
    for (const auto& [lab, e] : basis.entries) {
        EXPECT_TRUE(lab.valid());
        ++per_l[lab.l.twice];
    }
    for (int l2 = 0; l2 <= 6; ++l2)
        EXPECT_EQ(per_l[l2], (l2 + 1) * (l2 + 1));
    EXPECT_EQ(basis.entries.size(), 140u);
}

TEST_P(GnsTest, FirstVectors) {
    const GNSBasis basis = gram_schmidt_basis(HalfInt{1}, params());
    EXPECT_EQ(basis.at(Label{{0}, {0}, {0}}), Polynomial(params(), 1.0));
    // e^(1/2)_{-1/2,-1/2} = a / ||a||, ||a||^2 = 1 - h(b b*).
    const double norm2 = 1.0 - (1.0 - q() * q()) / (1.0 - std::pow(q(), 4));
    const Polynomial e = basis.at(Label{{1}, {-1}, {-1}});
    EXPECT_LE(e.distance(P(kAlpha, 1.0 / std::sqrt(norm2))), 1e-14);
    // Oracle for the norm: the truncated Haar state, off by at most the tail q^{2 N_F}.
    EXPECT_NEAR(haar_numeric(P({0, 0, 0}) - P({0, 1, 1}), TruncationSpec(40, 4, 0)).real(), norm2,
                std::pow(q(), 80) + 1e-14);
}

TEST_P(GnsTest, ChargeGrading) {
    EXPECT_EQ(charge_of(Monomial{1, 1, 0}), (Charge{1, 1}));
    EXPECT_EQ(charge_of(kBetaStar), (Charge{0, -1}));
    EXPECT_EQ(charge_of(kUnit), (Charge{0, 0}));
    const Polynomial x = normalize(Word{{Letter::AlphaStar, Letter::Alpha}, 1.0}, params());
    for (const auto& [m, c] : x.terms())
        EXPECT_EQ(charge_of(m), (Charge{0, 0}));
    for (const auto& lab : labels_up_to(HalfInt{6})) {
        const Label back = label_of(sector_of(lab), label_depth(lab));
        EXPECT_EQ(back, lab);
    }
}

TEST_P(GnsTest, LittleJacobiBasics) {
    const Polynomial x = P({0, 1, 1});
    EXPECT_EQ(little_jacobi(0, 0.3, 0.4, q() * q(), x), Polynomial(params(), 1.0));
    const Polynomial p1 = little_jacobi(1, 0.3, 0.4, q() * q(), x);
    // 2phi1 first term: (1 - Q^-1)(1 - ab Q^2) / ((1 - Q)(1 - a Q)) Q.
    const double Q = q() * q();
    const double c1 = (1.0 - 1.0 / Q) * (1.0 - 0.12 * Q * Q) / ((1.0 - Q) * (1.0 - 0.3 * Q)) * Q;
    EXPECT_LE(p1.distance(Polynomial(params(), 1.0) + x * c1), 1e-13);
    const Polynomial b = P(kBeta);
    for (int n = 0; n <= 4; ++n) {
        const Polynomial p = little_jacobi(n, 0.5, 0.25, Q, x);
        EXPECT_LE(mul(p, b).distance(mul(b, p)), 1e-11);
    }
}

TEST_P(GnsTest, LittleJacobiOrthogonality) {
    // Orthogonality on the q-lattice against the discrete weight (bQ;Q)_k/(Q;Q)_k (aQ)^k.
    const double Q = q() * q(), a = std::pow(q(), 2), b = std::pow(q(), 4);
    auto eval = [&](int n, double xv) {
        double s = 0.0, c = 1.0;
        for (int r = 0; r <= n; ++r) {
            if (r > 0)
                c *= (1.0 - std::pow(Q, -n + r - 1)) * (1.0 - a * b * std::pow(Q, n + r)) /
                     ((1.0 - std::pow(Q, r)) * (1.0 - a * std::pow(Q, r))) * Q;
            s += c * std::pow(xv, r);
        }
        return s;
    };
    // Same series through the algebra, evaluated in the scalar limit x -> number.
    for (int n = 0; n <= 3; ++n) {
        const Polynomial p = little_jacobi(n, a, b, Q, P({0, 1, 1}));
        for (int r = 0; r <= n; ++r) {
            double c = 1.0;
            for (int s = 1; s <= r; ++s)
                c *= (1.0 - std::pow(Q, -n + s - 1)) * (1.0 - a * b * std::pow(Q, n + s)) /
                     ((1.0 - std::pow(Q, s)) * (1.0 - a * std::pow(Q, s))) * Q;
            EXPECT_NEAR(p.coefficient(Monomial{0, r, r}).real(), c, 1e-12 * std::max(1.0, std::abs(c)));
        }
    }
    for (int n = 0; n <= 3; ++n)
        for (int m = 0; m < n; ++m) {
            double s = 0.0;
            for (int k = 0; k < 2000; ++k) {
                double w = std::pow(a * Q, k);
                for (int i = 1; i <= k; ++i)
                    w *= (1.0 - b * std::pow(Q, i)) / (1.0 - std::pow(Q, i));
                s += w * eval(n, std::pow(Q, k)) * eval(m, std::pow(Q, k));
                if (w < 1e-300)
                    break;
            }
            EXPECT_NEAR(s, 0.0, 1e-10) << n << "," << m;
        }
}

TEST_P(GnsTest, TMatrixMatchesGramSchmidt) {
    const GNSBasis basis = gram_schmidt_basis(HalfInt{3}, params(), 1e-12, GramSeed::Monomial);
    for (const auto& [lab, e] : basis.entries) {
        const Polynomial t = t_matrix(lab, params());
        EXPECT_NEAR(gns_inner(t, t).real(), 1.0, 1e-12);
        EXPECT_GE(std::abs(gns_inner(t, e)), 1.0 - 1e-8) << to_string(lab);
    }
}

TEST_P(GnsTest, TMatrixExamples) {
    EXPECT_EQ(t_matrix(Label{{0}, {0}, {0}}, params()), Polynomial(params(), 1.0));
    const Polynomial t = t_matrix(Label{{1}, {-1}, {-1}}, params());
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t.terms().begin()->first, kAlpha);
    EXPECT_THROW(t_matrix(Label{{1}, {2}, {1}}, params()), std::invalid_argument);
    EXPECT_THROW(t_matrix(Label{{2}, {1}, {0}}, params()), std::invalid_argument);
}

TEST_P(GnsTest, TMatrixOrthogonalAtLargerL) {
    std::vector<Label> labels = labels_up_to(HalfInt{6});
    std::map<Label, Polynomial> t;
    for (const auto& lab : labels)
        t.emplace(lab, t_matrix(lab, params()));
    double worst = 0.0;
    for (const auto& [la, ta] : t)
        for (const auto& [lb, tb] : t)
            if (sector_of(la) == sector_of(lb))
                worst = std::max(worst, std::abs(gns_inner(ta, tb) - (la == lb ? 1.0 : 0.0)));
    EXPECT_LE(worst, q() < 0.4 ? 1e-6 : 1e-9);
}

INSTANTIATE_TEST_SUITE_P(Q, GnsTest, ::testing::Values(0.3, 0.5, 0.8));

TEST(GnsSingular, ReportsSector) {
    // With a loose dependence threshold any depth counts as dependent.
    EXPECT_THROW(gram_schmidt_basis(HalfInt{2}, AlgebraParams(0.5), 2.0), SingularGramError);
}

TEST(GnsClassical, HaarIsLebesgue) {
    const AlgebraParams p(QParam::classical());
    for (int n = 0; n <= 5; ++n)
        EXPECT_NEAR(haar_exact(Polynomial(p, Monomial{0, n, n})).real(), 1.0 / (n + 1), 1e-15);
}

TEST(HalfIntTest, Formatting) {
    EXPECT_EQ(to_string(HalfInt{3}), "3/2");
    EXPECT_EQ(to_string(HalfInt{4}), "2");
    EXPECT_EQ(to_string(HalfInt{-1}), "-1/2");
    EXPECT_EQ(labels_up_to(HalfInt{2}).size(), 14u);
}

} // namespace
} // namespace qtriple
