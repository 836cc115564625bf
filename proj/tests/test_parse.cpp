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

#include "support.hpp"

namespace qtriple {
namespace {

class ParseTest : public ::testing::Test {
  protected:
    double q = 0.5;
    AlgebraParams params{0.5};
    Polynomial P(Monomial m, Complex c = 1.0) const { return Polynomial(params, m, c); }
};

TEST_F(ParseTest, DefiningRelationVanishes) { EXPECT_TRUE(parse("a*b - q*b*a", params).is_zero()); }

TEST_F(ParseTest, JuxtapositionMultiplies) { EXPECT_TRUE(parse("a b - q b a", params).is_zero()); }

TEST_F(ParseTest, Unit) { EXPECT_EQ(parse("1", params), Polynomial(params, 1.0)); }

TEST_F(ParseTest, CanonicalPower) { EXPECT_EQ(parse("b^2", params), P({0, 2, 0})); }

TEST_F(ParseTest, UnicodeAliases) {
    EXPECT_EQ(parse("α β", params), parse("a b", params));
    EXPECT_EQ(parse("α†", params), parse("a'", params));
}

TEST_F(ParseTest, AdjointPostfix) {
    EXPECT_EQ(parse("a'", params), P(kAlphaStar));
    EXPECT_EQ(parse("b'", params), P(kBetaStar));
    EXPECT_EQ(parse("(a b)'", params), P({-1, 0, 1}, q));
    EXPECT_EQ(parse("a''", params), P(kAlpha));
}

TEST_F(ParseTest, ConjugateLinearAdjoint) { EXPECT_EQ(parse("(2i b)'", params), P(kBetaStar, {0.0, -2.0})); }

TEST_F(ParseTest, ComplexLiterals) {
    EXPECT_EQ(parse("1.5 + 2i", params), Polynomial(params, Complex{1.5, 2.0}));
    EXPECT_EQ(parse("i*i", params), Polynomial(params, -1.0));
    EXPECT_EQ(parse("1e-1 a", params), P(kAlpha, 0.1));
}

TEST_F(ParseTest, QIsANumber) {
    EXPECT_EQ(parse("q^2", params), Polynomial(params, q * q));
    EXPECT_EQ(parse("q^-1", params), Polynomial(params, 1.0 / q));
}

TEST_F(ParseTest, FirstRelationIsUnit) { EXPECT_EQ(parse("a' a + b' b", params), Polynomial(params, 1.0)); }

TEST_F(ParseTest, SecondRelationIsUnit) { EXPECT_EQ(parse("a a' + q^2 b b'", params), Polynomial(params, 1.0)); }

TEST_F(ParseTest, AliasSumIsNotUnit) {
    // a a' + b b' = 1 + (1 - q^2) b b'; checked against the representation.
    const Polynomial r = parse("a*a' + b*b'", params);
    EXPECT_EQ(r, Polynomial(params, 1.0) + P({0, 1, 1}, 1.0 - q * q));
    const TruncationSpec t(12, 6, 3);
    const Generators g = build_generators(t, params.q);
    const Matrix direct = g.alpha * g.alpha.adjoint() + g.beta * g.beta.adjoint();
    EXPECT_LE(testing::interior_gap(direct, represent(r, t), t), 1e-12);
}

TEST_F(ParseTest, WhitespaceInsensitive) { EXPECT_EQ(parse("  a  *  b ^ 2 ", params), parse("a*b^2", params)); }

TEST_F(ParseTest, Precedence) {
    EXPECT_EQ(parse("-a^2", params), P({2, 0, 0}, -1.0));
    EXPECT_EQ(parse("2 a + 3 b", params), P(kAlpha, 2.0) + P(kBeta, 3.0));
    EXPECT_EQ(parse("(a + b)^2", params), parse("a a + a b + b a + b b", params));
}

struct BadInput {
    const char* text;
    std::size_t position;
};

class ParseErrorTest : public ::testing::TestWithParam<BadInput> {};

TEST_P(ParseErrorTest, ReportsPosition) {
    const AlgebraParams params(0.5);
    try {
        parse(GetParam().text, params);
        FAIL() << "no error for '" << GetParam().text << "'";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), GetParam().position) << e.what();
    }
}

INSTANTIATE_TEST_SUITE_P(Inputs, ParseErrorTest,
                         ::testing::Values(BadInput{"", 0}, BadInput{"a +", 3}, BadInput{"a + * b", 4},
                                           BadInput{"(a b", 4}, BadInput{"a ^ x", 4}, BadInput{"a )", 2},
                                           BadInput{"a^-1", 0}, BadInput{"c", 0}, BadInput{"1..2", 0}));

TEST_F(ParseTest, ExponentOverflow) {
    const AlgebraParams small(QParam(0.5), 1e-14, 10);
    EXPECT_THROW(parse("a^11", small), DegreeOverflow);
    EXPECT_THROW(parse("a^5 b^6", small), DegreeOverflow);
    EXPECT_NO_THROW(parse("a^10", small));
}

TEST_F(ParseTest, Rendering) {
    EXPECT_EQ(to_string(parse("b*a", params)), "q^-1 · a b");
    EXPECT_EQ(to_string(parse("1", params)), "1");
    EXPECT_EQ(to_string(parse("0", params)), "0");
    EXPECT_EQ(to_string(parse("a a'", params)), "1 - q^2 · b b'");
    EXPECT_EQ(to_string(parse("a'^2 b'^3", params)), "a'^2 b'^3");
}

TEST_F(ParseTest, RenderParseRoundTrip) {
    Rng rng(11);
    for (int i = 0; i < 30; ++i) {
        const Polynomial r = normalize(random_word(rng, 5), params);
        std::string text;
        for (const auto& [m, c] : r.terms()) {
            std::ostringstream os;
            os.precision(17);
            os << " + (" << c.real() << " + " << c.imag() << "i)";
            if (!m.is_unit())
                os << " " << detail::format_monomial(m);
            text += os.str();
        }
        EXPECT_LE(parse(text.substr(3), params).distance(r), 1e-14);
    }
}

} // namespace
} // namespace qtriple
