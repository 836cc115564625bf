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

#ifndef QTRIPLE_TESTS_SUPPORT_HPP
#define QTRIPLE_TESTS_SUPPORT_HPP

#include <complex>
#include <vector>

#include "qtriple/qtriple.hpp"

namespace qtriple::testing {

/// ||P (rho(x) - rho(y)) P|| with the interior projector of t.
inline double interior_gap(const Matrix& x, const Matrix& y, const TruncationSpec& t) {
    return operator_norm(compress_interior(x - y, t));
}

/// Word-level product q^a * letters, for readable oracles.
inline Word word(std::vector<Letter> letters, Complex c = 1.0) { return Word{std::move(letters), c}; }

/// Brute-force list of canonical monomials of degree d: every (k, n, m)
/// with |k| + n + m = d.
inline std::vector<Monomial> brute_monomials(int d) {
    std::vector<Monomial> out;
    for (int k = -d; k <= d; ++k)
        for (int n = 0; n <= d; ++n)
            for (int m = 0; m <= d; ++m)
                if (std::abs(k) + n + m == d)
                    out.push_back({k, n, m});
    return out;
}

} // namespace qtriple::testing

#endif // QTRIPLE_TESTS_SUPPORT_HPP
