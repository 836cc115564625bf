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

#ifndef QTRIPLE_RANDOM_HPP
#define QTRIPLE_RANDOM_HPP

#include <cstdint>
#include <random>

#include "ncpoly.hpp"

namespace qtriple {

// Generators for the randomized property checks. All draws go through one
// seeded engine so a run is reproducible from its seed.
using Rng = std::mt19937_64;

inline Complex random_coefficient(Rng& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return {u(rng), u(rng)};
}

inline Word random_word(Rng& rng, int max_length, int min_length = 0) {
    std::uniform_int_distribution<int> len(min_length, max_length);
    std::uniform_int_distribution<int> letter(0, 3);
    Word w;
    const int n = len(rng);
    for (int i = 0; i < n; ++i)
        w.letters.push_back(static_cast<Letter>(letter(rng)));
    w.coefficient = random_coefficient(rng);
    return w;
}

inline Monomial random_monomial(Rng& rng, int max_degree) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    const auto all = monomials_of_degree(deg(rng));
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    return all[pick(rng)];
}

inline Polynomial random_polynomial(Rng& rng, const AlgebraParams& params, int max_degree, int max_terms = 4) {
    std::uniform_int_distribution<int> count(1, max_terms);
    Polynomial x(params);
    const int n = count(rng);
    for (int i = 0; i < n; ++i)
        x.add_term(random_monomial(rng, max_degree), random_coefficient(rng));
    return x;
}

} // namespace qtriple

#endif // QTRIPLE_RANDOM_HPP
