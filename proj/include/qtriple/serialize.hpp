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

#ifndef QTRIPLE_SERIALIZE_HPP
#define QTRIPLE_SERIALIZE_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "gns.hpp"
#include "ncpoly.hpp"
#include "report.hpp"
#include "rep.hpp"
#include "triple.hpp"

namespace qtriple {

using Json = nlohmann::json;

// Wire formats. Field names here are a frozen contract.

inline Json to_json(const Polynomial& x) {
    Json terms = Json::array();
    for (const auto& [m, c] : x.terms())
        terms.push_back({{"a", m.alpha_exp}, {"b", m.beta_exp}, {"bs", m.beta_star_exp}, {"re", c.real()}, {"im", c.imag()}});
    return {{"q", x.q().value()}, {"terms", terms}};
}

inline Polynomial polynomial_from_json(const Json& j, double prune = 1e-14, int max_degree = 64) {
    const double q = j.at("q").get<double>();
    const AlgebraParams params(q == 1.0 ? QParam::classical() : QParam(q), prune, max_degree);
    Polynomial x(params);
    for (const auto& t : j.at("terms")) {
        const Monomial m{t.at("a").get<int>(), t.at("b").get<int>(), t.at("bs").get<int>()};
        if (m.beta_exp < 0 || m.beta_star_exp < 0)
            throw std::invalid_argument("negative beta exponent in polynomial JSON");
        x.add_term(m, Complex{t.at("re").get<double>(), t.at("im").get<double>()});
    }
    return x;
}

inline Json to_json(const GNSBasis& basis) {
    Json entries = Json::array();
    for (const auto& [lab, e] : basis.entries)
        entries.push_back({{"l2", lab.l.twice}, {"j2", lab.j.twice}, {"k2", lab.k.twice}, {"norm", basis.norms.at(lab)}, {"poly", to_json(e)}});
    return {{"lmax2", basis.lmax.twice}, {"entries", entries}};
}

inline Json to_json(const Report& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}, {"tolerance", c.tolerance}, {"value", c.value}});
    return checks;
}

inline Json to_json(const std::vector<SpectrumLine>& s) {
    Json out = Json::array();
    for (const auto& line : s)
        out.push_back({{"eig", line.eig}, {"mult", line.mult}});
    return out;
}

/// {"dim": n, "re": [...], "im": [...]} with row-major entries.
inline Json matrix_to_json(const Matrix& m) {
    std::vector<double> re, im;
    re.reserve(static_cast<std::size_t>(m.size()));
    im.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            re.push_back(m(r, c).real());
            im.push_back(m(r, c).imag());
        }
    return {{"dim", m.rows()}, {"re", re}, {"im", im}};
}

// Binary dump: 16-byte header (u32 dim little-endian, 12 reserved zero
// bytes) followed by dim*dim complex128 values, row-major, little-endian.

namespace detail {

template <class T>
void write_le(std::ostream& os, T value) {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(bytes, bytes + sizeof(T));
    os.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T read_le(std::istream& is) {
    unsigned char bytes[sizeof(T)];
    if (!is.read(reinterpret_cast<char*>(bytes), sizeof(T)))
        throw std::runtime_error("truncated matrix dump");
    if constexpr (std::endian::native == std::endian::big)
        std::reverse(bytes, bytes + sizeof(T));
    T value;
    std::memcpy(&value, bytes, sizeof(T));
    return value;
}

} // namespace detail

inline void write_matrix_binary(std::ostream& os, const Matrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("binary dump expects a square matrix");
    detail::write_le<std::uint32_t>(os, static_cast<std::uint32_t>(m.rows()));
    for (int i = 0; i < 3; ++i)
        detail::write_le<std::uint32_t>(os, 0);
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            detail::write_le<double>(os, m(r, c).real());
            detail::write_le<double>(os, m(r, c).imag());
        }
}

inline Matrix read_matrix_binary(std::istream& is) {
    const auto dim = detail::read_le<std::uint32_t>(is);
    for (int i = 0; i < 3; ++i)
        detail::read_le<std::uint32_t>(is);
    Matrix m(dim, dim);
    for (std::uint32_t r = 0; r < dim; ++r)
        for (std::uint32_t c = 0; c < dim; ++c) {
            const double re = detail::read_le<double>(is);
            const double im = detail::read_le<double>(is);
            m(r, c) = Complex{re, im};
        }
    return m;
}

} // namespace qtriple

#endif // QTRIPLE_SERIALIZE_HPP
