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

#ifndef QTRIPLE_PARSE_HPP
#define QTRIPLE_PARSE_HPP

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ncpoly.hpp"

namespace qtriple {

class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

  private:
    std::size_t position_;
};

namespace detail {

// Recursive descent over the grammar in docs/grammar.md. Every factor is
// normalized as soon as it is built, so the parser never holds free words.
class Parser {
  public:
    Parser(std::string_view text, const AlgebraParams& params) : text_(text), params_(params) {}

    Polynomial run() {
        skip_space();
        if (at_end())
            throw ParseError("empty expression", pos_);
        Polynomial value = expr();
        skip_space();
        if (!at_end())
            throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
        return value;
    }

  private:
    Polynomial expr() {
        Polynomial value = term();
        for (;;) {
            skip_space();
            if (accept('+'))
                value += term();
            else if (accept('-'))
                value -= term();
            else
                return value;
        }
    }

    Polynomial term() {
        Polynomial value = unary();
        for (;;) {
            skip_space();
            if (accept('*')) {
                value = mul(value, unary());
            } else if (starts_operand()) {
                value = mul(value, unary());
            } else {
                return value;
            }
        }
    }

    Polynomial unary() {
        skip_space();
        if (accept('-'))
            return -unary();
        if (accept('+'))
            return unary();
        return power();
    }

    Polynomial power() {
        const std::size_t start = pos_;
        Polynomial base = postfix();
        skip_space();
        if (!accept('^'))
            return base;
        skip_space();
        const std::size_t exp_pos = pos_;
        bool negative = accept('-');
        if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            throw ParseError("expected integer exponent", pos_);
        int e = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), e);
        if (ec != std::errc{})
            throw ParseError("exponent out of range", exp_pos);
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        if (e > params_.max_degree)
            throw DegreeOverflow("exponent " + std::to_string(e) + " at position " +
                                 std::to_string(exp_pos) + " exceeds max degree " +
                                 std::to_string(params_.max_degree));
        if (!negative)
            return qtriple::power(base, e);
        // Negative powers only make sense for invertible scalars such as q.
        if (base.size() > 1 || (base.size() == 1 && !base.terms().begin()->first.is_unit()) ||
            base.is_zero())
            throw ParseError("negative exponent on a non-scalar factor", start);
        const Complex s = base.coefficient(kUnit);
        return Polynomial(params_, std::pow(s, -e));
    }

    Polynomial postfix() {
        Polynomial value = primary();
        for (;;) {
            if (accept('\''))
                value = adjoint(value);
            else if (accept_utf8("†"))
                value = adjoint(value);
            else
                return value;
        }
    }

    Polynomial primary() {
        skip_space();
        if (at_end())
            throw ParseError("unexpected end of expression", pos_);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial inner = expr();
            skip_space();
            if (!accept(')'))
                throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return number();
        if (accept('a') || accept_utf8("α"))
            return Polynomial::generator(params_, Letter::Alpha);
        if (accept('b') || accept_utf8("β"))
            return Polynomial::generator(params_, Letter::Beta);
        if (accept('q'))
            return Polynomial(params_, params_.q.value());
        if (accept('i'))
            return Polynomial(params_, Complex{0.0, 1.0});
        throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
    }

    Polynomial number() {
        const std::size_t start = pos_;
        std::size_t end = pos_;
        while (end < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '.'))
            ++end;
        if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
            std::size_t k = end + 1;
            if (k < text_.size() && (text_[k] == '+' || text_[k] == '-'))
                ++k;
            if (k < text_.size() && std::isdigit(static_cast<unsigned char>(text_[k]))) {
                end = k;
                while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end])))
                    ++end;
            }
        }
        const std::string literal(text_.substr(start, end - start));
        char* stop = nullptr;
        const double v = std::strtod(literal.c_str(), &stop);
        if (stop != literal.c_str() + literal.size())
            throw ParseError("malformed number '" + literal + "'", start);
        pos_ = end;
        if (accept('i'))
            return Polynomial(params_, Complex{0.0, v});
        return Polynomial(params_, v);
    }

    bool starts_operand() const {
        if (at_end())
            return false;
        const char c = text_[pos_];
        if (c == '(' || c == '.' || std::isdigit(static_cast<unsigned char>(c)))
            return true;
        if (c == 'a' || c == 'b' || c == 'q' || c == 'i')
            return true;
        return text_.substr(pos_).starts_with("α") || text_.substr(pos_).starts_with("β");
    }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c) {
        if (!at_end() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool accept_utf8(std::string_view s) {
        if (text_.substr(pos_).starts_with(s)) {
            pos_ += s.size();
            return true;
        }
        return false;
    }

    bool at_end() const { return pos_ >= text_.size(); }

    std::string_view text_;
    AlgebraParams params_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses and normalizes an expression such as "a*b - q*b*a" or "a a' + q^2 b b'".
inline Polynomial parse(std::string_view text, const AlgebraParams& params) {
    return detail::Parser(text, params).run();
}

namespace detail {

inline std::string format_real(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

/// Renders c as "q^k" or "-q^k" when it is a pure power of q, else numerically.
inline std::string format_coefficient(Complex c, const QParam& q, bool& is_one) {
    is_one = false;
    if (std::abs(c.imag()) <= 1e-13 * std::max(1.0, std::abs(c.real()))) {
        const double r = c.real();
        const double mag = std::abs(r);
        const std::string sign = r < 0 ? "-" : "";
        if (std::abs(mag - 1.0) < 1e-12) {
            is_one = true;
            return sign;
        }
        if (!q.is_classical()) {
            const double k = std::log(mag) / std::log(q.value());
            const double kr = std::round(k);
            if (kr != 0.0 && std::abs(kr) <= 64 && std::abs(mag - q.pow(static_cast<int>(kr))) <= 1e-12 * mag)
                return sign + (kr == 1.0 ? std::string("q") : "q^" + format_real(kr));
        }
        return format_real(r);
    }
    std::ostringstream os;
    os << "(" << format_real(c.real()) << (c.imag() < 0 ? "-" : "+") << format_real(std::abs(c.imag())) << "i)";
    return os.str();
}

inline std::string format_monomial(const Monomial& m) {
    std::string out;
    auto piece = [&out](const char* name, int e) {
        if (e == 0)
            return;
        if (!out.empty())
            out += ' ';
        out += name;
        if (e > 1)
            out += "^" + std::to_string(e);
    };
    piece(m.alpha_exp >= 0 ? "a" : "a'", std::abs(m.alpha_exp));
    piece("b", m.beta_exp);
    piece("b'", m.beta_star_exp);
    return out;
}

} // namespace detail

/// Human-readable canonical form, e.g. "q^-1 · a b" or "1 - b b'".
inline std::string to_string(const Polynomial& x) {
    if (x.is_zero())
        return "0";
    std::string out;
    bool first = true;
    // Highest degree last reads like the usual "1 - q^2 b b'".
    for (const auto& [m, c] : x.terms()) {
        bool is_one = false;
        std::string coeff = detail::format_coefficient(c, x.q(), is_one);
        bool negative = !coeff.empty() && coeff[0] == '-';
        if (negative)
            coeff.erase(0, 1);
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        if (m.is_unit()) {
            out += is_one ? "1" : coeff;
        } else if (is_one) {
            out += detail::format_monomial(m);
        } else {
            out += coeff + " · " + detail::format_monomial(m);
        }
    }
    return out;
}

} // namespace qtriple

#endif // QTRIPLE_PARSE_HPP
