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

#ifndef QTRIPLE_NCPOLY_HPP
#define QTRIPLE_NCPOLY_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qtriple {

using Complex = std::complex<double>;

/// Deformation parameter 0 < q < 1. The classical point q = 1 is only
/// reachable through QParam::classical().
class QParam {
  public:
    explicit QParam(double q) : q_(q) {
        if (!(q > 0.0 && q < 1.0))
            throw std::invalid_argument("q must satisfy 0 < q < 1, got " + std::to_string(q));
    }

    static QParam classical() { return QParam(1.0, Unchecked{}); }

    double value() const noexcept { return q_; }
    bool is_classical() const noexcept { return q_ == 1.0; }

    /// q^k for any integer k.
    double pow(int k) const noexcept { return std::pow(q_, k); }

    friend bool operator==(const QParam&, const QParam&) = default;

  private:
    struct Unchecked {};
    QParam(double q, Unchecked) : q_(q) {}

    double q_;
};

/// Everything a polynomial needs to multiply: q, the coefficient prune
/// threshold and the degree guard.
struct AlgebraParams {
    QParam q;
    double prune = 1e-14;
    int max_degree = 64;

    explicit AlgebraParams(QParam q_, double prune_ = 1e-14, int max_degree_ = 64)
        : q(q_), prune(prune_), max_degree(max_degree_) {}
    explicit AlgebraParams(double q_) : q(q_) {}

    friend bool operator==(const AlgebraParams&, const AlgebraParams&) = default;
};

class DegreeOverflow : public std::overflow_error {
  public:
    using std::overflow_error::overflow_error;
};

enum class Letter : std::uint8_t { Alpha, AlphaStar, Beta, BetaStar };

inline Letter star(Letter l) noexcept {
    switch (l) {
    case Letter::Alpha: return Letter::AlphaStar;
    case Letter::AlphaStar: return Letter::Alpha;
    case Letter::Beta: return Letter::BetaStar;
    case Letter::BetaStar: return Letter::Beta;
    }
    return l;
}

inline bool is_alpha(Letter l) noexcept { return l == Letter::Alpha || l == Letter::AlphaStar; }

/// Position of a letter in the canonical order alpha-letters < beta < beta*.
inline int canonical_rank(Letter l) noexcept {
    switch (l) {
    case Letter::Alpha:
    case Letter::AlphaStar: return 0;
    case Letter::Beta: return 1;
    case Letter::BetaStar: return 2;
    }
    return 0;
}

inline const char* ascii_name(Letter l) noexcept {
    switch (l) {
    case Letter::Alpha: return "a";
    case Letter::AlphaStar: return "a'";
    case Letter::Beta: return "b";
    case Letter::BetaStar: return "b'";
    }
    return "?";
}

/// A free word times a coefficient. No relations applied.
struct Word {
    std::vector<Letter> letters;
    Complex coefficient{1.0, 0.0};

    std::size_t length() const noexcept { return letters.size(); }
};

inline Word operator*(const Word& x, const Word& y) {
    Word w{x.letters, x.coefficient * y.coefficient};
    w.letters.insert(w.letters.end(), y.letters.begin(), y.letters.end());
    return w;
}

/// Basis element alpha^k beta^n beta*^m (alpha_exp = k >= 0) or
/// alpha*^k' beta^n beta*^m (alpha_exp = -k' < 0).
struct Monomial {
    int alpha_exp = 0;
    int beta_exp = 0;
    int beta_star_exp = 0;

    int degree() const noexcept { return std::abs(alpha_exp) + beta_exp + beta_star_exp; }
    int parity() const noexcept { return degree() % 2; }
    bool is_unit() const noexcept { return alpha_exp == 0 && beta_exp == 0 && beta_star_exp == 0; }

    Word word() const {
        Word w;
        const Letter a = alpha_exp >= 0 ? Letter::Alpha : Letter::AlphaStar;
        w.letters.insert(w.letters.end(), static_cast<std::size_t>(std::abs(alpha_exp)), a);
        w.letters.insert(w.letters.end(), static_cast<std::size_t>(beta_exp), Letter::Beta);
        w.letters.insert(w.letters.end(), static_cast<std::size_t>(beta_star_exp), Letter::BetaStar);
        return w;
    }

    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

inline constexpr Monomial kUnit{0, 0, 0};
inline constexpr Monomial kAlpha{1, 0, 0};
inline constexpr Monomial kAlphaStar{-1, 0, 0};
inline constexpr Monomial kBeta{0, 1, 0};
inline constexpr Monomial kBetaStar{0, 0, 1};

/// Finite complex combination of canonical monomials, with q bound.
class Polynomial {
  public:
    using Terms = std::map<Monomial, Complex>;

    explicit Polynomial(const AlgebraParams& params) : params_(params) {}
    Polynomial(const AlgebraParams& params, Complex scalar) : params_(params) {
        add_term(kUnit, scalar);
    }
    Polynomial(const AlgebraParams& params, const Monomial& m, Complex c = 1.0) : params_(params) {
        add_term(m, c);
    }

    static Polynomial generator(const AlgebraParams& params, Letter l) {
        switch (l) {
        case Letter::Alpha: return Polynomial(params, kAlpha);
        case Letter::AlphaStar: return Polynomial(params, kAlphaStar);
        case Letter::Beta: return Polynomial(params, kBeta);
        case Letter::BetaStar: return Polynomial(params, kBetaStar);
        }
        return Polynomial(params);
    }

    const AlgebraParams& params() const noexcept { return params_; }
    const QParam& q() const noexcept { return params_.q; }
    const Terms& terms() const noexcept { return terms_; }

    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    Complex coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Complex{} : it->second;
    }

    /// Highest total degree in the support, -1 for the zero polynomial.
    int degree() const noexcept {
        int d = -1;
        for (const auto& [m, c] : terms_)
            d = std::max(d, m.degree());
        return d;
    }

    /// Accumulates c into the coefficient of m; drops it if it falls below
    /// the prune threshold.
    void add_term(const Monomial& m, Complex c) {
        if (m.degree() > params_.max_degree)
            throw DegreeOverflow("monomial degree " + std::to_string(m.degree()) +
                                 " exceeds max degree " + std::to_string(params_.max_degree));
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted)
            it->second += c;
        if (std::abs(it->second) < params_.prune)
            terms_.erase(it);
    }

    Polynomial& operator+=(const Polynomial& o) {
        check_compatible(o);
        for (const auto& [m, c] : o.terms_)
            add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        check_compatible(o);
        for (const auto& [m, c] : o.terms_)
            add_term(m, -c);
        return *this;
    }
    Polynomial& operator*=(Complex s) {
        Terms old;
        old.swap(terms_);
        for (const auto& [m, c] : old)
            add_term(m, c * s);
        return *this;
    }

    friend Polynomial operator+(Polynomial x, const Polynomial& y) { return x += y; }
    friend Polynomial operator-(Polynomial x, const Polynomial& y) { return x -= y; }
    friend Polynomial operator-(Polynomial x) { return x *= -1.0; }
    friend Polynomial operator*(Polynomial x, Complex s) { return x *= s; }
    friend Polynomial operator*(Complex s, Polynomial x) { return x *= s; }

    /// Exact coefficientwise equality (same support, bitwise equal values).
    friend bool operator==(const Polynomial& x, const Polynomial& y) {
        return x.params_ == y.params_ && x.terms_ == y.terms_;
    }

    /// Largest coefficient difference against y.
    double distance(const Polynomial& y) const {
        double d = 0.0;
        for (const auto& [m, c] : terms_)
            d = std::max(d, std::abs(c - y.coefficient(m)));
        for (const auto& [m, c] : y.terms_)
            if (!terms_.contains(m))
                d = std::max(d, std::abs(c));
        return d;
    }

    void check_compatible(const Polynomial& o) const {
        if (!(params_ == o.params_))
            throw std::invalid_argument("polynomials bound to different algebra parameters");
    }

  private:
    AlgebraParams params_;
    Terms terms_;
};

// Rewriting engine.
//
// Relations, with the adjoints of the two q-commutations:
//   a b  = q b a      =>  b a   -> q^-1 a b
//   a b* = q b* a     =>  b* a  -> q^-1 a b*
//   (a b)*  = q (b a)*   gives  b* a* = q a* b*   =>  b* a* -> q a* b*
//   (a b*)* = q (b* a)*  gives  b a*  = q a* b    =>  b a*  -> q a* b
//   a* a + b* b = 1     =>  a* a  -> 1 - b* b
//   a a* + q^2 b b* = 1 =>  a a*  -> 1 - q^2 b b*
//   b* b = b b*         =>  b* b  -> b b*
// Contractions are tried before transpositions. Termination: a contraction
// removes two alpha-letters; a transposition keeps the alpha count and removes
// exactly one inversion against the order (a, a*) < b < b*.

struct RewriteStats {
    std::size_t steps = 0;
    std::size_t contractions = 0;
    std::size_t transpositions = 0;
};

namespace detail {

using LetterString = std::vector<Letter>;

/// Index of the leftmost adjacent a a* or a* a pair, or npos.
inline std::size_t find_contraction(const LetterString& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (is_alpha(w[i]) && is_alpha(w[i + 1]) && w[i] != w[i + 1])
            return i;
    return std::string::npos;
}

inline std::size_t find_transposition(const LetterString& w) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (canonical_rank(w[i]) > canonical_rank(w[i + 1]))
            return i;
    return std::string::npos;
}

/// Reads a canonical letter string back as a monomial.
inline Monomial read_canonical(const LetterString& w) {
    Monomial m;
    for (Letter l : w) {
        switch (l) {
        case Letter::Alpha: ++m.alpha_exp; break;
        case Letter::AlphaStar: --m.alpha_exp; break;
        case Letter::Beta: ++m.beta_exp; break;
        case Letter::BetaStar: ++m.beta_star_exp; break;
        }
    }
    return m;
}

inline LetterString splice(const LetterString& w, std::size_t at, std::initializer_list<Letter> repl) {
    LetterString out;
    out.reserve(w.size() + 2);
    out.insert(out.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(at));
    out.insert(out.end(), repl.begin(), repl.end());
    out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(at) + 2, w.end());
    return out;
}

} // namespace detail

/// Reduces a free word to canonical form using only the seven rewrite rules.
inline Polynomial normalize(const Word& w, const AlgebraParams& params, RewriteStats* stats = nullptr) {
    using detail::LetterString;
    const double q = params.q.value();
    Polynomial result(params);
    if (w.coefficient == Complex{})
        return result;

    // Identical intermediate words are merged, which keeps the branching from
    // contractions polynomial in the word length.
    std::map<LetterString, Complex> pending;
    pending.emplace(w.letters, w.coefficient);
    RewriteStats local;

    auto push = [&pending](LetterString s, Complex c) {
        auto [it, inserted] = pending.try_emplace(std::move(s), c);
        if (!inserted)
            it->second += c;
    };

    while (!pending.empty()) {
        // Longest words first so that merges happen before they branch again.
        auto it = std::prev(pending.end());
        for (auto jt = pending.begin(); jt != pending.end(); ++jt)
            if (jt->first.size() > it->first.size())
                it = jt;
        LetterString s = it->first;
        const Complex c = it->second;
        pending.erase(it);
        if (c == Complex{})
            continue;

        if (auto i = detail::find_contraction(s); i != std::string::npos) {
            ++local.steps;
            ++local.contractions;
            if (s[i] == Letter::Alpha) {
                push(detail::splice(s, i, {}), c);
                push(detail::splice(s, i, {Letter::Beta, Letter::BetaStar}), -q * q * c);
            } else {
                push(detail::splice(s, i, {}), c);
                push(detail::splice(s, i, {Letter::BetaStar, Letter::Beta}), -c);
            }
            continue;
        }
        if (auto i = detail::find_transposition(s); i != std::string::npos) {
            ++local.steps;
            ++local.transpositions;
            const Letter left = s[i];
            const Letter right = s[i + 1];
            double factor = 1.0;
            if (right == Letter::Alpha)
                factor = 1.0 / q;
            else if (right == Letter::AlphaStar)
                factor = q;
            // The only remaining inversion without an alpha-letter is b* b.
            push(detail::splice(s, i, {right, left}), factor * c);
            continue;
        }
        result.add_term(detail::read_canonical(s), c);
    }
    if (stats)
        *stats = local;
    return result;
}

namespace detail {

/// prod_{i=first}^{last} (1 - q^{2 i} x) expanded in powers of x = b b*.
inline std::vector<double> contraction_factor(double q, int first, int last) {
    std::vector<double> coeffs{1.0};
    for (int i = first; i <= last; ++i) {
        const double r = std::pow(q, 2 * i);
        std::vector<double> next(coeffs.size() + 1, 0.0);
        for (std::size_t p = 0; p < coeffs.size(); ++p) {
            next[p] += coeffs[p];
            next[p + 1] -= r * coeffs[p];
        }
        coeffs = std::move(next);
    }
    return coeffs;
}

/// Canonical product of two monomials, computed from the closed forms
///   b^n b*^m a^t = q^{-t(n+m)} a^t b^n b*^m        (t signed, t < 0 means a*)
///   a^k a*^k = prod_{i=1}^{k} (1 - q^{2i} x)
///   a*^k a^k = prod_{i=0}^{k-1} (1 - q^{-2i} x)
///   x a = q^{-2} a x,  x a* = q^{2} a* x            (x = b b*)
inline void multiply_monomials(const Monomial& x, const Monomial& y, Complex c, Polynomial& out) {
    const double q = out.q().value();
    const int s = x.alpha_exp;
    const int t = y.alpha_exp;
    c *= std::pow(q, -t * (x.beta_exp + x.beta_star_exp));
    const int n = x.beta_exp + y.beta_exp;
    const int m = x.beta_star_exp + y.beta_star_exp;

    if ((s >= 0 && t >= 0) || (s <= 0 && t <= 0)) {
        out.add_term(Monomial{s + t, n, m}, c);
        return;
    }

    std::vector<double> poly;
    int alpha_out = 0;
    if (s > 0) {
        // a^s a*^u
        const int u = -t;
        const int k = std::min(s, u);
        poly = contraction_factor(q, 1, k);
        if (s > u) {
            alpha_out = s - u;  // a^{s-u} P(x), already in order
        } else {
            alpha_out = -(u - s);  // P(x) a*^{r} = a*^{r} P(q^{2r} x)
            const int r = u - s;
            for (std::size_t p = 0; p < poly.size(); ++p)
                poly[p] *= std::pow(q, 2 * r * static_cast<int>(p));
        }
    } else {
        // a*^u a^t
        const int u = -s;
        const int k = std::min(u, t);
        poly = contraction_factor(q, -(k - 1), 0);
        if (u >= t) {
            alpha_out = -(u - t);
        } else {
            alpha_out = t - u;  // R(x) a^{r} = a^{r} R(q^{-2r} x)
            const int r = t - u;
            for (std::size_t p = 0; p < poly.size(); ++p)
                poly[p] *= std::pow(q, -2 * r * static_cast<int>(p));
        }
    }
    for (std::size_t p = 0; p < poly.size(); ++p) {
        const int e = static_cast<int>(p);
        out.add_term(Monomial{alpha_out, n + e, m + e}, c * poly[p]);
    }
}

} // namespace detail

/// Algebra product of canonical polynomials.
inline Polynomial mul(const Polynomial& x, const Polynomial& y) {
    x.check_compatible(y);
    if (x.degree() + y.degree() > x.params().max_degree)
        throw DegreeOverflow("product degree " + std::to_string(x.degree() + y.degree()) +
                             " exceeds max degree " + std::to_string(x.params().max_degree));
    Polynomial out(x.params());
    for (const auto& [mx, cx] : x.terms())
        for (const auto& [my, cy] : y.terms())
            detail::multiply_monomials(mx, my, cx * cy, out);
    return out;
}

inline Polynomial operator*(const Polynomial& x, const Polynomial& y) { return mul(x, y); }

inline Polynomial power(const Polynomial& x, int e) {
    if (e < 0)
        throw std::invalid_argument("negative power of an algebra element");
    Polynomial out(x.params(), 1.0);
    for (int i = 0; i < e; ++i)
        out = mul(out, x);
    return out;
}

/// Canonical form of a free polynomial given as a list of words.
inline Polynomial normalize(const std::vector<Word>& words, const AlgebraParams& params) {
    Polynomial out(params);
    for (const auto& w : words)
        out += normalize(w, params);
    return out;
}

/// Involution. On monomials: (a^s b^n b*^m)* = b^m b*^n a^{-s} = q^{s(n+m)} a^{-s} b^m b*^n.
inline Polynomial adjoint(const Polynomial& x) {
    Polynomial out(x.params());
    const double q = x.q().value();
    for (const auto& [m, c] : x.terms()) {
        const double f = std::pow(q, m.alpha_exp * (m.beta_exp + m.beta_star_exp));
        out.add_term(Monomial{-m.alpha_exp, m.beta_star_exp, m.beta_exp}, std::conj(c) * f);
    }
    return out;
}

/// Adjoint of a free word: reversed and starred, coefficient conjugated.
inline Word adjoint(const Word& w) {
    Word out;
    out.coefficient = std::conj(w.coefficient);
    out.letters.reserve(w.letters.size());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        out.letters.push_back(star(*it));
    return out;
}

/// The Z2 action g a = -a, g b = -b.
inline Polynomial z2_act(const Polynomial& x) {
    Polynomial out(x.params());
    for (const auto& [m, c] : x.terms())
        out.add_term(m, m.parity() == 0 ? c : -c);
    return out;
}

enum class Sector { Even, Odd };

inline Polynomial z2_project(const Polynomial& x, Sector sector) {
    const int keep = sector == Sector::Even ? 0 : 1;
    Polynomial out(x.params());
    for (const auto& [m, c] : x.terms())
        if (m.parity() == keep)
            out.add_term(m, c);
    return out;
}

inline bool is_even(const Polynomial& x) {
    return std::all_of(x.terms().begin(), x.terms().end(),
                       [](const auto& t) { return t.first.parity() == 0; });
}

struct ModuleTerm {
    Polynomial even_factor;
    Letter generator;
};

class ParityError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Right-peeling of one generator from a canonical monomial: b* if m > 0,
/// else b if n > 0, else a or a*. The prefix times the generator is the
/// monomial itself, with coefficient one.
inline std::pair<Monomial, Letter> peel_generator(const Monomial& m) {
    if (m.beta_star_exp > 0)
        return {Monomial{m.alpha_exp, m.beta_exp, m.beta_star_exp - 1}, Letter::BetaStar};
    if (m.beta_exp > 0)
        return {Monomial{m.alpha_exp, m.beta_exp - 1, 0}, Letter::Beta};
    if (m.alpha_exp > 0)
        return {Monomial{m.alpha_exp - 1, 0, 0}, Letter::Alpha};
    if (m.alpha_exp < 0)
        return {Monomial{m.alpha_exp + 1, 0, 0}, Letter::AlphaStar};
    throw ParityError("the unit has even parity");
}

/// Writes an odd element as sum_i e_i g_i with e_i even and g_i one of
/// a, a*, b, b*. Pairs come out in the order a, a*, b, b*, omitting empty ones.
inline std::vector<ModuleTerm> module_decompose(const Polynomial& x) {
    std::map<Letter, Polynomial> grouped;
    for (const auto& [m, c] : x.terms()) {
        if (m.parity() == 0)
            throw ParityError("module_decompose expects odd parity; project to the odd sector first");
        auto [prefix, gen] = peel_generator(m);
        auto it = grouped.try_emplace(gen, x.params()).first;
        it->second.add_term(prefix, c);
    }
    std::vector<ModuleTerm> out;
    for (auto& [gen, factor] : grouped)
        out.push_back({std::move(factor), gen});
    return out;
}

inline Polynomial reassemble(const std::vector<ModuleTerm>& terms, const AlgebraParams& params) {
    Polynomial out(params);
    for (const auto& t : terms)
        out += mul(t.even_factor, Polynomial::generator(params, t.generator));
    return out;
}

/// All canonical monomials of total degree exactly d, in Monomial order.
inline std::vector<Monomial> monomials_of_degree(int d) {
    std::vector<Monomial> out;
    for (int s = -d; s <= d; ++s)
        for (int n = 0; n <= d - std::abs(s); ++n)
            out.push_back(Monomial{s, n, d - std::abs(s) - n});
    return out;
}

} // namespace qtriple

#endif // QTRIPLE_NCPOLY_HPP
