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

#ifndef QTRIPLE_ISODEFORM_HPP
#define QTRIPLE_ISODEFORM_HPP

#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "report.hpp"

namespace qtriple::deform {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Deformation angle, either an exact rational num/den or a float.
struct Theta {
    long num = 0;
    long den = 1;
    double value = 0.0;
    bool rational = true;

    static Theta from_rational(long num, long den) {
        if (den <= 0)
            throw std::invalid_argument("theta denominator must be positive");
        const long g = std::gcd(num, den);
        return {num / g, den / g, static_cast<double>(num) / static_cast<double>(den), true};
    }
    static Theta from_double(double v) { return {0, 1, v, false}; }

    /// Accepts "p/N", an integer, or a decimal.
    static Theta parse(const std::string& text) {
        const auto slash = text.find('/');
        try {
            std::size_t used = 0;
            if (slash != std::string::npos) {
                const long p = std::stol(text.substr(0, slash), &used);
                if (used != slash)
                    throw std::invalid_argument("bad numerator");
                const std::string rest = text.substr(slash + 1);
                const long n = std::stol(rest, &used);
                if (used != rest.size())
                    throw std::invalid_argument("bad denominator");
                return from_rational(p, n);
            }
            if (text.find_first_of(".eE") == std::string::npos) {
                const long p = std::stol(text, &used);
                if (used != text.size())
                    throw std::invalid_argument("bad integer");
                return from_rational(p, 1);
            }
            const double v = std::stod(text, &used);
            if (used != text.size())
                throw std::invalid_argument("bad number");
            return from_double(v);
        } catch (const std::logic_error&) {
            throw std::invalid_argument("cannot parse theta '" + text + "'");
        }
    }

    std::string str() const { return rational ? std::to_string(num) + "/" + std::to_string(den) : std::to_string(value); }
};

inline long mod(long a, long n) {
    const long r = a % n;
    return r < 0 ? r + n : r;
}

/// Finite torus model on C^N (x) C^N: p1 = diag(0..N-1) (x) 1, p2 = 1 (x) diag(0..N-1),
/// basis index a*N + b carries (p1, p2) = (a, b). The torus acts by
/// U(s) = exp(i(s1 p1 + s2 p2)); bidegrees are read modulo N.
class TorusModel {
  public:
    TorusModel(int order, Theta theta) : n_(order), theta_(theta) {
        if (order < 2)
            throw std::invalid_argument("torus model needs N >= 2");
        if (theta_.rational) {
            lambda_table_.resize(static_cast<std::size_t>(theta_.den));
            for (long e = 0; e < theta_.den; ++e)
                lambda_table_[static_cast<std::size_t>(e)] = root_of_unity(e, theta_.den);
        }
        omega_.resize(static_cast<std::size_t>(n_));
        for (int e = 0; e < n_; ++e)
            omega_[static_cast<std::size_t>(e)] = root_of_unity(e, n_);
    }

    int order() const noexcept { return n_; }
    int dim() const noexcept { return n_ * n_; }
    const Theta& theta() const noexcept { return theta_; }

    /// Exact mode: theta rational with lambda^N = 1, so bidegrees mod N are
    /// consistent with every lambda power.
    bool exact() const noexcept { return theta_.rational && (theta_.num * n_) % theta_.den == 0; }

    Complex lambda() const { return lambda_pow(1); }

    /// lambda^k. In rational mode the exponent is reduced before exponentiating.
    Complex lambda_pow(long k) const {
        if (theta_.rational)
            return lambda_table_[static_cast<std::size_t>(mod(theta_.num * k, theta_.den))];
        return std::polar(1.0, 2.0 * std::numbers::pi * theta_.value * static_cast<double>(k));
    }

    /// exp(2 pi i e / N).
    Complex omega(long e) const { return omega_[static_cast<std::size_t>(mod(e, n_))]; }

    int p1_of(int index) const noexcept { return index / n_; }
    int p2_of(int index) const noexcept { return index % n_; }
    int index(int a, int b) const noexcept { return static_cast<int>(mod(a, n_)) * n_ + static_cast<int>(mod(b, n_)); }

    Eigen::VectorXd p1() const { return diag_of([](int a, int) { return a; }); }
    Eigen::VectorXd p2() const { return diag_of([](int, int b) { return b; }); }

    /// Diagonal of lambda^{n p_which}, which = 1 or 2.
    Vector twist_diagonal(int which, long n) const {
        Vector d(dim());
        for (int i = 0; i < dim(); ++i)
            d(i) = lambda_pow(n * (which == 1 ? p1_of(i) : p2_of(i)));
        return d;
    }

    /// Diagonal of U(s) at the grid point s = 2 pi (a, b) / N.
    Vector grid_phase(int a, int b) const {
        Vector d(dim());
        for (int i = 0; i < dim(); ++i)
            d(i) = omega_[static_cast<std::size_t>(mod(static_cast<long>(a) * p1_of(i) + static_cast<long>(b) * p2_of(i), n_))];
        return d;
    }

    /// Diagonal of U(s) for arbitrary s.
    Vector phase(double s1, double s2) const {
        Vector d(dim());
        for (int i = 0; i < dim(); ++i)
            d(i) = std::polar(1.0, s1 * p1_of(i) + s2 * p2_of(i));
        return d;
    }

    /// U(s) T U(s)^-1 for a diagonal U given by its phases.
    static Matrix conjugate(const Vector& u, const Matrix& t) {
        Matrix out = t;
        for (Eigen::Index r = 0; r < t.rows(); ++r)
            for (Eigen::Index c = 0; c < t.cols(); ++c)
                out(r, c) *= u(r) * std::conj(u(c));
        return out;
    }

    Matrix act_grid(int a, int b, const Matrix& t) const { return conjugate(grid_phase(a, b), t); }

    Matrix identity() const { return Matrix::Identity(dim(), dim()); }
    /// e_{a,b} -> e_{a+1,b}: bidegree (1, 0).
    Matrix shift1() const { return shift(1, 0); }
    /// e_{a,b} -> e_{a,b+1}: bidegree (0, 1).
    Matrix shift2() const { return shift(0, 1); }
    /// diag(omega^{p1}): bidegree (0, 0).
    Matrix clock1() const { return clock(1, 0); }
    Matrix clock2() const { return clock(0, 1); }

    Matrix shift(int da, int db) const {
        Matrix m = Matrix::Zero(dim(), dim());
        for (int i = 0; i < dim(); ++i)
            m(index(p1_of(i) + da, p2_of(i) + db), i) = 1.0;
        return m;
    }
    Matrix clock(int ea, int eb) const {
        Matrix m = Matrix::Zero(dim(), dim());
        for (int i = 0; i < dim(); ++i)
            m(i, i) = omega_[static_cast<std::size_t>(mod(static_cast<long>(ea) * p1_of(i) + static_cast<long>(eb) * p2_of(i), n_))];
        return m;
    }

  private:
    template <class F>
    Eigen::VectorXd diag_of(F f) const {
        Eigen::VectorXd d(dim());
        for (int i = 0; i < dim(); ++i)
            d(i) = f(p1_of(i), p2_of(i));
        return d;
    }

    static Complex root_of_unity(long e, long n) {
        // Quarter turns exactly, to keep small-order cases bit-exact.
        if ((4 * e) % n == 0) {
            switch (mod(4 * e / n, 4)) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
            }
        }
        return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(n));
    }

    int n_;
    Theta theta_;
    std::vector<Complex> lambda_table_;
    std::vector<Complex> omega_;
};

inline TorusModel build_model(int n, Theta theta) { return TorusModel(n, theta); }

using Bidegree = std::pair<int, int>;

/// Sum of homogeneous components keyed by bidegree mod N.
class BigradedOp {
  public:
    explicit BigradedOp(int order) : n_(order) {}

    static BigradedOp homogeneous(int order, Bidegree deg, Matrix m) {
        BigradedOp op(order);
        op.add(deg, std::move(m));
        return op;
    }

    int order() const noexcept { return n_; }
    const std::map<Bidegree, Matrix>& components() const noexcept { return components_; }

    void add(Bidegree deg, const Matrix& m) {
        deg = {static_cast<int>(mod(deg.first, n_)), static_cast<int>(mod(deg.second, n_))};
        auto it = components_.find(deg);
        if (it == components_.end())
            components_.emplace(deg, m);
        else
            it->second += m;
    }

    bool is_homogeneous() const noexcept { return components_.size() <= 1; }

    Bidegree bidegree() const {
        if (components_.size() != 1)
            throw std::logic_error("bidegree of a non-homogeneous operator");
        return components_.begin()->first;
    }

    Matrix reconstruct(int dim) const {
        Matrix out = Matrix::Zero(dim, dim);
        for (const auto& [d, m] : components_)
            out += m;
        return out;
    }

    BigradedOp& operator+=(const BigradedOp& o) {
        for (const auto& [d, m] : o.components_)
            add(d, m);
        return *this;
    }
    BigradedOp operator*(Complex s) const {
        BigradedOp out(n_);
        for (const auto& [d, m] : components_)
            out.add(d, m * s);
        return out;
    }

  private:
    int n_;
    std::map<Bidegree, Matrix> components_;
};

/// Homogeneous decomposition of T. An entry (r, c) picks up the phase
/// exp(i s.(p(r) - p(c))) under the torus action, so the Fourier component
/// at (n1, n2) is the set of entries with p(r) - p(c) = (n1, n2) mod N.
inline BigradedOp decompose(const Matrix& t, const TorusModel& model) {
    BigradedOp op(model.order());
    std::map<Bidegree, Matrix> parts;
    for (Eigen::Index r = 0; r < t.rows(); ++r) {
        for (Eigen::Index c = 0; c < t.cols(); ++c) {
            if (t(r, c) == Complex{})
                continue;
            const int ri = static_cast<int>(r);
            const int ci = static_cast<int>(c);
            const Bidegree d{static_cast<int>(mod(model.p1_of(ri) - model.p1_of(ci), model.order())),
                             static_cast<int>(mod(model.p2_of(ri) - model.p2_of(ci), model.order()))};
            auto it = parts.try_emplace(d, Matrix::Zero(t.rows(), t.cols())).first;
            it->second(r, c) = t(r, c);
        }
    }
    for (auto& [d, m] : parts)
        op.add(d, m);
    return op;
}

/// Checks U(s) C U(s)^-1 = exp(i s.n) C for every component at all N^2
/// grid points; returns the largest deviation.
inline double homogeneity_defect(const BigradedOp& op, const TorusModel& model) {
    double worst = 0.0;
    const int n = model.order();
    for (const auto& [deg, m] : op.components()) {
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                const Matrix lhs = model.act_grid(a, b, m);
                const long e = static_cast<long>(a) * deg.first + static_cast<long>(b) * deg.second;
                worst = std::max(worst, (lhs - model.omega(e) * m).cwiseAbs().maxCoeff());
            }
        }
    }
    return worst;
}

namespace detail {

/// Matrix product that goes through sparse storage when both factors are
/// mostly zero. Shift and clock words have one entry per column, and the
/// exhaustive scans at N = 12 would otherwise be dominated by dense products.
inline Matrix product(const Matrix& a, const Matrix& b) {
    const auto sparse_enough = [](const Matrix& m) {
        return m.size() > 256 && (m.array() != Complex{}).count() * 8 < m.size();
    };
    if (!sparse_enough(a) || !sparse_enough(b))
        return a * b;
    const Eigen::SparseMatrix<Complex> sa = a.sparseView();
    const Eigen::SparseMatrix<Complex> sb = b.sparseView();
    return Matrix(sa * sb);
}

} // namespace detail

/// l(T) = sum T_{n1,n2} lambda^{n2 p1}.
inline Matrix left_twist(const BigradedOp& t, const TorusModel& model) {
    Matrix out = Matrix::Zero(model.dim(), model.dim());
    for (const auto& [d, m] : t.components())
        out += m * model.twist_diagonal(1, d.second).asDiagonal();
    return out;
}

/// r(T) = sum T_{n1,n2} lambda^{n1 p2}.
inline Matrix right_twist(const BigradedOp& t, const TorusModel& model) {
    Matrix out = Matrix::Zero(model.dim(), model.dim());
    for (const auto& [d, m] : t.components())
        out += m * model.twist_diagonal(2, d.first).asDiagonal();
    return out;
}

/// x * y = lambda^{n1' n2} x y on homogeneous pieces, extended bilinearly.
inline BigradedOp star_product(const BigradedOp& x, const BigradedOp& y, const TorusModel& model) {
    BigradedOp out(model.order());
    for (const auto& [dx, mx] : x.components())
        for (const auto& [dy, my] : y.components())
            out.add({dx.first + dy.first, dx.second + dy.second},
                    model.lambda_pow(static_cast<long>(dy.first) * dx.second) * detail::product(mx, my));
    return out;
}

/// x *_r y = lambda^{n1 n2'} x y.
inline BigradedOp right_star_product(const BigradedOp& x, const BigradedOp& y, const TorusModel& model) {
    BigradedOp out(model.order());
    for (const auto& [dx, mx] : x.components())
        for (const auto& [dy, my] : y.components())
            out.add({dx.first + dy.first, dx.second + dy.second},
                    model.lambda_pow(static_cast<long>(dx.first) * dy.second) * detail::product(mx, my));
    return out;
}

inline double max_entry(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

/// Residual of l(x) r(y) - r(y) l(x) = (xy - yx) lambda^{n1' n2} lambda^{n2 p1 + n1' p2}.
inline double verify_lemma_a(const BigradedOp& x, const BigradedOp& y, const TorusModel& model) {
    if (!x.is_homogeneous() || !y.is_homogeneous())
        throw std::invalid_argument("lemma a needs homogeneous operators");
    const int dim = model.dim();
    if (x.components().empty() || y.components().empty())
        return 0.0;
    const auto [n1, n2] = x.bidegree();
    const auto [m1, m2] = y.bidegree();
    const Matrix lx = left_twist(x, model);
    const Matrix ry = right_twist(y, model);
    const Matrix lhs = detail::product(lx, ry) - detail::product(ry, lx);
    const Matrix xm = x.reconstruct(dim);
    const Matrix ym = y.reconstruct(dim);
    Vector diag(dim);
    for (int i = 0; i < dim; ++i)
        diag(i) = model.lambda_pow(static_cast<long>(n2) * model.p1_of(i) + static_cast<long>(m1) * model.p2_of(i));
    const Matrix rhs = model.lambda_pow(static_cast<long>(m1) * n2) * (detail::product(xm, ym) - detail::product(ym, xm)) * diag.asDiagonal();
    return max_entry(lhs - rhs);
}

/// Residual of l(x) l(y) = l(x * y) together with r(x) r(y) = r(x *_r y).
/// Bilinear, so it also applies to non-homogeneous operators.
inline double verify_lemma_b(const BigradedOp& x, const BigradedOp& y, const TorusModel& model) {
    const double left = max_entry(detail::product(left_twist(x, model), left_twist(y, model)) -
                                  left_twist(star_product(x, y, model), model));
    const double right =
        max_entry(detail::product(right_twist(x, model), right_twist(y, model)) -
                  right_twist(right_star_product(x, y, model), model));
    return std::max(left, right);
}

/// A Z2-valued function on bidegrees.
using Grading = std::function<int(int, int)>;

inline Grading total_parity() {
    return [](int n1, int n2) { return static_cast<int>(mod(static_cast<long>(n1) + n2, 2)); };
}

class GradingError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Throws unless g is a homomorphism Z_N x Z_N -> Z2.
inline void require_homomorphic(const Grading& g, int n) {
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    const int lhs = static_cast<int>(mod(g(static_cast<int>(mod(a + c, n)), static_cast<int>(mod(b + d, n))), 2));
                    const int rhs = static_cast<int>(mod(g(a, b) + g(c, d), 2));
                    if (lhs != rhs)
                        throw GradingError("grading is not a homomorphism on Z_" + std::to_string(n) + " x Z_" +
                                           std::to_string(n));
                }
}

/// Keeps the components of even grading.
inline BigradedOp z2_twist_project(const BigradedOp& t, const Grading& g, const TorusModel& model) {
    require_homomorphic(g, model.order());
    BigradedOp out(model.order());
    for (const auto& [d, m] : t.components())
        if (mod(g(d.first, d.second), 2) == 0)
            out.add(d, m);
    return out;
}

/// The operator implementing a homomorphic grading on the Hilbert space:
/// (-1)^{g(1,0) p1 + g(0,1) p2}. Conjugation by it multiplies a bidegree-n
/// operator by (-1)^{g(n)}.
inline Eigen::VectorXd grading_operator(const Grading& g, const TorusModel& model) {
    require_homomorphic(g, model.order());
    const int g1 = static_cast<int>(mod(g(1, 0), 2));
    const int g2 = static_cast<int>(mod(g(0, 1), 2));
    Eigen::VectorXd d(model.dim());
    for (int i = 0; i < model.dim(); ++i)
        d(i) = ((g1 * model.p1_of(i) + g2 * model.p2_of(i)) % 2 == 0) ? 1.0 : -1.0;
    return d;
}

struct NamedOp {
    std::string name;
    BigradedOp op;
};

/// Homogeneous generator set used by the exhaustive scans: identity, both
/// shifts and their inverses, both clocks, and a few mixed products.
inline std::vector<NamedOp> generator_set(const TorusModel& model) {
    const int n = model.order();
    auto h = [&](std::string name, Bidegree d, Matrix m) { return NamedOp{std::move(name), BigradedOp::homogeneous(n, d, std::move(m))}; };
    const Matrix u1 = model.shift1();
    const Matrix u2 = model.shift2();
    const Matrix z1 = model.clock1();
    const Matrix z2 = model.clock2();
    return {
        h("I", {0, 0}, model.identity()),
        h("U1", {1, 0}, u1),
        h("U2", {0, 1}, u2),
        h("U1^-1", {-1, 0}, u1.adjoint()),
        h("U2^-1", {0, -1}, u2.adjoint()),
        h("Z1", {0, 0}, z1),
        h("Z2", {0, 0}, z2),
        h("U1U2", {1, 1}, u1 * u2),
        h("U1Z2", {1, 0}, u1 * z2),
        h("Z1U2", {0, 1}, z1 * u2),
        h("U1^2U2^-1", {2, -1}, u1 * u1 * u2.adjoint()),
    };
}

/// Twisted-triple checks on the torus model for a diagonal, torus-invariant D.
inline Report twisted_triple_check(const TorusModel& model, const Vector& dirac_diag, const Grading& grading,
                                   double tol = 1e-13) {
    Report rep;
    const int dim = model.dim();
    const Matrix d = dirac_diag.asDiagonal();

    double invariance = 0.0;
    for (int a = 0; a < model.order(); ++a)
        for (int b = 0; b < model.order(); ++b)
            invariance = std::max(invariance, max_entry(model.act_grid(a, b, d) - d));
    rep.add_bound("dirac_torus_invariant", invariance, tol, "U(s) D U(s)^-1 = D on the N x N grid");

    const auto gens = generator_set(model);
    double twist = 0.0;
    for (const auto& g : gens) {
        const Matrix a = g.op.reconstruct(dim);
        const Matrix lhs = d * left_twist(g.op, model) - left_twist(g.op, model) * d;
        const Matrix rhs = left_twist(decompose(d * a - a * d, model), model);
        twist = std::max(twist, max_entry(lhs - rhs));
    }
    rep.add_bound("dirac_commutes_with_twist", twist, tol, "[D, l(a)] = l([D, a]) over the generator set");

    Eigen::VectorXd gdiag;
    try {
        gdiag = grading_operator(grading, model);
    } catch (const GradingError& e) {
        rep.add("grading_homomorphic", false, e.what(), 0.0, 1.0);
        return rep;
    }
    const Matrix gop = gdiag.cast<Complex>().asDiagonal();
    rep.add_bound("dirac_g_equivariant", max_entry(gop * d - d * gop), tol, "g D = D g");

    const Matrix even_proj = (Matrix::Identity(dim, dim) + gop) * 0.5;
    double leak = 0.0;
    std::vector<BigradedOp> projected;
    for (const auto& g : gens) {
        BigradedOp e = z2_twist_project(g.op, grading, model);
        const Matrix la = left_twist(e, model);
        leak = std::max(leak, max_entry((Matrix::Identity(dim, dim) - even_proj) * la * even_proj));
        projected.push_back(std::move(e));
    }
    rep.add_bound("even_algebra_preserves_even_space", leak, tol, "l(a) for even a maps g-fixed vectors to g-fixed vectors");

    bool closed = true;
    for (const auto& x : projected)
        for (const auto& y : projected) {
            const BigradedOp xy = star_product(x, y, model);
            for (const auto& [deg, m] : xy.components())
                closed = closed && (mod(grading(deg.first, deg.second), 2) == 0 || max_entry(m) == 0.0);
        }
    rep.add("even_star_closure", closed, "star products of even-projected generators stay even", 0.0, closed ? 0.0 : 1.0);
    return rep;
}

} // namespace qtriple::deform

#endif // QTRIPLE_ISODEFORM_HPP
