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
// Acceptance driver: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "qtriple/qtriple.hpp"

using namespace qtriple;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

Outcome relations() {
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (double q : {0.3, 0.5, 0.8})
        for (const auto& r : relation_residuals(TruncationSpec(16, 8, 2), QParam(q)))
            worst = std::max(worst, r.residual);
    const double secs = seconds_since(t0);
    return {worst <= 1e-12 && secs < 5.0, fmt("max interior residual %.3g (tol 1e-12), %.2f s (limit 5 s)", worst, secs)};
}

Outcome normal_form() {
    const auto t0 = Clock::now();
    const TruncationSpec t(16, 10, 8);
    double worst = 0.0;
    for (double q : {0.3, 0.5, 0.8}) {
        const AlgebraParams params(q);
        Rng rng(0);
        for (int i = 0; i < 200; ++i) {
            const Word w = random_word(rng, 8);
            const Matrix diff = represent(w, t, QParam(q)) - represent(normalize(w, params), t);
            worst = std::max(worst, operator_norm(compress_interior(diff, t)));
        }
    }
    const double secs = seconds_since(t0);
    return {worst <= 1e-10 && secs < 30.0, fmt("200 words at three q values, max gap %.3g (tol 1e-10), %.2f s (limit 30 s)", worst, secs)};
}

Outcome haar() {
    bool ok = true;
    double worst_ratio = 0.0;
    double worst_series = 0.0;
    for (double q : {0.3, 0.5, 0.8}) {
        const AlgebraParams params(q);
        const double q2 = q * q;
        for (int n = 0; n <= 6; ++n) {
            const double oracle = (1.0 - q2) / (1.0 - std::pow(q2, n + 1));
            const double diff = std::abs(haar_exact(Polynomial(params, Monomial{0, n, n})) - oracle);
            ok = ok && diff <= 1e-14;
            worst_series = std::max(worst_series, diff);
        }
        // At q = 0.3 the truncation bound 10 q^48 ~ 8e-25 sits far below
        // double rounding, so the comparison is only meaningful for larger q.
        if (q < 0.5)
            continue;
        const TruncationSpec t(24, 8, 0);
        const double bound = 10.0 * std::pow(q, 48);
        for (int d = 0; d <= 6; ++d)
            for (const auto& m : monomials_of_degree(d)) {
                const Polynomial x(params, m);
                const double diff = std::abs(haar_exact(x) - haar_numeric(x, t));
                ok = ok && diff <= bound;
                worst_ratio = std::max(worst_ratio, diff / bound);
            }
    }
    return {ok, fmt("q in {0.5, 0.8}: max |exact-numeric| / (10 q^48) = %.3g; geometric series gap %.3g (tol 1e-14)",
                    worst_ratio, worst_series)};
}

Outcome gns() {
    bool ok = true;
    double defect = 0.0;
    double overlap = 0.0;
    for (double q : {0.3, 0.5, 0.8}) {
        const AlgebraParams params(q);
        const GNSBasis basis = gram_schmidt_basis(HalfInt{3}, params, 1e-12, GramSeed::Monomial);
        defect = std::max(defect, orthonormality_defect(basis));
        for (int l2 = 0; l2 <= 3; ++l2) {
            const auto n = std::count_if(basis.entries.begin(), basis.entries.end(),
                                         [l2](const auto& e) { return e.first.l.twice == l2; });
            ok = ok && n == (l2 + 1) * (l2 + 1);
        }
        ok = ok && basis.entries.size() == 30;
        for (const auto& [lab, e] : basis.entries)
            overlap = std::max(overlap, 1.0 - std::abs(gns_inner(t_matrix(lab, params), e)));
    }
    ok = ok && defect <= 1e-10 && overlap <= 1e-8;
    return {ok, fmt("l <= 3/2: orthonormality defect %.3g (tol 1e-10), 30 vectors, max 1-|overlap| %.3g (tol 1e-8)",
                    defect, overlap)};
}

Outcome parity() {
    std::size_t bad = 0;
    std::size_t total = 0;
    for (double q : {0.3, 0.5, 0.8})
        for (const auto& r : check_parity(HalfInt{5}, AlgebraParams(q))) {
            ++total;
            bad += r.pass ? 0 : 1;
        }
    return {bad == 0 && total == 3 * 91, fmt("%.0f labels over three q values, %.0f mismatches", static_cast<double>(total),
                                             static_cast<double>(bad))};
}

Outcome dirac() {
    const HalfInt lmax{8};
    const DiracSpec spec{lmax};
    const auto labels = labels_up_to(lmax);
    bool table = true;
    for (const auto& lab : labels) {
        const int expected = lab.j == lab.l ? -(lab.l.twice + 1) : lab.l.twice + 1;
        table = table && spec.eigenvalue(lab) == expected;
    }
    bool odd = true;
    for (const auto& line : spectrum(integer_labels(labels), spec))
        odd = odd && std::abs(line.eig) % 2 == 1;
    const Eigen::MatrixXd d = dirac_matrix(labels, spec);
    const Eigen::MatrixXd g = parity_matrix(labels, spec);
    const bool commute = (g * d - d * g).cwiseAbs().maxCoeff() == 0.0;
    return {table && odd && commute, std::string("l <= 4: table ") + (table ? "ok" : "mismatch") + ", restricted spectrum " +
                                         (odd ? "odd" : "not odd") + ", gD = Dg " + (commute ? "exact" : "fails")};
}

Outcome covering() {
    const AlgebraParams params(0.5);
    std::size_t odd = 0;
    bool cert_ok = true;
    try {
        odd = certify_covering(8, params).decompositions.size();
    } catch (const CoveringError&) {
        cert_ok = false;
    }
    Rng rng(0);
    int bad = 0;
    for (int i = 0; i < 100; ++i) {
        const Polynomial p = hilbert_module_product(random_polynomial(rng, params, 4), random_polynomial(rng, params, 4));
        bad += z2_act(p) == p ? 0 : 1;
    }
    return {cert_ok && bad == 0, fmt("%.0f odd monomials of degree <= 8 reassembled, %.0f of 100 module products not fixed",
                                     static_cast<double>(odd), bad)};
}

Outcome summability() {
    const auto s4 = summability_scan(HalfInt{40}, 4.0);
    bool ok = true;
    double worst_ratio = 0.0;
    for (std::size_t i = 2; i < s4.size(); ++i) {
        const double inc = s4[i].second - s4[i - 1].second;
        const double prev = s4[i - 1].second - s4[i - 2].second;
        ok = ok && inc < prev;
        // Ratio test over l in (3, 9].
        if (s4[i].first.twice > 6 && s4[i].first.twice <= 18) {
            worst_ratio = std::max(worst_ratio, inc / prev);
        }
    }
    ok = ok && worst_ratio < 0.9;
    const auto s3 = summability_scan(HalfInt{40}, 3.0);
    double lo = 1e300, hi = 0.0;
    for (std::size_t i = 1; i < s3.size(); ++i) {
        const int l2 = s3[i].first.twice;
        if (l2 < 10 || l2 > 40)
            continue;
        const double c = (s3[i].second - s3[i - 1].second) * (l2 + 1);
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    const bool flat = hi <= 1.1 * lo;
    return {ok && flat, fmt("s=4 monotone, max ratio %.4f on l in (3, 9] (limit 0.9); s=3 inc*(2l+1) in [%.6f, %.6f]",
                            worst_ratio, lo, hi)};
}

Outcome lemmas() {
    using namespace deform;
    double worst = 0.0;
    bool theta_zero = true;
    int pairs = 0;
    for (int n : {2, 3, 4, 6, 12}) {
        for (int p = 0; p < n; ++p) {
            const TorusModel m(n, Theta::from_rational(p, n));
            const auto gens = generator_set(m);
            for (const auto& x : gens)
                for (const auto& y : gens) {
                    worst = std::max({worst, verify_lemma_a(x.op, y.op, m), verify_lemma_b(x.op, y.op, m)});
                    ++pairs;
                }
        }
        const TorusModel zero(n, Theta::from_rational(0, 1));
        for (const auto& x : generator_set(zero)) {
            const Matrix a = x.op.reconstruct(zero.dim());
            theta_zero = theta_zero && max_entry(left_twist(x.op, zero) - a) == 0.0 &&
                         max_entry(right_twist(x.op, zero) - a) == 0.0;
        }
    }
    return {worst <= 1e-13 && theta_zero,
            fmt("%.0f generator pairs, max residual %.3g (tol 1e-13), theta = 0 twists exact: ", pairs, worst) +
                (theta_zero ? "yes" : "no")};
}

Outcome twisted() {
    using namespace deform;
    const TorusModel m(4, Theta::from_rational(1, 4));
    Vector d(m.dim());
    for (int i = 0; i < m.dim(); ++i)
        d(i) = static_cast<double>(m.p1_of(i) + m.p2_of(i));
    const Report r = twisted_triple_check(m, d, total_parity(), 1e-13);
    std::string detail = "N = 4, theta = 1/4:";
    for (const auto& c : r.checks)
        detail += " " + c.name + (c.pass ? " ok" : " FAIL");
    return {r.all_pass(), detail};
}

Outcome commutator() {
    const AlgebraParams params(0.5);
    std::vector<double> norms;
    for (int l2 : {3, 4, 5, 6}) {
        const GNSBasis basis = gram_schmidt_basis(HalfInt{l2}, params);
        norms.push_back(operator_norm(commutator_matrix(Polynomial(params, kAlpha), basis, DiracSpec{HalfInt{l2}}).commutator));
    }
    const double change = std::abs(norms[3] - norms[2]) / norms[3];
    return {change < 0.05, fmt("q = 0.5, norms %.5f -> %.5f, last step change %.3g (limit 0.05)", norms[2], norms[3], change)};
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"relation residuals", relations},
        {"normal form vs representation", normal_form},
        {"Haar closed form", haar},
        {"GNS orthonormal basis", gns},
        {"parity of basis vectors", parity},
        {"Dirac table and restriction", dirac},
        {"covering certification", covering},
        {"summability trend", summability},
        {"twist lemmas", lemmas},
        {"twisted triple on the torus model", twisted},
        {"commutator norm settles", commutator},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
