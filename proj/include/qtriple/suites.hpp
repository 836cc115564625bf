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

#ifndef QTRIPLE_SUITES_HPP
#define QTRIPLE_SUITES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gns.hpp"
#include "isodeform.hpp"
#include "ncpoly.hpp"
#include "random.hpp"
#include "rep.hpp"
#include "report.hpp"
#include "serialize.hpp"
#include "triple.hpp"

namespace qtriple {

class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Everything a suite run depends on. Echoed into every report.
struct RunConfig {
    double q = 0.5;
    int lmax2 = 3;
    int fock = 16;
    int zband = 8;
    int margin = 2;
    std::string theta = "1/4";
    int order = 4;
    int covering_degree = 8;
    std::uint64_t seed = 0;
    std::string format = "json";
    std::map<std::string, double> tolerances = {
        {"relations", 1e-12}, {"orthonormal", 1e-10}, {"overlap", 1e-8},   {"haar", 1e-14},
        {"unitary", 1e-12},   {"lemma", 1e-13},       {"twisted", 1e-13}, {"reconstruct", 1e-12},
        {"commutator_change", 0.05},
    };

    double tol(const std::string& name) const {
        const auto it = tolerances.find(name);
        if (it == tolerances.end())
            throw ConfigError("no tolerance named '" + name + "'");
        return it->second;
    }

    void validate() const {
        if (!(q > 0.0 && q < 1.0))
            throw ConfigError("q must lie in (0, 1), got " + std::to_string(q));
        if (lmax2 < 0)
            throw ConfigError("lmax2 must be nonnegative");
        if (order < 2)
            throw ConfigError("torus order must be >= 2");
        if (format != "json" && format != "csv")
            throw ConfigError("format must be json or csv");
        for (const auto& [name, v] : tolerances)
            if (!(v > 0.0))
                throw ConfigError("tolerance '" + name + "' must be positive");
        try {
            TruncationSpec(fock, zband, margin);
            deform::Theta::parse(theta);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }

    AlgebraParams params() const { return AlgebraParams(q); }
    TruncationSpec truncation() const { return TruncationSpec(fock, zband, margin); }
};

inline Json to_json(const RunConfig& c) {
    return {{"q", c.q},         {"lmax2", c.lmax2}, {"fock", c.fock},   {"zband", c.zband},
            {"margin", c.margin}, {"theta", c.theta}, {"n", c.order},     {"covering_degree", c.covering_degree},
            {"seed", c.seed},   {"format", c.format}, {"tolerances", c.tolerances}};
}

struct SuiteResult {
    std::string suite;
    Report report;
    Json extra = Json::object();
};

inline Json to_json(const SuiteResult& r, const RunConfig& cfg) {
    Json out = {{"suite", r.suite}, {"seed", cfg.seed}, {"config", to_json(cfg)},
                {"pass", r.report.all_pass()}, {"checks", to_json(r.report)}};
    for (const auto& [k, v] : r.extra.items())
        out[k] = v;
    return out;
}

inline SuiteResult run_relations(const RunConfig& cfg) {
    SuiteResult out{"relations", {}, {}};
    const auto t = cfg.truncation();
    const QParam q(cfg.q);
    Json table = Json::array();
    for (const auto& r : relation_residuals(t, q)) {
        out.report.add_bound(r.name, r.residual, cfg.tol("relations"), "interior residual, margin " +
                                                                          std::to_string(cfg.margin) + " + " +
                                                                          std::to_string(r.degree));
        table.push_back({{"relation", r.name}, {"degree", r.degree}, {"residual", r.residual}});
    }
    out.extra["residuals"] = table;
    return out;
}

inline SuiteResult run_gns(const RunConfig& cfg) {
    SuiteResult out{"gns", {}, {}};
    const auto params = cfg.params();
    const HalfInt lmax{cfg.lmax2};
    const GNSBasis basis = gram_schmidt_basis(lmax, params);

    out.report.add_bound("orthonormal", orthonormality_defect(basis), cfg.tol("orthonormal"),
                         std::to_string(basis.entries.size()) + " vectors");

    bool counts = true;
    Json dims = Json::array();
    for (int l2 = 0; l2 <= cfg.lmax2; ++l2) {
        const auto n = std::count_if(basis.entries.begin(), basis.entries.end(),
                                     [l2](const auto& e) { return e.first.l.twice == l2; });
        counts = counts && n == static_cast<long>((l2 + 1) * (l2 + 1));
        dims.push_back({{"l2", l2}, {"count", n}});
    }
    out.report.add("completeness", counts, "count of labels with given l is (2l+1)^2", 0.0, counts ? 0.0 : 1.0);
    out.extra["dimensions"] = dims;

    // Matrix coefficients against an independent monomial-seeded Gram-Schmidt,
    // kept to l <= 3/2 where that basis is well conditioned.
    const HalfInt small{std::min(cfg.lmax2, 3)};
    const GNSBasis mono = gram_schmidt_basis(small, params, 1e-12, GramSeed::Monomial);
    double worst = 0.0;
    for (const auto& [lab, e] : mono.entries)
        worst = std::max(worst, 1.0 - std::abs(gns_inner(t_matrix(lab, params), e)));
    out.report.add_bound("t_matrix_overlap", worst, cfg.tol("overlap"), "1 - |<t, e>| for l <= " + to_string(small));

    const TruncationSpec t(cfg.fock, cfg.zband, 0);
    const double bound = 10.0 * std::pow(cfg.q, 2 * cfg.fock);
    double diff = 0.0;
    for (int d = 0; d <= 6; ++d)
        for (const auto& m : monomials_of_degree(d)) {
            const Polynomial x(params, m);
            diff = std::max(diff, std::abs(haar_exact(x) - haar_numeric(x, t)));
        }
    out.report.add_bound("haar_exact_vs_numeric", diff, bound, "monomials of degree <= 6, bound 10 q^{2 N_F}");

    const double q2 = cfg.q * cfg.q;
    double series = 0.0;
    for (int n = 0; n <= 6; ++n) {
        double geo = 0.0;
        for (int j = 0; j < 4000; ++j) {
            const double term = std::pow(q2, j * (n + 1));
            geo += term;
            if (term < 1e-300)
                break;
        }
        const Polynomial x(params, Monomial{0, n, n});
        series = std::max(series, std::abs(haar_exact(x) - (1.0 - q2) * geo));
    }
    out.report.add_bound("haar_geometric_series", series, cfg.tol("haar"), "h((b b')^n) for n <= 6");
    return out;
}

inline SuiteResult run_parity(const RunConfig& cfg) {
    if (cfg.lmax2 > 5)
        throw ConfigError("parity suite supports lmax2 <= 5");
    SuiteResult out{"parity", {}, {}};
    const auto results = check_parity(HalfInt{cfg.lmax2}, cfg.params());
    Json labels = Json::array();
    std::size_t bad = 0;
    for (const auto& r : results) {
        labels.push_back({{"l2", r.label.l.twice}, {"j2", r.label.j.twice}, {"k2", r.label.k.twice},
                          {"parity", r.expected}, {"pass", r.pass}});
        bad += r.pass ? 0 : 1;
    }
    out.report.add("parity_of_basis", bad == 0, std::to_string(results.size()) + " labels, exact coefficientwise", 0.0,
                   static_cast<double>(bad));
    out.extra["labels"] = labels;
    return out;
}

inline SuiteResult run_covering(const RunConfig& cfg) {
    SuiteResult out{"covering", {}, {}};
    const auto params = cfg.params();
    try {
        const auto cert = certify_covering(cfg.covering_degree, params);
        out.report.add("finite_covering", true,
                       std::to_string(cert.decompositions.size()) + " odd monomials, degree <= " +
                           std::to_string(cfg.covering_degree),
                       0.0, 0.0);
        out.extra["odd_monomials"] = cert.decompositions.size();
        out.extra["even_monomials"] = cert.even_count;
    } catch (const CoveringError& e) {
        out.report.add("finite_covering", false, e.what(), 0.0, 1.0);
    }
    Rng rng(cfg.seed);
    std::size_t bad = 0;
    for (int i = 0; i < 100; ++i) {
        const Polynomial p =
            hilbert_module_product(random_polynomial(rng, params, 4), random_polynomial(rng, params, 4));
        bad += z2_act(p) == p ? 0 : 1;
    }
    out.report.add("module_product_in_base", bad == 0, "100 random pairs fixed by g", 0.0, static_cast<double>(bad));
    return out;
}

/// Relative change of ||[D, pi(x)]|| between lmax2 - 1 and lmax2.
inline double commutator_change(const Polynomial& x, int lmax2, const AlgebraParams& params, double* last = nullptr) {
    double prev = 0.0;
    double cur = 0.0;
    for (int l2 : {lmax2 - 1, lmax2}) {
        const GNSBasis basis = gram_schmidt_basis(HalfInt{l2}, params);
        const double n = operator_norm(commutator_matrix(x, basis, DiracSpec{HalfInt{l2}}).commutator);
        prev = cur;
        cur = n;
    }
    if (last)
        *last = cur;
    return std::abs(cur - prev) / cur;
}

inline SuiteResult run_triple(const RunConfig& cfg) {
    SuiteResult out{"triple", {}, {}};
    const auto params = cfg.params();
    const auto tr = assemble_unoriented_triple(HalfInt{cfg.lmax2}, params, cfg.seed);
    out.report = tr.report;
    // The degree guard leaves only l <= lmax - 1 in the commutator, so the
    // comparison needs two resolved steps on top of that.
    if (cfg.lmax2 >= 5) {
        for (const auto& [name, gen] : {std::pair{"a", kAlpha}, std::pair{"b", kBeta}}) {
            double norm = 0.0;
            const double change = commutator_change(Polynomial(params, gen), cfg.lmax2, params, &norm);
            out.report.add_bound(std::string("commutator_stable_") + name, change, cfg.tol("commutator_change"),
                                 "||[D, pi(" + std::string(name) + ")]|| = " + std::to_string(norm) +
                                     ", relative change over the last half step");
        }
    }
    out.extra["spectrum"] = to_json(tr.oriented);
    out.extra["spectrum_unoriented"] = to_json(tr.unoriented);
    return out;
}

inline SuiteResult run_deform(const RunConfig& cfg) {
    using namespace deform;
    SuiteResult out{"deform", {}, {}};
    const TorusModel model(cfg.order, Theta::parse(cfg.theta));
    if (!model.exact())
        out.report.add("exact_mode", false, "theta " + cfg.theta + " has lambda^N != 1; lemmas need the exact mode", 0.0,
                       1.0);
    const auto gens = generator_set(model);
    Json table = Json::array();
    double worst_a = 0.0;
    double worst_b = 0.0;
    for (const auto& x : gens)
        for (const auto& y : gens) {
            const double ra = verify_lemma_a(x.op, y.op, model);
            const double rb = verify_lemma_b(x.op, y.op, model);
            worst_a = std::max(worst_a, ra);
            worst_b = std::max(worst_b, rb);
            table.push_back({{"lemma", "a"}, {"x", x.name}, {"y", y.name}, {"residual", ra}});
            table.push_back({{"lemma", "b"}, {"x", x.name}, {"y", y.name}, {"residual", rb}});
        }
    out.report.add_bound("lemma_a", worst_a, cfg.tol("lemma"), std::to_string(gens.size() * gens.size()) + " pairs");
    out.report.add_bound("lemma_b", worst_b, cfg.tol("lemma"), "left and right variants");

    Rng rng(cfg.seed);
    Matrix t(model.dim(), model.dim());
    for (Eigen::Index r = 0; r < t.rows(); ++r)
        for (Eigen::Index c = 0; c < t.cols(); ++c)
            t(r, c) = random_coefficient(rng);
    const BigradedOp dt = decompose(t, model);
    out.report.add_bound("decompose_reconstruct", max_entry(dt.reconstruct(model.dim()) - t), cfg.tol("reconstruct"),
                         "random operator");
    out.report.add_bound("components_homogeneous", homogeneity_defect(dt, model), cfg.tol("reconstruct"),
                         "torus action on every component");

    Vector d(model.dim());
    for (int i = 0; i < model.dim(); ++i)
        d(i) = static_cast<double>(model.p1_of(i) + model.p2_of(i));
    // Z_N x Z_N has no nontrivial map to Z2 for odd N; fall back to the trivial grading.
    const Grading grading = cfg.order % 2 == 0 ? total_parity() : Grading([](int, int) { return 0; });
    out.extra["grading"] = cfg.order % 2 == 0 ? "total parity" : "trivial";
    Report tw = twisted_triple_check(model, d, grading, cfg.tol("twisted"));
    out.report.append(tw);
    out.extra["residuals"] = table;
    out.extra["theta"] = model.theta().str();
    return out;
}

inline SuiteResult run_suite(const std::string& name, const RunConfig& cfg) {
    cfg.validate();
    if (name == "relations")
        return run_relations(cfg);
    if (name == "gns")
        return run_gns(cfg);
    if (name == "parity")
        return run_parity(cfg);
    if (name == "covering")
        return run_covering(cfg);
    if (name == "triple")
        return run_triple(cfg);
    if (name == "deform")
        return run_deform(cfg);
    throw ConfigError("unknown suite '" + name + "'");
}

} // namespace qtriple

#endif // QTRIPLE_SUITES_HPP
