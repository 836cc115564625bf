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

// qtriple: command-line front end. Exit codes: 0 pass, 1 check failure,
// 2 usage or configuration error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "qtriple/qtriple.hpp"

namespace {

using namespace qtriple;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

void setup_logging() {
    auto logger = spdlog::stderr_logger_mt("qtriple");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    spdlog::set_level(spdlog::level::warn);
    if (const char* env = std::getenv("QTRIPLE_LOG"))
        spdlog::set_level(spdlog::level::from_str(env));
}

/// All output goes through here, to --out or stdout.
class Writer {
  public:
    explicit Writer(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_)
                throw ConfigError("cannot open output file '" + path + "'");
        }
    }
    std::ostream& out() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

  private:
    std::ofstream file_;
};

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::string charges_text(const Polynomial& x) {
    std::set<std::pair<int, int>> seen;
    for (const auto& [m, c] : x.terms()) {
        const Charge ch = charge_of(m);
        seen.emplace(ch.c1, ch.c2);
    }
    std::string out;
    for (const auto& [a, b] : seen)
        out += (out.empty() ? "" : " ") + std::string("(") + std::to_string(a) + "," + std::to_string(b) + ")";
    return out.empty() ? "none" : out;
}

std::string parity_text(const Polynomial& x) {
    if (x.is_zero())
        return "even";
    const bool even = z2_project(x, Sector::Odd).is_zero();
    const bool odd = z2_project(x, Sector::Even).is_zero();
    return even ? "even" : odd ? "odd" : "mixed";
}

int cmd_normalize(const std::string& expr, const RunConfig& cfg, Writer& w, const std::string& matrix_out,
                  const std::string& matrix_format) {
    const auto params = cfg.params();
    const Polynomial x = parse(expr, params);
    spdlog::debug("parsed '{}' into {} terms", expr, x.terms().size());
    if (cfg.format == "json") {
        w.out() << Json{{"input", expr},          {"normal_form", to_string(x)}, {"degree", x.degree()},
                        {"parity", parity_text(x)}, {"charges", charges_text(x)}, {"poly", to_json(x)},
                        {"config", to_json(cfg)}}
                       .dump(2)
                << "\n";
    } else {
        w.out() << to_string(x) << "\n"
                << "degree: " << x.degree() << "\n"
                << "parity: " << parity_text(x) << "\n"
                << "charges: " << charges_text(x) << "\n";
    }
    if (!matrix_out.empty()) {
        const Matrix m = represent(x, cfg.truncation());
        if (matrix_format == "bin") {
            std::ofstream f(matrix_out, std::ios::binary);
            if (!f)
                throw ConfigError("cannot open matrix output '" + matrix_out + "'");
            write_matrix_binary(f, m);
        } else {
            std::ofstream f(matrix_out);
            if (!f)
                throw ConfigError("cannot open matrix output '" + matrix_out + "'");
            f << matrix_to_json(m).dump() << "\n";
        }
    }
    return kPass;
}

int cmd_haar(const std::string& expr, const RunConfig& cfg, Writer& w) {
    const Polynomial x = parse(expr, cfg.params());
    const Complex exact = haar_exact(x);
    const Complex numeric = haar_numeric(x, cfg.truncation());
    if (cfg.format == "json") {
        w.out() << Json{{"input", expr},
                        {"exact", {{"re", exact.real()}, {"im", exact.imag()}}},
                        {"numeric", {{"re", numeric.real()}, {"im", numeric.imag()}}},
                        {"difference", std::abs(exact - numeric)},
                        {"config", to_json(cfg)}}
                       .dump(2)
                << "\n";
    } else {
        w.out() << "quantity,re,im\n"
                << "exact," << exact.real() << "," << exact.imag() << "\n"
                << "numeric," << numeric.real() << "," << numeric.imag() << "\n";
    }
    return kPass;
}

/// Per-sector Gram matrix of the monomial filtration.
int cmd_gram(const RunConfig& cfg, Writer& w) {
    const auto params = cfg.params();
    const int reach = cfg.lmax2;
    Json rows = Json::array();
    for (int c1 = -reach; c1 <= reach; ++c1)
        for (int c2 = -(reach - std::abs(c1)); c2 <= reach - std::abs(c1); ++c2) {
            const Charge sector{c1, c2};
            const int depths = (reach - sector_min_l2(sector)) / 2 + 1;
            Eigen::MatrixXd gram(depths, depths);
            for (int a = 0; a < depths; ++a)
                for (int b = 0; b < depths; ++b)
                    gram(a, b) = monomial_pairing(sector_monomial(sector, a), sector_monomial(sector, b), params.q);
            const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram).eigenvalues();
            rows.push_back({{"c1", c1}, {"c2", c2}, {"dim", depths}, {"min_eig", ev.minCoeff()},
                            {"max_eig", ev.maxCoeff()}, {"condition", ev.maxCoeff() / ev.minCoeff()}});
        }
    bool positive = true;
    for (const auto& r : rows)
        positive = positive && r["min_eig"].get<double>() > 0.0;
    if (cfg.format == "json") {
        w.out() << Json{{"config", to_json(cfg)}, {"positive_definite", positive}, {"sectors", rows}}.dump(2) << "\n";
    } else {
        w.out() << "c1,c2,dim,min_eig,max_eig,condition\n";
        for (const auto& r : rows)
            w.out() << r["c1"] << "," << r["c2"] << "," << r["dim"] << "," << r["min_eig"].get<double>() << ","
                    << r["max_eig"].get<double>() << "," << r["condition"].get<double>() << "\n";
    }
    return positive ? kPass : kFail;
}

struct SpectrumRow {
    int l2;
    std::string j_class;
    int eig;
    int mult;
    std::string sector;
};

std::vector<SpectrumRow> spectrum_rows(int lmax2) {
    const DiracSpec spec{HalfInt{lmax2}};
    // (sector, l2, class) -> (eig, mult), counted over the label list.
    std::map<std::tuple<int, int, std::string>, std::pair<int, int>> counts;
    for (const auto& lab : labels_up_to(HalfInt{lmax2})) {
        const std::string cls = lab.j == lab.l ? "j=l" : "j<l";
        for (int sector = 0; sector < 2; ++sector) {
            if (sector == 1 && !lab.l.is_integer())
                continue;
            auto& slot = counts[{sector, lab.l.twice, cls}];
            slot.first = spec.eigenvalue(lab);
            ++slot.second;
        }
    }
    std::vector<SpectrumRow> rows;
    for (const auto& [key, v] : counts)
        rows.push_back({std::get<1>(key), std::get<2>(key), v.first, v.second,
                        std::get<0>(key) == 0 ? "oriented" : "unoriented"});
    return rows;
}

int cmd_spectrum(const RunConfig& cfg, Writer& w) {
    const auto rows = spectrum_rows(cfg.lmax2);
    const auto labels = labels_up_to(HalfInt{cfg.lmax2});
    const DiracSpec spec{HalfInt{cfg.lmax2}};
    if (cfg.format == "csv") {
        w.out() << "l2,j2-class,eig,mult,sector\n";
        for (const auto& r : rows)
            w.out() << r.l2 << "," << r.j_class << "," << r.eig << "," << r.mult << "," << r.sector << "\n";
        return kPass;
    }
    Json table = Json::array();
    for (const auto& r : rows)
        table.push_back({{"l2", r.l2}, {"j2-class", r.j_class}, {"eig", r.eig}, {"mult", r.mult}, {"sector", r.sector}});
    w.out() << Json{{"config", to_json(cfg)},
                    {"rows", table},
                    {"oriented", to_json(spectrum(labels, spec))},
                    {"unoriented", to_json(spectrum(integer_labels(labels), spec))}}
                   .dump(2)
            << "\n";
    return kPass;
}

int cmd_verify(const std::string& suite, const RunConfig& cfg, Writer& w) {
    spdlog::info("running suite {} (seed {})", suite, cfg.seed);
    const SuiteResult r = run_suite(suite, cfg);
    for (const auto& c : r.report.checks)
        if (!c.pass)
            spdlog::warn("check {} failed: value {} tolerance {} ({})", c.name, c.value, c.tolerance, c.detail);
    if (cfg.format == "csv") {
        w.out() << "# suite " << suite << ", seed " << cfg.seed << ", config " << to_json(cfg).dump() << "\n";
        w.out() << "name,pass,value,tolerance,detail\n";
        for (const auto& c : r.report.checks)
            w.out() << c.name << "," << (c.pass ? "true" : "false") << "," << c.value << "," << c.tolerance << ","
                    << csv_escape(c.detail) << "\n";
    } else {
        w.out() << to_json(r, cfg).dump(2) << "\n";
    }
    return r.report.all_pass() ? kPass : kFail;
}

int cmd_dump_basis(const RunConfig& cfg, Writer& w) {
    const GNSBasis basis = gram_schmidt_basis(HalfInt{cfg.lmax2}, cfg.params());
    Json j = to_json(basis);
    j["config"] = to_json(cfg);
    w.out() << j.dump(2) << "\n";
    return kPass;
}

} // namespace

int main(int argc, char** argv) {
    setup_logging();

    CLI::App app{"qtriple: SU_q(2) algebra, GNS geometry and spectral triple checks"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::string out_path;
    std::vector<std::string> tol_overrides;
    app.add_option("--q", cfg.q, "deformation parameter, 0 < q < 1")->capture_default_str();
    app.add_option("--lmax2", cfg.lmax2, "twice the largest l")->capture_default_str();
    app.add_option("--fock", cfg.fock, "Fock cutoff N_F")->capture_default_str();
    app.add_option("--zband", cfg.zband, "Z band N_Z (indices -N_Z..N_Z)")->capture_default_str();
    app.add_option("--margin", cfg.margin, "interior margin")->capture_default_str();
    app.add_option("--theta", cfg.theta, "deformation angle, p/N or decimal")->capture_default_str();
    app.add_option("--n", cfg.order, "torus model order N")->capture_default_str();
    app.add_option("--degree", cfg.covering_degree, "covering certification degree")->capture_default_str();
    app.add_option("--seed", cfg.seed, "RNG seed for randomized checks")->capture_default_str();
    app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    app.add_option("--out", out_path, "write the report here instead of stdout");
    app.add_option("--tol", tol_overrides, "override a tolerance, name=value (repeatable)");

    std::string expr;
    std::string matrix_out;
    std::string matrix_format = "json";
    auto* normalize = app.add_subcommand("normalize", "print the canonical form of an expression");
    normalize->add_option("expr", expr, "expression")->required();
    normalize->add_option("--matrix-out", matrix_out, "dump the truncated representation matrix");
    normalize->add_option("--matrix-format", matrix_format, "json or bin")->check(CLI::IsMember({"json", "bin"}));

    auto* haar = app.add_subcommand("haar", "Haar state of an expression, closed form and truncated");
    haar->add_option("expr", expr, "expression")->required();

    auto* gram = app.add_subcommand("gram", "sector Gram matrices of the monomial filtration");
    auto* spectrum_cmd = app.add_subcommand("spectrum", "Dirac eigenvalues and multiplicities");

    std::string suite;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "relations|gns|parity|covering|triple|deform")
        ->required()
        ->check(CLI::IsMember({"relations", "gns", "parity", "covering", "triple", "deform"}));

    auto* dump = app.add_subcommand("dump-basis", "orthonormal GNS basis as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }

    try {
        for (const auto& kv : tol_overrides) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw ConfigError("--tol expects name=value, got '" + kv + "'");
            const std::string name = kv.substr(0, eq);
            if (!cfg.tolerances.count(name))
                throw ConfigError("unknown tolerance '" + name + "'");
            try {
                cfg.tolerances[name] = std::stod(kv.substr(eq + 1));
            } catch (const std::logic_error&) {
                throw ConfigError("bad tolerance value in '" + kv + "'");
            }
        }
        cfg.validate();
        Writer w(out_path);
        if (*normalize)
            return cmd_normalize(expr, cfg, w, matrix_out, matrix_format);
        if (*haar)
            return cmd_haar(expr, cfg, w);
        if (*gram)
            return cmd_gram(cfg, w);
        if (*spectrum_cmd)
            return cmd_spectrum(cfg, w);
        if (*verify)
            return cmd_verify(suite, cfg, w);
        if (*dump)
            return cmd_dump_basis(cfg, w);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const DegreeOverflow& e) {
        std::cerr << "degree overflow: " << e.what() << "\n";
        return kUsage;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    return kUsage;
}
