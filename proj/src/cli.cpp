#include "qfree/cli.hpp"

#include "qfree/cayley.hpp"
#include "qfree/freeprob.hpp"
#include "qfree/fusion.hpp"
#include "qfree/pauli.hpp"
#include "qfree/report.hpp"
#include "qfree/repeval.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>

namespace qfree::cli {

using report::Fields;
using report::Report;

namespace {

constexpr double kIdentityTol = 1e-10;
constexpr double kRelationTol = 1e-11;
constexpr double kSpectrumTol = 1e-10;
constexpr double kPathTol = 1e-10;
constexpr double kSemicircleTol = 1e-6;
constexpr double kWickTol = 1e-10;
constexpr double kEntropySlack = 2e-3;
constexpr int kMaxMomentOrder = 60;
constexpr int kAbsoluteMomentOrder = 16;

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
    const char* env = std::getenv("QFREE_SEED");
    if (!env || !*env) return 0;
    const std::string s(env);
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s[0] == '-') throw UsageError("QFREE_SEED must be a non-negative integer, got '" + s + "'");
    return v;
}

Fields witness_fields(const pauli::Witness& w) {
    return {{"relation", w.relation}, {"output", w.output}, {"input", w.input}, {"expected", w.expected},
            {"actual", w.actual}};
}

std::optional<ncalg::Family> parse_family(const std::string& s) {
    if (s.empty()) return std::nullopt;
    if (s.size() != 1 || s[0] < 'a' || s[0] > 'd') throw UsageError("--flip-sign expects one of a, b, c, d");
    return static_cast<ncalg::Family>(s[0] - 'a');
}

// Commands -------------------------------------------------------------------------

Report run_formula_check(int n, const std::string& flip) {
    if (n < 1) throw UsageError("--n must be >= 1");
    Report r;
    r.command = "verify-lemma31";
    r.param("n", std::int64_t{n});
    r.param("flip_sign", flip);
    r.tolerance("symbolic", 0.0);

    const auto flipped = parse_family(flip);
    const pauli::FormulaReport lem = pauli::verify_derivative_formulas(pauli::symplectic_model(n), flipped);
    const pauli::ThetaTable theta = pauli::theta_rewrite_table();
    r.require(lem.match);
    r.require(theta.ok);

    r.metric("match", lem.match);
    r.metric("entries_compared", as_int(lem.f1.entries_compared + lem.f2.entries_compared));
    r.metric("mismatched_entries_f1", as_int(lem.f1.mismatched_entries));
    r.metric("mismatched_entries_f2", as_int(lem.f2.mismatched_entries));
    r.metric("max_discrepancy_terms", as_int(lem.max_discrepancy_terms));
    std::int64_t theta_ok = 0;
    for (const auto& row : theta.rows) theta_ok += row.ok;
    r.metric("theta_rewrites_ok", theta_ok);
    r.metric("theta_rewrites_total", as_int(theta.rows.size()));
    for (const auto& b : pauli::block_transcription_report(n)) {
        std::string key = std::string("block_") + ncalg::family_char(b.block) + "_" + b.form;
        for (char& c : key)
            if (c == '-') c = '_';
        r.metric(key + "_match", b.result.match);
        r.metric(key + "_mismatches", as_int(b.result.mismatched_entries));
    }
    if (lem.f1.witness) r.witnesses.push_back(witness_fields(*lem.f1.witness));
    if (lem.f2.witness) r.witnesses.push_back(witness_fields(*lem.f2.witness));
    return r;
}

Report classical_point(int n, const std::string& kind_name, int samples, std::uint64_t seed, double tol) {
    if (n < 1) throw UsageError("--n must be >= 1");
    if (samples < 1) throw UsageError("--samples must be >= 1");
    if (!(tol >= 0.0)) throw UsageError("--tol must be >= 0");
    const pauli::Kind kind = kind_name == "sym" ? pauli::Kind::symplectic : pauli::Kind::orthogonal;
    Report r;
    r.command = "classical-point";
    r.param("n", std::int64_t{n});
    r.param("kind", kind_name);
    r.param("samples", std::int64_t{samples});
    r.param("seed", static_cast<std::int64_t>(seed));
    r.tolerance("identity_residual", kIdentityTol);
    r.tolerance("relation_residual", kRelationTol);
    r.tolerance("spectrum", kSpectrumTol);
    r.tolerance("path_discrepancy", kPathTol);
    r.tolerance("kernel", tol);

    const repeval::BatchReport b = repeval::verify_batch(n, kind, samples, seed, tol, kSpectrumTol);
    r.require(b.max_residual <= kIdentityTol);
    r.require(b.max_relation_residual <= kRelationTol);
    r.require(b.all_spectrum_ok);
    r.require(b.max_path_discrepancy <= kPathTol);

    int kmin = b.points.front().report.kernel_dim, kmax = kmin;
    for (const auto& p : b.points) {
        kmin = std::min(kmin, p.report.kernel_dim);
        kmax = std::max(kmax, p.report.kernel_dim);
        r.records.push_back({{"seed", static_cast<std::int64_t>(p.seed)},
                             {"identity_residual", std::max(p.report.residual, p.report.residual_f2)},
                             {"relation_residual", p.report.relation_residual},
                             {"path_discrepancy", p.report.path_discrepancy},
                             {"unitarity_residual", p.report.unitarity_residual},
                             {"min_eigenvalue", p.report.min_eigenvalue},
                             {"max_eigenvalue", p.report.max_eigenvalue},
                             {"kernel_dim", std::int64_t{p.report.kernel_dim}}});
    }
    r.metric("max_identity_residual", b.max_residual);
    r.metric("max_relation_residual", b.max_relation_residual);
    r.metric("max_path_discrepancy", b.max_path_discrepancy);
    r.metric("max_unitarity_residual", b.max_unitarity_residual);
    r.metric("min_eigenvalue", b.min_eigenvalue);
    r.metric("max_eigenvalue", b.max_eigenvalue);
    r.metric("spectrum_ok", b.all_spectrum_ok);
    r.metric("kernel_dim_min", std::int64_t{kmin});
    r.metric("kernel_dim_max", std::int64_t{kmax});
    return r;
}

Report char_moments(int max_k) {
    if (max_k < 0 || max_k > kMaxMomentOrder) throw UsageError("--max-k must be in 0.." + std::to_string(kMaxMomentOrder));
    Report r;
    r.command = "char-moments";
    r.param("max_k", std::int64_t{max_k});
    // Absolute up to k = kAbsoluteMomentOrder, relative to the moment beyond.
    r.tolerance("semicircle", kSemicircleTol);
    r.tolerance("wick", kWickTol);
    r.tolerance("relative_above_k", kAbsoluteMomentOrder);
    const std::vector<std::vector<double>> cov{{1.0}};
    double worst_sc = 0.0, worst_wick = 0.0;
    for (int k = 0; k <= max_k; ++k) {
        const std::uint64_t m = fusion::char_moment(k);
        const double md = static_cast<double>(m);
        const double sc = fusion::semicircle_moment(k);
        const double wick = freeprob::wick_moment<double>(std::vector<int>(static_cast<std::size_t>(k), 0), cov);
        const double scale = k <= kAbsoluteMomentOrder ? 1.0 : std::max(1.0, md);
        worst_sc = std::max(worst_sc, std::abs(md - sc) / scale);
        worst_wick = std::max(worst_wick, std::abs(md - wick) / scale);
        r.metric("moment_" + std::to_string(k), static_cast<std::int64_t>(m));
        r.metric("semicircle_" + std::to_string(k), sc);
        r.metric("wick_" + std::to_string(k), wick);
    }
    r.metric("max_semicircle_deviation", worst_sc);
    r.metric("max_wick_deviation", worst_wick);
    r.require(worst_sc <= kSemicircleTol);
    r.require(worst_wick <= kWickTol);
    return r;
}

Report entropy(const std::string& file, std::optional<double> semicircle_var, int cells) {
    Report r;
    r.command = "entropy";
    std::optional<freeprob::SpectralMeasure> mu;
    if (semicircle_var) {
        if (!(*semicircle_var > 0.0)) throw UsageError("--semicircle expects a positive variance");
        if (cells < 1) throw UsageError("--cells must be >= 1");
        r.param("semicircle", *semicircle_var);
        r.param("cells", std::int64_t{cells});
        mu = freeprob::SpectralMeasure::semicircle(*semicircle_var, 0.0, static_cast<std::size_t>(cells));
    } else {
        r.param("measure", file);
        mu = freeprob::load_measure(file);
    }
    r.tolerance("gaussian_bound_slack", kEntropySlack);
    const double energy = freeprob::log_energy(*mu);
    const double chi = freeprob::chi_single(*mu);
    const double var = mu->variance();
    r.metric("atomic", mu->is_atomic());
    r.metric("log_energy", energy);
    r.metric("chi", chi);
    r.metric("variance", var);
    if (var > 0.0) {
        const double bound = freeprob::gaussian_bound(var);
        r.metric("gaussian_bound", bound);
        r.metric("gap", bound - chi);
        r.require(chi <= bound + kEntropySlack);
    }
    return r;
}

Report fkl(const std::string& file) {
    Report r;
    r.command = "fkl";
    r.param("measure", file);
    const freeprob::SpectralMeasure mu = freeprob::load_measure(file);
    const freeprob::DeterminantClassReport dc = freeprob::is_determinant_class(mu);
    r.tolerance("cauchy", dc.tolerance);
    const double det = freeprob::fkl_det(mu);
    double zero_mass = 0.0;
    if (mu.is_atomic())
        for (const auto& a : mu.atoms())
            if (a.location == 0.0) zero_mass += a.weight;
    r.metric("fkl_det", det);
    r.metric("determinant_class", dc.determinant_class);
    r.metric("last_increment", dc.last_increment);
    r.metric("cutoffs", as_int(dc.cutoffs.size()));
    r.metric("smallest_cutoff", dc.cutoffs.back());
    r.metric("zero_atom_mass", zero_mass);
    r.require(dc.determinant_class);
    return r;
}

std::vector<std::size_t> parse_gen_set(const std::string& list) {
    std::vector<std::size_t> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (item.empty() || used != item.size() || item[0] == '-')
            throw UsageError("--gen-set expects comma-separated element indices, got '" + item + "'");
        out.push_back(v);
    }
    return out;
}

Report cayley_cmd(const std::string& group_name, const std::string& check, const std::string& gen_set) {
    const cayley::FiniteGroup g = cayley::FiniteGroup::by_name(group_name);
    Report r;
    r.command = "cayley";
    r.param("group", g.name());
    r.param("check", check);
    r.tolerance("exact", 0.0);
    r.metric("order", as_int(g.order()));
    r.metric("abelian", g.is_abelian());
    if (check == "pentagon") {
        const auto pos = cayley::pentagon_check(g);
        const auto neg = cayley::pentagon_check(g, true);
        r.metric("holds", pos.holds);
        r.metric("basis_size", as_int(pos.basis_size));
        r.metric("mismatches", as_int(pos.mismatches));
        r.metric("adjoint_control_mismatches", as_int(neg.mismatches));
        r.metric("adjoint_control_fails", !neg.holds);
        r.require(pos.holds);
        r.require(!neg.holds);
    } else if (check == "baaj-skandalis") {
        const auto pos = cayley::baaj_skandalis_check(g);
        const auto neg = cayley::baaj_skandalis_check(g, true);
        r.metric("holds", pos.holds);
        r.metric("basis_size", as_int(pos.basis_size));
        r.metric("mismatches", as_int(pos.mismatches));
        r.metric("v_control_mismatches", as_int(neg.mismatches));
        r.metric("v_control_fails", !neg.holds);
        r.require(pos.holds);
        r.require(!neg.holds);
    } else {
        std::vector<std::size_t> h;
        if (gen_set.empty()) {
            for (std::size_t x = 0; x < g.order(); ++x)
                if (x != g.e()) h.push_back(x);
        } else {
            h = parse_gen_set(gen_set);
        }
        std::string echo;
        for (std::size_t k = 0; k < h.size(); ++k) echo += (k ? "," : "") + std::to_string(h[k]);
        r.param("gen_set", echo);
        const cayley::EdgeSpace edges(g, h);
        const auto ops = cayley::edge_reversal(g, edges);
        r.metric("edges", as_int(edges.size()));
        r.metric("restriction_ok", ops.restriction_ok);
        r.metric("closed_formula_agrees", ops.agree);
        r.metric("unitary", ops.unitary);
        r.metric("involutive", ops.involutive);
        r.metric("boundary_ok", ops.boundary_ok);
        r.require(ops.restriction_ok && ops.agree && ops.unitary && ops.involutive && ops.boundary_ok);
    }
    return r;
}

Report d2_bound(int n, double eps) {
    if (n < 1) throw UsageError("--n must be >= 1");
    if (!(eps >= 0.0) || !std::isfinite(eps)) throw UsageError("--eps must be a finite number >= 0");
    Report r;
    r.command = "d2-bound";
    r.param("n", std::int64_t{n});
    r.param("eps", eps);
    r.tolerance("exact", 0.0);
    const auto d2 = freeprob::d2_perturbation(std::vector<double>(static_cast<std::size_t>(n), 2.0), eps);
    r.metric("norm_squared", d2.norm_squared.get_str());
    r.metric("exact", d2.exact);
    r.metric("paper_bound", d2.bound);
    r.metric("ok", d2.ok);
    r.require(d2.ok);
    return r;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"qfree: verification harness for free orthogonal quantum group computations", "qfree"};
    app.require_subcommand(1, 1);

    int n = 0, samples = 100, max_k = 0, cells = 2000;
    std::string kind = "sym", measure, group, check, gen_set, flip;
    std::optional<double> semicircle;
    double tol = 1e-8, eps = 0.0;
    std::optional<std::uint64_t> seed;

    auto* formula = app.add_subcommand("verify-lemma31", "exact symbolic check of the derivative formulas");
    formula->add_option("--n", n, "N (fundamental matrix is 2N x 2N)")->required();
    formula->add_option("--flip-sign", flip, "negate one family's first-sum term (negative control)")
        ->check(CLI::IsMember({"a", "b", "c", "d"}));

    auto* cp = app.add_subcommand("classical-point", "numeric identity and spectrum at sampled classical points");
    cp->add_option("--n", n, "N for sym, matrix dimension for orth")->required();
    cp->add_option("--kind", kind, "sym or orth")->check(CLI::IsMember({"sym", "orth"}));
    cp->add_option("--samples", samples, "number of points");
    cp->add_option("--seed", seed, "base seed (default: QFREE_SEED or 0)");
    cp->add_option("--tol", tol, "kernel tolerance");

    auto* cm = app.add_subcommand("char-moments", "fusion-ring moments of the fundamental character");
    cm->add_option("--max-k", max_k, "largest moment order")->required();

    auto* en = app.add_subcommand("entropy", "free entropy of a spectral measure");
    auto* en_file = en->add_option("--measure", measure, "CSV measure file");
    auto* en_sc = en->add_option("--semicircle", semicircle, "semicircle law with this variance");
    en_file->excludes(en_sc);
    en->add_option("--cells", cells, "grid cells for --semicircle");

    auto* fk = app.add_subcommand("fkl", "Fuglede-Kadison determinant of a measure of |x|");
    fk->add_option("--measure", measure, "CSV measure file")->required();

    auto* cy = app.add_subcommand("cayley", "finite-group operator identities");
    cy->add_option("--group", group, "Z<n>, S3, S4 or D4")->required();
    cy->add_option("--check", check, "pentagon, theta or baaj-skandalis")
        ->required()
        ->check(CLI::IsMember({"pentagon", "theta", "baaj-skandalis"}));
    cy->add_option("--gen-set", gen_set, "comma-separated element indices (theta)");

    auto* d2 = app.add_subcommand("d2-bound", "exact perturbation norm against 2N eps");
    d2->add_option("--n", n, "N")->required();
    d2->add_option("--eps", eps, "epsilon")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    }

    const auto t0 = std::chrono::steady_clock::now();
    Report r;
    try {
        if (formula->parsed()) {
            r = run_formula_check(n, flip);
        } else if (cp->parsed()) {
            r = classical_point(n, kind, samples, seed ? *seed : default_seed(), tol);
        } else if (cm->parsed()) {
            r = char_moments(max_k);
        } else if (en->parsed()) {
            if (measure.empty() && !semicircle) throw UsageError("entropy needs --measure FILE or --semicircle VAR");
            r = entropy(measure, semicircle, cells);
        } else if (fk->parsed()) {
            r = fkl(measure);
        } else if (cy->parsed()) {
            r = cayley_cmd(group, check, gen_set);
        } else {
            r = d2_bound(n, eps);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    const auto t1 = std::chrono::steady_clock::now();
    r.metric("wall_ms", std::chrono::duration<double, std::milli>(t1 - t0).count());
    out << r.to_json() << "\n";
    return r.pass ? 0 : 1;
}

}  // namespace qfree::cli
