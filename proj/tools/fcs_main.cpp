// fcs: free interpolation in fractional Cauchy-Stieltjes families.
//
// Subcommands:
//   check <file>                 condition report (delta, sigma_alpha, labels)
//   interpolate <file> --mode …  build an interpolant, report residuals
//   bound <file> --out …         multiplier-norm upper-bound pipeline
//   sweep --config … --out …     seeded random property sweep to CSV
//
// Exit codes: 0 success, 1 input error, 2 mathematical inadmissibility.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "fcs/conditions.hpp"
#include "fcs/format.hpp"
#include "fcs/interpolation.hpp"
#include "fcs/multiplier.hpp"
#include "fcs/problem_io.hpp"
#include "fcs/sweep.hpp"
#include "fcs/transforms.hpp"
#include "fcs/version.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input_error = 1;
constexpr int exit_inadmissible = 2;

struct CliError : std::runtime_error {
    int code;
    CliError(int c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError(exit_input_error, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliError(exit_input_error, "cannot write '" + path + "'");
    out << text;
}

void emit(const std::optional<std::string>& out_path, const fcs::ordered_json& j) {
    const std::string text = j.dump(2) + "\n";
    if (out_path)
        write_text(*out_path, text);
    else
        std::cout << text;
}

fcs::ProblemFile load_problem(const std::string& path) {
    return fcs::parse_problem(read_file(path));
}

fcs::NodeSequence make_nodes(const fcs::ProblemFile& p) {
    return fcs::NodeSequence::from_values(p.nodes);
}

// ---- check ----

int cmd_check(const std::string& path, const std::optional<std::string>& out_path) {
    const fcs::ProblemFile p = load_problem(path);
    fcs::ordered_json rep;
    try {
        const fcs::NodeSequence nodes = make_nodes(p);
        const fcs::ConditionReport cond = fcs::check_conditions(nodes, p.alpha, 4096);
        rep["condition"] = fcs::condition_json(cond);
        rep["provenance"] = fcs::provenance_json(p.quad_or_default(), p.xi_grid_or_default());
        emit(out_path, rep);
        if (!cond.construction_admissible && cond.delta < fcs::min_construction_delta)
            return exit_inadmissible;
        return exit_ok;
    } catch (const std::domain_error& e) {
        rep["error"] = e.what();
        rep["admissible"] = false;
        emit(out_path, rep);
        return exit_inadmissible;
    }
}

// ---- interpolate ----

void write_boundary_trace(const std::string& path, const std::function<fcs::cplx(fcs::cplx)>& f,
                          int points) {
    std::ostringstream os;
    os << "theta,re,im,abs\n";
    for (int j = 0; j < points; ++j) {
        const double theta = -fcs::pi + 2.0 * fcs::pi * j / points;
        const fcs::cplx v = f(std::polar(0.999, theta));
        os << fcs::format_double(theta) << ',' << fcs::format_double(v.real()) << ','
           << fcs::format_double(v.imag()) << ',' << fcs::format_double(std::abs(v)) << '\n';
    }
    write_text(path, os.str());
}

void write_radial_slice(const std::string& path, const std::function<fcs::cplx(fcs::cplx)>& f,
                        double ray_angle, int points) {
    std::ostringstream os;
    os << "r,re,im,abs\n";
    for (int j = 0; j < points; ++j) {
        const double r = (points > 1) ? 0.999 * j / (points - 1) : 0.0;
        const fcs::cplx v = f(std::polar(r, ray_angle));
        os << fcs::format_double(r) << ',' << fcs::format_double(v.real()) << ','
           << fcs::format_double(v.imag()) << ',' << fcs::format_double(std::abs(v)) << '\n';
    }
    write_text(path, os.str());
}

int cmd_interpolate(const std::string& path, const std::string& mode,
                    const std::optional<std::string>& out_path,
                    const std::optional<std::string>& trace_csv,
                    const std::optional<std::string>& radial_csv, double ray_angle,
                    int trace_points) {
    const fcs::ProblemFile p = load_problem(path);
    if (!p.targets)
        throw CliError(exit_inadmissible, "interpolate: problem file carries no targets");
    const bool want_multiplier = (mode == "multiplier");
    const fcs::TargetMode expected = want_multiplier ? fcs::TargetMode::linf : fcs::TargetMode::l1;
    if (p.targets->mode != expected)
        throw CliError(exit_inadmissible,
                       std::string("interpolate: mode '") + mode + "' requires " +
                           fcs::to_string(expected) + " targets, problem file has " +
                           fcs::to_string(p.targets->mode));

    const fcs::NodeSequence nodes = make_nodes(p);
    const fcs::ConditionReport cond = fcs::check_conditions(nodes, p.alpha, 4096);

    fcs::ordered_json rep;
    rep["condition"] = fcs::condition_json(cond);
    std::function<fcs::cplx(fcs::cplx)> evaluator;

    if (want_multiplier) {
        const fcs::MultiplierInterpolant f(nodes, p.targets->values);
        const fcs::InterpolationResiduals res = fcs::verify_interpolation(f);
        fcs::ordered_json ji;
        ji["mode"] = "multiplier";
        ji["residuals"] = fcs::residuals_json(res);
        ji["y"] = fcs::ordered_json::array();
        for (fcs::cplx y : f.coefficients()) ji["y"].push_back(fcs::io_detail::complex_json(y));
        rep["interpolation"] = std::move(ji);
        evaluator = [f](fcs::cplx z) { return f.evaluate(z); };
    } else {
        const fcs::FAlphaInterpolant g(nodes, p.targets->values, p.alpha);
        const fcs::InterpolationResiduals res = fcs::verify_interpolation(g);
        fcs::ordered_json ji;
        ji["mode"] = "f_alpha";
        ji["residuals"] = fcs::residuals_json(res);
        rep["interpolation"] = std::move(ji);
        evaluator = [g](fcs::cplx z) { return g.evaluate(z); };
    }
    rep["provenance"] = fcs::provenance_json(p.quad_or_default(), p.xi_grid_or_default());

    if (trace_csv) write_boundary_trace(*trace_csv, evaluator, trace_points);
    if (radial_csv) write_radial_slice(*radial_csv, evaluator, ray_angle, trace_points);
    emit(out_path, rep);
    return exit_ok;
}

// ---- bound ----

std::optional<double> load_e_hat_cache(const std::string& path, double alpha,
                                       const fcs::QuadratureSpec& q) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        const auto j = fcs::ordered_json::parse(ss.str());
        if (std::abs(j.at("alpha").get<double>() - alpha) > 1e-12) return std::nullopt;
        if (j.at("quad") != fcs::quad_json(q)) return std::nullopt;
        return j.at("e_hat").get<double>();
    } catch (...) {
        return std::nullopt;
    }
}

void store_e_hat_cache(const std::string& path, double alpha, const fcs::QuadratureSpec& q,
                       const fcs::EHatResult& e) {
    fcs::ordered_json j;
    j["alpha"] = alpha;
    j["e_hat"] = e.value;
    j["all_converged"] = e.all_converged;
    j["samples"] = "default";
    j["quad"] = fcs::quad_json(q);
    write_text(path, j.dump(2) + "\n");
}

int cmd_bound(const std::string& path, const std::optional<std::string>& out_path,
              const std::optional<std::string>& e_hat_cache) {
    const fcs::ProblemFile p = load_problem(path);
    if (p.alpha > 1.0)
        throw CliError(exit_inadmissible, "bound: alpha must lie in (0, 1]");
    if (!p.targets || p.targets->mode != fcs::TargetMode::linf)
        throw CliError(exit_inadmissible, "bound: problem file must carry linf targets");

    const fcs::NodeSequence nodes = make_nodes(p);
    const fcs::QuadratureSpec quad = p.quad_or_default();
    const fcs::MultiplierInterpolant f(nodes, p.targets->values);

    fcs::ordered_json rep;
    if (p.alpha == 1.0) {
        const fcs::ConditionReport cond = fcs::check_conditions(nodes, 1.0, 4096);
        rep["condition"] = fcs::condition_json(cond);
        fcs::ordered_json jb;
        jb["vinogradov_m1"] = fcs::vinogradov_m1_bound(cond, f.sup_target());
        jb["note"] =
            "the Omega pipeline covers 0 < alpha < 1; for alpha = 1 only the "
            "Vinogradov m_1 bound is reported";
        rep["bound"] = std::move(jb);
        rep["provenance"] = fcs::provenance_json(quad, p.xi_grid_or_default());
        emit(out_path, rep);
        return exit_ok;
    }

    const fcs::ConditionReport cond = fcs::check_conditions(nodes, p.alpha, 4096);
    double e_hat = 0.0;
    bool e_from_cache = false;
    if (e_hat_cache) {
        if (auto cached = load_e_hat_cache(*e_hat_cache, p.alpha, quad)) {
            e_hat = *cached;
            e_from_cache = true;
        }
    }
    if (!e_from_cache) {
        const auto samples = fcs::default_kernel_samples();
        const fcs::EHatResult e = fcs::estimate_kernel_constant(samples, p.alpha, quad);
        e_hat = e.value;
        if (e_hat_cache) store_e_hat_cache(*e_hat_cache, p.alpha, quad, e);
    }

    const fcs::BoundReport b =
        fcs::multiplier_norm_bound(f, p.alpha, p.xi_grid_or_default(), quad, cond, e_hat);
    rep["condition"] = fcs::condition_json(cond);
    rep["bound"] = fcs::bound_json(b);
    rep["bound"]["e_hat_from_cache"] = e_from_cache;
    rep["provenance"] = fcs::provenance_json(quad, p.xi_grid_or_default());
    emit(out_path, rep);
    return exit_ok;
}

// ---- sweep ----

fcs::SweepConfig parse_sweep_config(const std::string& text) {
    fcs::ordered_json j;
    try {
        j = fcs::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw fcs::ParseError(std::string("sweep config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw fcs::ParseError("sweep config: top level must be an object");
    fcs::io_detail::reject_unknown(j,
                                   {"seed", "count", "n_min", "n_max", "radius_cap", "alphas",
                                    "min_delta", "target_cap", "sigma_grid", "xi_grid", "quad"},
                                   "");
    fcs::SweepConfig cfg;
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("count")) cfg.count = j["count"].get<int>();
    if (j.contains("n_min")) cfg.n_min = j["n_min"].get<int>();
    if (j.contains("n_max")) cfg.n_max = j["n_max"].get<int>();
    if (j.contains("radius_cap")) cfg.radius_cap = j["radius_cap"].get<double>();
    if (j.contains("alphas")) cfg.alphas = j["alphas"].get<std::vector<double>>();
    if (j.contains("min_delta")) cfg.min_delta = j["min_delta"].get<double>();
    if (j.contains("target_cap")) cfg.target_cap = j["target_cap"].get<double>();
    if (j.contains("sigma_grid")) cfg.sigma_grid = j["sigma_grid"].get<int>();
    if (j.contains("xi_grid")) cfg.xi_grid = j["xi_grid"].get<int>();
    if (j.contains("quad")) {
        const auto& g = j["quad"];
        cfg.quad.radial_panels = g.at("radial_panels").get<int>();
        cfg.quad.angular_panels = g.at("angular_panels").get<int>();
        cfg.quad.gauss_order = g.at("gauss_order").get<int>();
        cfg.quad.max_refinements = g.at("max_refinements").get<int>();
        cfg.quad.rel_tol = g.at("rel_tol").get<double>();
    }
    cfg.validate();
    return cfg;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path) {
    const fcs::SweepConfig cfg = parse_sweep_config(read_file(config_path));
    const std::vector<fcs::SweepRow> rows = fcs::run_sweep(cfg);
    std::ostringstream os;
    fcs::write_sweep_csv(rows, os);
    write_text(out_path, os.str());
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"free interpolation in fractional Cauchy-Stieltjes families"};
    app.set_version_flag("--version", std::string("fcs ") + fcs::version);
    app.require_subcommand(1);

    std::string problem_path, mode = "multiplier", sweep_config, sweep_out;
    std::optional<std::string> out_path, trace_csv, radial_csv, e_hat_cache;
    double ray_angle = 0.0;
    int trace_points = 720;

    auto* check = app.add_subcommand("check", "condition report for a node sequence");
    check->add_option("file", problem_path, "problem JSON file")->required();
    check->add_option("--out", out_path, "write the report here instead of stdout");

    auto* interp = app.add_subcommand("interpolate", "build an interpolant and verify it");
    interp->add_option("file", problem_path, "problem JSON file")->required();
    interp->add_option("--mode", mode, "multiplier | f_alpha")
        ->check(CLI::IsMember({"multiplier", "f_alpha"}))
        ->required();
    interp->add_option("--out", out_path, "report JSON path (stdout if omitted)");
    interp->add_option("--trace-csv", trace_csv, "boundary trace CSV at |z| = 0.999");
    interp->add_option("--radial-csv", radial_csv, "radial slice CSV along --ray-angle");
    interp->add_option("--ray-angle", ray_angle, "ray angle in radians for --radial-csv");
    interp->add_option("--trace-points", trace_points, "points per CSV trace")
        ->check(CLI::PositiveNumber);

    auto* bound = app.add_subcommand("bound", "multiplier-norm upper-bound pipeline");
    bound->add_option("file", problem_path, "problem JSON file")->required();
    bound->add_option("--out", out_path, "report JSON path (stdout if omitted)");
    bound->add_option("--e-hat", e_hat_cache, "E_hat cache file (read if fresh, else written)");

    auto* sweep = app.add_subcommand("sweep", "seeded random property sweep");
    sweep->add_option("--config", sweep_config, "sweep config JSON")->required();
    sweep->add_option("--out", sweep_out, "output CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return cmd_check(problem_path, out_path);
        if (interp->parsed())
            return cmd_interpolate(problem_path, mode, out_path, trace_csv, radial_csv, ray_angle,
                                   trace_points);
        if (bound->parsed()) return cmd_bound(problem_path, out_path, e_hat_cache);
        if (sweep->parsed()) return cmd_sweep(sweep_config, sweep_out);
    } catch (const CliError& e) {
        std::cerr << "fcs: " << e.what() << "\n";
        return e.code;
    } catch (const fcs::ParseError& e) {
        std::cerr << "fcs: " << e.what() << "\n";
        return exit_input_error;
    } catch (const std::domain_error& e) {
        std::cerr << "fcs: " << e.what() << "\n";
        return exit_inadmissible;
    } catch (const std::invalid_argument& e) {
        std::cerr << "fcs: " << e.what() << "\n";
        return exit_inadmissible;
    } catch (const std::exception& e) {
        std::cerr << "fcs: " << e.what() << "\n";
        return exit_input_error;
    }
    return exit_input_error;
}
