#pragma once

#include <cstdint>
#include <ctime>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fcs/conditions.hpp"
#include "fcs/disk.hpp"
#include "fcs/interpolation.hpp"
#include "fcs/multiplier.hpp"
#include "fcs/quadrature.hpp"
#include "fcs/version.hpp"

// Problem-file schema and report serialization. Complex numbers travel as
// [re, im] pairs; serialization uses a fixed canonical field order so that
// parse -> serialize -> parse is the identity and re-serialization is
// byte-stable.

namespace fcs {

using ordered_json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class TargetMode { linf, l1 };

inline const char* to_string(TargetMode m) { return m == TargetMode::linf ? "linf" : "l1"; }

struct ProblemTargets {
    TargetMode mode = TargetMode::linf;
    std::vector<cplx> values;
};

struct ProblemGrid {
    int xi_grid = 512;
    QuadratureSpec quad;
};

struct ProblemFile {
    double alpha = 0.5;
    std::vector<cplx> nodes;
    std::optional<ProblemTargets> targets;
    std::optional<ProblemGrid> grid;
    std::optional<std::uint64_t> seed;

    int xi_grid_or_default() const { return grid ? grid->xi_grid : ProblemGrid{}.xi_grid; }
    QuadratureSpec quad_or_default() const { return grid ? grid->quad : QuadratureSpec{}; }
};

namespace io_detail {

inline cplx parse_complex(const ordered_json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError("problem file: field '" + field + "' must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline ordered_json complex_json(cplx v) { return ordered_json::array({v.real(), v.imag()}); }

inline double require_number(const ordered_json& j, const std::string& field) {
    if (!j.contains(field) || !j[field].is_number())
        throw ParseError("problem file: field '" + field + "' missing or not a number");
    return j[field].get<double>();
}

inline int require_int(const ordered_json& j, const std::string& field) {
    if (!j.contains(field) || !j[field].is_number_integer())
        throw ParseError("problem file: field '" + field + "' missing or not an integer");
    return j[field].get<int>();
}

inline void reject_unknown(const ordered_json& j, std::initializer_list<const char*> known,
                           const std::string& where) {
    for (const auto& [key, _] : j.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw ParseError("problem file: unknown field '" + where + key + "'");
    }
}

}  // namespace io_detail

inline ProblemFile parse_problem(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("problem file: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("problem file: top level must be an object");
    io_detail::reject_unknown(j, {"alpha", "nodes", "targets", "grid", "seed"}, "");

    ProblemFile p;
    p.alpha = io_detail::require_number(j, "alpha");
    if (!j.contains("nodes") || !j["nodes"].is_array() || j["nodes"].empty())
        throw ParseError("problem file: field 'nodes' must be a nonempty array of [re, im] pairs");
    for (std::size_t i = 0; i < j["nodes"].size(); ++i)
        p.nodes.push_back(io_detail::parse_complex(j["nodes"][i], "nodes[" + std::to_string(i) + "]"));

    if (j.contains("targets")) {
        const auto& t = j["targets"];
        if (!t.is_object()) throw ParseError("problem file: field 'targets' must be an object");
        io_detail::reject_unknown(t, {"mode", "values"}, "targets.");
        if (!t.contains("mode") || !t["mode"].is_string())
            throw ParseError("problem file: field 'targets.mode' missing or not a string");
        const std::string mode = t["mode"].get<std::string>();
        ProblemTargets targets;
        if (mode == "linf")
            targets.mode = TargetMode::linf;
        else if (mode == "l1")
            targets.mode = TargetMode::l1;
        else
            throw ParseError("problem file: field 'targets.mode' must be \"linf\" or \"l1\"");
        if (!t.contains("values") || !t["values"].is_array())
            throw ParseError("problem file: field 'targets.values' must be an array of [re, im] pairs");
        for (std::size_t i = 0; i < t["values"].size(); ++i)
            targets.values.push_back(
                io_detail::parse_complex(t["values"][i], "targets.values[" + std::to_string(i) + "]"));
        p.targets = std::move(targets);
    }

    if (j.contains("grid")) {
        const auto& g = j["grid"];
        if (!g.is_object()) throw ParseError("problem file: field 'grid' must be an object");
        io_detail::reject_unknown(
            g, {"xi_grid", "radial_panels", "angular_panels", "gauss_order", "max_refinements",
                "rel_tol"},
            "grid.");
        ProblemGrid grid;
        grid.xi_grid = io_detail::require_int(g, "xi_grid");
        grid.quad.radial_panels = io_detail::require_int(g, "radial_panels");
        grid.quad.angular_panels = io_detail::require_int(g, "angular_panels");
        grid.quad.gauss_order = io_detail::require_int(g, "gauss_order");
        grid.quad.max_refinements = io_detail::require_int(g, "max_refinements");
        grid.quad.rel_tol = io_detail::require_number(g, "rel_tol");
        p.grid = grid;
    }

    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
            throw ParseError("problem file: field 'seed' must be a nonnegative integer");
        const auto s = j["seed"].get<long long>();
        if (s < 0) throw ParseError("problem file: field 'seed' must be a nonnegative integer");
        p.seed = static_cast<std::uint64_t>(s);
    }
    return p;
}

inline ordered_json problem_to_json(const ProblemFile& p) {
    ordered_json j;
    j["alpha"] = p.alpha;
    j["nodes"] = ordered_json::array();
    for (cplx v : p.nodes) j["nodes"].push_back(io_detail::complex_json(v));
    if (p.targets) {
        ordered_json t;
        t["mode"] = to_string(p.targets->mode);
        t["values"] = ordered_json::array();
        for (cplx v : p.targets->values) t["values"].push_back(io_detail::complex_json(v));
        j["targets"] = std::move(t);
    }
    if (p.grid) {
        ordered_json g;
        g["xi_grid"] = p.grid->xi_grid;
        g["radial_panels"] = p.grid->quad.radial_panels;
        g["angular_panels"] = p.grid->quad.angular_panels;
        g["gauss_order"] = p.grid->quad.gauss_order;
        g["max_refinements"] = p.grid->quad.max_refinements;
        g["rel_tol"] = p.grid->quad.rel_tol;
        j["grid"] = std::move(g);
    }
    if (p.seed) j["seed"] = *p.seed;
    return j;
}

inline std::string serialize_problem(const ProblemFile& p) { return problem_to_json(p).dump(2) + "\n"; }

// ---- report fragments ----

inline ordered_json sigma_json(const SigmaResult& s) {
    ordered_json j;
    j["value"] = s.value;
    j["grid_size"] = s.grid_size;
    j["lipschitz_bound"] = s.lipschitz_bound;
    j["certified_error"] = s.certified_error;
    j["upper"] = s.upper();
    return j;
}

inline ordered_json condition_json(const ConditionReport& r) {
    ordered_json j;
    j["alpha"] = r.alpha;
    j["delta"] = r.delta;
    j["sigma"] = sigma_json(r.sigma);
    j["frostman_label"] = r.frostman_label;
    j["has_zero_node"] = r.has_zero_node;
    j["construction_admissible"] = r.construction_admissible;
    return j;
}

inline ordered_json residuals_json(const InterpolationResiduals& r) {
    ordered_json j;
    j["per_node"] = r.residuals;
    j["max"] = r.max_residual;
    return j;
}

inline ordered_json bound_json(const BoundReport& b) {
    ordered_json j;
    j["sup_bound"] = b.sup_bound;
    j["per_xi"] = ordered_json::array();
    for (const auto& e : b.per_xi) {
        ordered_json pe;
        pe["xi_angle"] = e.xi_angle;
        pe["g0_term"] = e.g0_term;
        pe["omega_h_term"] = e.omega_h_term;
        pe["second_term"] = e.second_term;
        pe["total"] = e.total;
        pe["converged"] = e.converged;
        pe["excluded"] = e.excluded;
        j["per_xi"].push_back(std::move(pe));
    }
    ordered_json c;
    c["sigma1_value"] = b.constants.sigma1_value;
    c["sigma1_upper"] = b.constants.sigma1_upper;
    c["sigma_alpha_value"] = b.constants.sigma_alpha_value;
    c["sigma_alpha_upper"] = b.constants.sigma_alpha_upper;
    c["delta"] = b.constants.delta;
    c["e_hat"] = b.constants.e_hat;
    c["c_constant"] = b.constants.c_constant;
    j["constants"] = std::move(c);
    j["closed_form_sigma_alpha"] = b.closed_form_sigma_alpha;
    j["closed_form_sigma1"] = b.closed_form_sigma1;
    j["vinogradov_m1"] = b.vinogradov_m1;
    j["all_converged"] = b.all_converged;
    if (!b.flags.empty()) j["flags"] = b.flags;
    return j;
}

inline ordered_json quad_json(const QuadratureSpec& q) {
    ordered_json j;
    j["radial_panels"] = q.radial_panels;
    j["angular_panels"] = q.angular_panels;
    j["gauss_order"] = q.gauss_order;
    j["max_refinements"] = q.max_refinements;
    j["rel_tol"] = q.rel_tol;
    return j;
}

inline ordered_json provenance_json(const QuadratureSpec& q, int xi_grid) {
    ordered_json j;
    j["tool"] = "fcs";
    j["version"] = version;
    j["xi_grid"] = xi_grid;
    j["quad"] = quad_json(q);
    char buf[32];
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    j["timestamp"] = buf;
    return j;
}

}  // namespace fcs
