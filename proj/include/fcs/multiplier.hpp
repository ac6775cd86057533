#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fcs/conditions.hpp"
#include "fcs/disk.hpp"
#include "fcs/interpolation.hpp"
#include "fcs/parallel.hpp"
#include "fcs/quadrature.hpp"
#include "fcs/transforms.hpp"

// Executable surrogate of the multiplier-norm machinery. Membership of f
// in m_alpha is equivalent to a uniform F_alpha bound on the test
// functions g_xi = f * (1 - conj(xi) z)^{-alpha} over |xi| = 1; the bound
// per xi splits g_xi' into
//   h = f' (1 - conj(xi) z)^{-alpha}      (handled by the Omega quadrature)
//   alpha conj(xi) f (1 - conj(xi) z)^{-(alpha+1)}   (handled analytically
//   through the m_1 estimate 2 (sigma_1/delta)^2 ||x||_inf),
// and the total per xi is
//   |f(0)| + (2/alpha) [ (alpha/2pi) Omega(h) + 2 alpha (sigma_1/delta)^2 ||x||_inf ].

namespace fcs {

// g_xi(z) = f(z) (1 - conj(xi) z)^{-alpha}; g_xi(0) = f(0).
template <class F>
auto test_function(F f, const BoundaryPoint& xi, double alpha) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("fcs::test_function: alpha must be positive");
    return [f = std::move(f), xc = std::conj(xi.value()), alpha](cplx z) {
        return f(z) / principal_power(1.0 - xc * z, alpha);
    };
}

struct GPrimeParts {
    std::function<cplx(cplx)> h;       // f'(z) (1 - conj(xi) z)^{-alpha}
    std::function<cplx(cplx)> second;  // alpha conj(xi) f(z) (1 - conj(xi) z)^{-(alpha+1)}
};

// The two summands of (d/dz) [ f(z) (1 - conj(xi) z)^{-alpha} ].
inline GPrimeParts g_prime_decomposition(const MultiplierInterpolant& f, const BoundaryPoint& xi,
                                         double alpha) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("fcs::g_prime_decomposition: alpha must be positive");
    const cplx xc = std::conj(xi.value());
    GPrimeParts parts;
    parts.h = [f, xc, alpha](cplx z) {
        return f.derivative(z) / principal_power(1.0 - xc * z, alpha);
    };
    parts.second = [f, xc, alpha](cplx z) {
        return alpha * xc * f.evaluate(z) / principal_power(1.0 - xc * z, alpha + 1.0);
    };
    return parts;
}

// ||f||_{m_1} <= 2 (sigma_1/delta)^2 ||x||_inf (Vinogradov). Expects the
// condition report computed at alpha = 1.
inline double vinogradov_m1_bound(const ConditionReport& rep, double sup_x) {
    if (rep.alpha != 1.0)
        throw std::invalid_argument("fcs::vinogradov_m1_bound: report must be computed at alpha = 1");
    const double r = rep.sigma.value / rep.delta;
    return 2.0 * r * r * sup_x;
}

struct XiBoundEntry {
    double xi_angle = 0.0;
    double g0_term = 0.0;
    double omega_h_term = 0.0;  // (2/alpha)(alpha/2pi) Omega(h_xi) = Omega(h_xi)/pi
    double second_term = 0.0;   // 4 (sigma_1/delta)^2 ||x||_inf
    double total = 0.0;
    bool converged = false;
    bool excluded = false;  // non-convergent and growing; left out of the sup
};

struct BoundConstants {
    double sigma1_value = 0.0, sigma1_upper = 0.0;
    double sigma_alpha_value = 0.0, sigma_alpha_upper = 0.0;
    double delta = 0.0;
    double e_hat = 0.0;
    double c_constant = 0.0;  // 6 + 2 E_hat
};

struct BoundReport {
    double sup_bound = 0.0;
    std::vector<XiBoundEntry> per_xi;
    BoundConstants constants;
    // Closed-form comparisons C (sigma/delta)^2 ||x||_inf, reported with
    // both sigma_alpha and sigma_1; their ordering is never asserted.
    double closed_form_sigma_alpha = 0.0;
    double closed_form_sigma1 = 0.0;
    double vinogradov_m1 = 0.0;
    bool all_converged = false;
    std::string flags;
};

// Sup over a uniform xi grid of the per-xi F_alpha bound on the test
// functions of the interpolant f. Covers 0 < alpha < 1; alpha = 1 is the
// classical case and is served by vinogradov_m1_bound alone.
inline BoundReport multiplier_norm_bound(const MultiplierInterpolant& f, double alpha, int xi_grid,
                                         const QuadratureSpec& q, const ConditionReport& cond,
                                         double e_hat) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error(
            "fcs::multiplier_norm_bound: pipeline covers 0 < alpha < 1; "
            "use vinogradov_m1_bound for alpha = 1");
    if (xi_grid < 1)
        throw std::invalid_argument("fcs::multiplier_norm_bound: xi_grid must be positive");
    if (std::abs(cond.alpha - alpha) > 1e-12)
        throw std::invalid_argument("fcs::multiplier_norm_bound: condition report alpha mismatch");
    q.validate();

    const NodeSequence& a = f.nodes();
    const SigmaResult sigma1 = sigma_alpha(a, 1.0, cond.sigma.grid_size);
    const double delta = cond.delta;
    const double sup_x = f.sup_target();
    const double g0 = std::abs(f.value_at_zero());
    const double s1d = sigma1.upper() / delta;
    const double second = 4.0 * s1d * s1d * sup_x;

    // Angular grading targets: the xi singularity plus near-boundary nodes
    // (the poles of f' sit at 1/conj(a_k)).
    std::vector<double> node_angles;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k].modulus() >= 0.8) node_angles.push_back(std::arg(a[k].value()));

    std::vector<XiBoundEntry> entries(xi_grid);
    std::vector<OmegaResult> omegas(xi_grid);
    parallel_for(static_cast<std::size_t>(xi_grid), [&](std::size_t i) {
        const double angle = (2.0 * pi) * (static_cast<double>(i) / xi_grid);
        const BoundaryPoint xi = BoundaryPoint::from_angle(angle);
        const GPrimeParts parts = g_prime_decomposition(f, xi, alpha);
        std::vector<double> angles = node_angles;
        angles.push_back(angle);
        omegas[i] = omega(parts.h, alpha, q, angles);

        XiBoundEntry e;
        e.xi_angle = angle;
        e.g0_term = g0;
        e.omega_h_term = omegas[i].value / pi;
        e.second_term = second;
        e.total = e.g0_term + e.omega_h_term + e.second_term;
        e.converged = omegas[i].converged;
        e.excluded = !omegas[i].converged && omegas[i].diverging();
        entries[i] = e;
    });

    BoundReport rep;
    rep.per_xi = std::move(entries);
    rep.all_converged = true;
    int excluded_count = 0;
    for (const auto& e : rep.per_xi) {
        rep.all_converged = rep.all_converged && e.converged;
        if (e.excluded) {
            ++excluded_count;
            continue;
        }
        rep.sup_bound = std::max(rep.sup_bound, e.total);
    }
    if (excluded_count > 0)
        rep.flags = "WARNING: " + std::to_string(excluded_count) +
                    " xi point(s) with diverging quadrature excluded from the sup";

    rep.constants.sigma1_value = sigma1.value;
    rep.constants.sigma1_upper = sigma1.upper();
    rep.constants.sigma_alpha_value = cond.sigma.value;
    rep.constants.sigma_alpha_upper = cond.sigma.upper();
    rep.constants.delta = delta;
    rep.constants.e_hat = e_hat;
    rep.constants.c_constant = 6.0 + 2.0 * e_hat;

    const double sad = cond.sigma.upper() / delta;
    rep.closed_form_sigma_alpha = rep.constants.c_constant * sad * sad * sup_x;
    rep.closed_form_sigma1 = rep.constants.c_constant * s1d * s1d * sup_x;
    rep.vinogradov_m1 = 2.0 * (sigma1.value / delta) * (sigma1.value / delta) * sup_x;
    return rep;
}

}  // namespace fcs
