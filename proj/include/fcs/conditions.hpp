#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "fcs/disk.hpp"

// Separation and boundary-mass conditions on a node sequence: the
// Newman-Carleson constant delta(a) and the sigma_alpha(a) boundary sup,
// the latter certified by a Lipschitz error bound over a uniform grid.

namespace fcs {

// Below this delta the construction constants blow up past anything a
// double can resolve; builders reject such sequences with a diagnostic.
inline constexpr double min_construction_delta = 1e-6;

struct SigmaResult {
    double value = 0.0;           // max of the profile over the grid (lower estimate)
    int grid_size = 0;
    double lipschitz_bound = 0.0; // L >= sup |d/dtheta profile|
    double certified_error = 0.0; // value <= true sup <= value + certified_error
    double upper() const { return value + certified_error; }
};

struct ConditionReport {
    double delta = 0.0;
    SigmaResult sigma;
    double alpha = 0.0;
    bool frostman_label = false;       // alpha == 1: sigma_1 is the uniform Frostman condition
    bool has_zero_node = false;
    bool construction_admissible = false;  // nonzero nodes and delta >= min_construction_delta
};

// delta(a) = min over n of prod_{k != n} |(a_k - a_n)/(1 - conj(a_k) a_n)|.
// Computed in log-space; products of many near-boundary factors underflow
// a plain double well before they become meaningless.
inline double carleson_delta(const NodeSequence& a) {
    const std::size_t n = a.size();
    if (n == 1) return 1.0;
    double min_log = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == i) continue;
            const double rho = pseudo_hyperbolic(a[k], a[i]);
            if (rho == 0.0)
                throw std::domain_error("fcs::carleson_delta: duplicate node");
            s += std::log(rho);
        }
        min_log = std::min(min_log, s);
    }
    return std::exp(min_log);
}

// Sum_k ((1 - |a_k|^2)/|1 - conj(xi) a_k|)^alpha at a fixed boundary point.
inline double sigma_profile(const NodeSequence& a, double alpha, const BoundaryPoint& xi) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("fcs::sigma_profile: alpha must be positive");
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const cplx ak = a[k].value();
        const double num = 1.0 - std::norm(ak);
        const double den = std::abs(1.0 - std::conj(xi.value()) * ak);
        s += std::pow(num / den, alpha);
    }
    return s;
}

// Certified grid estimate of sigma_alpha(a) = sup over |xi|=1 of the profile.
//
// Each term t_k(theta) = (1-|a_k|^2)^alpha m_k(theta)^{-alpha} with
// m_k = |1 - e^{-i theta} a_k| satisfies |m_k'| <= |a_k| (because
// |sin psi| <= m_k), so
//   |t_k'| <= alpha (1-|a_k|^2)^alpha |a_k| (1-|a_k|)^{-(alpha+1)}.
// Summing gives a Lipschitz constant L; any theta is within pi/grid of a
// grid point, hence true sup <= grid max + L*pi/grid.
inline SigmaResult sigma_alpha(const NodeSequence& a, double alpha, int grid_size) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("fcs::sigma_alpha: alpha must be positive");
    if (grid_size < 16)
        throw std::invalid_argument("fcs::sigma_alpha: grid_size must be >= 16");

    double best = 0.0;
    for (int j = 0; j < grid_size; ++j) {
        const double theta = (2.0 * pi) * (static_cast<double>(j) / grid_size);
        best = std::max(best, sigma_profile(a, alpha, BoundaryPoint::from_angle(theta)));
    }

    double lip = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double m = a[k].modulus();
        lip += alpha * std::pow(1.0 - m * m, alpha) * m * std::pow(1.0 - m, -(alpha + 1.0));
    }

    SigmaResult r;
    r.value = best;
    r.grid_size = grid_size;
    r.lipschitz_bound = lip;
    r.certified_error = lip * (pi / grid_size);
    return r;
}

inline ConditionReport check_conditions(const NodeSequence& a, double alpha, int grid_size) {
    ConditionReport rep;
    rep.alpha = alpha;
    rep.delta = carleson_delta(a);
    rep.sigma = sigma_alpha(a, alpha, grid_size);
    rep.frostman_label = (alpha == 1.0);
    rep.has_zero_node = a.has_zero_node();
    rep.construction_admissible = !rep.has_zero_node && rep.delta >= min_construction_delta;
    return rep;
}

}  // namespace fcs
