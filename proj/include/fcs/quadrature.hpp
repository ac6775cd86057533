#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "fcs/disk.hpp"

// Composite Gauss quadrature for the weighted disk integrals
//   I(f) = int_0^1 int_{-pi}^{pi} |f(r e^{i theta})| (1-r)^{alpha-1} dtheta dr.
// The substitution u = (1-r)^alpha removes the endpoint weight exactly:
//   I(f) = (1/alpha) int_0^1 int_{-pi}^{pi} |f((1-u^{1/alpha}) e^{i theta})| dtheta du.
// The radial mesh is dyadic toward u = 0 (the boundary) and the angular
// mesh is dyadic toward caller-supplied singular angles, where the
// integrands of interest peak.

namespace fcs {

struct QuadratureSpec {
    // Defaults are sized for the boundary-singular kernels of the bound
    // pipeline; smooth integrands converge on far coarser settings.
    int radial_panels = 24;  // panel count of the dyadic u-mesh
    int angular_panels = 8;  // base uniform angular panels
    int gauss_order = 8;
    int max_refinements = 4;
    double rel_tol = 1e-6;

    void validate() const {
        if (radial_panels < 1 || angular_panels < 1 || gauss_order < 2 || max_refinements < 1)
            throw std::invalid_argument("fcs::QuadratureSpec: all sizes must be positive");
        if (!(rel_tol > 0.0 && rel_tol <= 1e-3))
            throw std::invalid_argument("fcs::QuadratureSpec: rel_tol must lie in (0, 1e-3]");
    }
};

struct OmegaResult {
    double value = 0.0;
    bool converged = false;
    int levels = 0;                // refinement levels actually evaluated
    std::vector<double> history;   // value per level, coarsest first

    // Heuristic used to exclude genuinely divergent integrals from sups.
    // Convergent ladders shrink their increments geometrically (the stub
    // panel halves each level); divergent ones keep adding near-constant
    // mass per level.
    bool diverging() const {
        if (converged || history.size() < 3) return false;
        const std::size_t n = history.size();
        const double d_last = history[n - 1] - history[n - 2];
        const double d_prev = history[n - 2] - history[n - 3];
        return d_last > 0.0 && d_prev > 0.0 && d_last >= 0.75 * d_prev;
    }
};

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on the
// Legendre recurrence.
struct GaussRule {
    std::vector<double> x, w;

    static GaussRule legendre(int n) {
        if (n < 1) throw std::invalid_argument("fcs::GaussRule: order must be >= 1");
        GaussRule r;
        r.x.resize(n);
        r.w.resize(n);
        const int m = (n + 1) / 2;
        for (int i = 0; i < m; ++i) {
            double z = std::cos(pi * (i + 0.75) / (n + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p1 = 1.0, p2 = 0.0;
                for (int j = 1; j <= n; ++j) {
                    const double p3 = p2;
                    p2 = p1;
                    p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
                }
                pp = n * (z * p1 - p2) / (z * z - 1.0);
                const double dz = -p1 / pp;
                z += dz;
                if (std::abs(dz) < 1e-15) break;
            }
            r.x[i] = -z;
            r.x[n - 1 - i] = z;
            r.w[i] = r.w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
        }
        return r;
    }
};

namespace detail {

// Dyadic mesh {0, 2^{1-p}, ..., 1/2, 1} on [0,1], crowding the boundary.
inline std::vector<double> radial_breakpoints(int panels) {
    std::vector<double> b;
    b.reserve(panels + 1);
    b.push_back(0.0);
    for (int j = panels - 1; j >= 0; --j) b.push_back(std::ldexp(1.0, -j));
    return b;
}

// Base uniform breakpoints plus dyadic crowding toward each singular
// angle, wrapped to [-pi, pi). depth controls the smallest inserted scale.
inline std::vector<double> angular_breakpoints(int base_panels,
                                               std::span<const double> singular_angles,
                                               int depth) {
    std::vector<double> b;
    b.reserve(base_panels + singular_angles.size() * (2 * depth + 1));
    for (int j = 0; j < base_panels; ++j)
        b.push_back(-pi + (2.0 * pi) * (static_cast<double>(j) / base_panels));
    for (double s : singular_angles) {
        const double c = std::remainder(s, 2.0 * pi);
        b.push_back(c);
        for (int l = 1; l <= depth; ++l) {
            const double h = pi * std::ldexp(1.0, -l);
            b.push_back(std::remainder(c + h, 2.0 * pi));
            b.push_back(std::remainder(c - h, 2.0 * pi));
        }
    }
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end(),
                        [](double p, double q) { return q - p < 1e-13; }),
            b.end());
    return b;
}

}  // namespace detail

// Evaluates I(f) on a refinement ladder: level L splits every base panel
// into 2^L equal parts in both directions; stops once two consecutive
// levels agree to rel_tol. Summation order is fixed, so results are
// bit-stable regardless of any parallelism above this call.
template <class F>
OmegaResult weighted_modulus_integral(F&& f, double alpha, const QuadratureSpec& q,
                                      std::span<const double> singular_angles = {}) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("fcs::weighted_modulus_integral: alpha must be positive");
    q.validate();

    const GaussRule rule = GaussRule::legendre(q.gauss_order);
    const std::vector<double> ub = detail::radial_breakpoints(q.radial_panels);
    const int depth = std::clamp(q.radial_panels + 4, 10, 20);
    const std::vector<double> tb =
        detail::angular_breakpoints(q.angular_panels, singular_angles, depth);
    const double inv_alpha = 1.0 / alpha;

    OmegaResult res;
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (int level = 0; level <= q.max_refinements; ++level) {
        const int split = 1 << level;
        detail::KahanReal total;

        for (std::size_t ti = 0; ti < tb.size(); ++ti) {
            const double t0 = tb[ti];
            const double t1 = (ti + 1 < tb.size()) ? tb[ti + 1] : tb[0] + 2.0 * pi;
            for (int ts = 0; ts < split; ++ts) {
                const double ta = t0 + (t1 - t0) * ts / split;
                const double tbnd = t0 + (t1 - t0) * (ts + 1) / split;
                const double tc = 0.5 * (ta + tbnd), th = 0.5 * (tbnd - ta);
                for (int gi = 0; gi < q.gauss_order; ++gi) {
                    const double theta = tc + th * rule.x[gi];
                    const double wt = th * rule.w[gi];
                    const double ct = std::cos(theta), st = std::sin(theta);

                    for (std::size_t ui = 0; ui + 1 < ub.size(); ++ui) {
                        for (int us = 0; us < split; ++us) {
                            const double ua = ub[ui] + (ub[ui + 1] - ub[ui]) * us / split;
                            const double ubn = ub[ui] + (ub[ui + 1] - ub[ui]) * (us + 1) / split;
                            const double uc = 0.5 * (ua + ubn), uh = 0.5 * (ubn - ua);
                            for (int gj = 0; gj < q.gauss_order; ++gj) {
                                const double u = uc + uh * rule.x[gj];
                                // keep r strictly inside the disk even when
                                // u^{1/alpha} underflows past double epsilon
                                const double tail = std::max(std::pow(u, inv_alpha), 1e-15);
                                const double r = 1.0 - tail;
                                const double wu = uh * rule.w[gj];
                                total.add(wt * wu * std::abs(f(cplx(r * ct, r * st))));
                            }
                        }
                    }
                }
            }
        }

        const double value = total.value() * inv_alpha;
        res.history.push_back(value);
        res.levels = level + 1;
        res.value = value;
        if (level > 0 && std::abs(value - prev) <= q.rel_tol * std::max(std::abs(value), 1e-30)) {
            res.converged = true;
            break;
        }
        prev = value;
    }
    return res;
}

}  // namespace fcs
