#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fcs/conditions.hpp"
#include "fcs/disk.hpp"
#include "fcs/transforms.hpp"

// The two free-interpolation constructions. For multiplier data x in
// l-infinity the interpolant is
//   f(z) = sum_n (1-|a_n|^2)/(1 - conj(a_n) z) * B_n(z)/B_n(a_n) * x_n,
// which for a finite node set is a rational function with simple poles at
// 1/conj(a_k); its partial-fraction form
//   f(z) = sum_k y(a_k) / (1 - conj(a_k) z)
// is an exact identity, and the y(a_k) are given in closed form. For l^1
// data the F_alpha interpolant is
//   g(z) = sum_n B_n(z) (1 - conj(a_n) z)^{-alpha} * x_n / B_n(a_n),
// which hits g(a_k)(1-|a_k|^2)^alpha = x_k exactly because B_n(a_k) = 0
// for n != k.

namespace fcs {

namespace detail {

inline void require_targets_match(const NodeSequence& a, std::span<const cplx> x, const char* who) {
    if (x.size() != a.size())
        throw std::domain_error(std::string(who) + ": targets must match nodes in length (" +
                                std::to_string(x.size()) + " vs " + std::to_string(a.size()) + ")");
}

inline std::vector<cplx> self_products(const NodeSequence& a) {
    std::vector<cplx> b(a.size());
    for (std::size_t n = 0; n < a.size(); ++n)
        b[n] = blaschke_product_excluding(a, n, a[n].value());
    return b;
}

inline void require_admissible_delta(const NodeSequence& a, const char* who) {
    const double d = carleson_delta(a);
    if (d < min_construction_delta)
        throw std::domain_error(std::string(who) + ": delta(a) = " + std::to_string(d) +
                                " below admissibility threshold " +
                                std::to_string(min_construction_delta) +
                                " (constants of the construction degenerate)");
}

}  // namespace detail

// Expansion coefficients y(a_k) of the multiplier interpolant:
//   y(a_k) = sum_n (1-|a_n|^2)(1-|a_k|^2) / (B_n(a_n) conj(B_k(a_k)))
//            * (a_n |a_k|)/(|a_n| a_k) * x_n / (1 - conj(a_k) a_n).
inline std::vector<cplx> expansion_coefficients(const NodeSequence& a, std::span<const cplx> x) {
    a.require_nonzero("fcs::expansion_coefficients");
    detail::require_targets_match(a, x, "fcs::expansion_coefficients");
    const std::size_t n_nodes = a.size();
    const std::vector<cplx> b_self = detail::self_products(a);

    std::vector<cplx> y(n_nodes);
    for (std::size_t k = 0; k < n_nodes; ++k) {
        const cplx ak = a[k].value();
        const double one_minus_ak2 = 1.0 - std::norm(ak);
        const cplx unit_k = std::abs(ak) / ak;
        detail::KahanCplx acc;
        for (std::size_t n = 0; n < n_nodes; ++n) {
            const cplx an = a[n].value();
            const cplx unit_n = an / std::abs(an);
            const cplx term = (1.0 - std::norm(an)) * one_minus_ak2 /
                              (b_self[n] * std::conj(b_self[k])) * (unit_n * unit_k) * x[n] /
                              (1.0 - std::conj(ak) * an);
            acc.add(term);
        }
        y[k] = acc.value();
    }
    return y;
}

// Multiplier interpolant for bounded data. The expanded (partial-fraction)
// form is the canonical representation; the direct form is kept as the
// independent evaluator the equivalence tests cross-check against.
class MultiplierInterpolant {
public:
    MultiplierInterpolant(NodeSequence nodes, std::vector<cplx> targets)
        : nodes_(std::move(nodes)), x_(std::move(targets)) {
        nodes_.require_nonzero("fcs::build_multiplier_interpolant");
        detail::require_targets_match(nodes_, x_, "fcs::build_multiplier_interpolant");
        detail::require_admissible_delta(nodes_, "fcs::build_multiplier_interpolant");
        b_self_ = detail::self_products(nodes_);
        y_ = expansion_coefficients(nodes_, x_);
        sup_x_ = 0.0;
        for (const cplx& v : x_) sup_x_ = std::max(sup_x_, std::abs(v));
    }

    const NodeSequence& nodes() const { return nodes_; }
    const std::vector<cplx>& targets() const { return x_; }
    const std::vector<cplx>& coefficients() const { return y_; }
    double sup_target() const { return sup_x_; }

    // Canonical evaluation: sum_k y_k / (1 - conj(a_k) z).
    cplx evaluate(cplx z) const {
        detail::KahanCplx acc;
        for (std::size_t k = 0; k < nodes_.size(); ++k)
            acc.add(y_[k] / (1.0 - std::conj(nodes_[k].value()) * z));
        return acc.value();
    }

    // Direct form, evaluable anywhere off the poles 1/conj(a_k).
    cplx direct_form(cplx z) const {
        detail::KahanCplx acc;
        for (std::size_t n = 0; n < nodes_.size(); ++n) {
            const cplx an = nodes_[n].value();
            acc.add((1.0 - std::norm(an)) / (1.0 - std::conj(an) * z) *
                    blaschke_product_excluding(nodes_, n, z) / b_self_[n] * x_[n]);
        }
        return acc.value();
    }

    // f'(z) = sum_k y_k conj(a_k) / (1 - conj(a_k) z)^2, exact from the
    // expanded form.
    cplx derivative(cplx z) const {
        detail::KahanCplx acc;
        for (std::size_t k = 0; k < nodes_.size(); ++k) {
            const cplx cak = std::conj(nodes_[k].value());
            const cplx den = 1.0 - cak * z;
            acc.add(y_[k] * cak / (den * den));
        }
        return acc.value();
    }

    cplx value_at_zero() const {
        detail::KahanCplx acc;
        for (const cplx& v : y_) acc.add(v);
        return acc.value();
    }

    RationalFamily expanded_family() const {
        std::vector<RationalFamily::Term> terms;
        terms.reserve(nodes_.size());
        for (std::size_t k = 0; k < nodes_.size(); ++k)
            terms.push_back({nodes_[k].value(), y_[k]});
        return RationalFamily(1.0, std::move(terms));
    }

private:
    NodeSequence nodes_;
    std::vector<cplx> x_, y_, b_self_;
    double sup_x_ = 0.0;
};

inline MultiplierInterpolant build_multiplier_interpolant(NodeSequence a, std::vector<cplx> x) {
    return MultiplierInterpolant(std::move(a), std::move(x));
}

// F_alpha interpolant for summable data, 0 < alpha <= 1.
class FAlphaInterpolant {
public:
    FAlphaInterpolant(NodeSequence nodes, std::vector<cplx> targets, double alpha)
        : alpha_(alpha), nodes_(std::move(nodes)), x_(std::move(targets)) {
        if (!(alpha_ > 0.0 && alpha_ <= 1.0))
            throw std::invalid_argument("fcs::build_f_alpha_interpolant: alpha must lie in (0, 1]");
        nodes_.require_nonzero("fcs::build_f_alpha_interpolant");
        detail::require_targets_match(nodes_, x_, "fcs::build_f_alpha_interpolant");
        detail::require_admissible_delta(nodes_, "fcs::build_f_alpha_interpolant");
        b_self_ = detail::self_products(nodes_);
    }

    double alpha() const { return alpha_; }
    const NodeSequence& nodes() const { return nodes_; }
    const std::vector<cplx>& targets() const { return x_; }

    cplx evaluate(cplx z) const {
        if (!(std::abs(z) < 1.0))
            throw std::domain_error("fcs::FAlphaInterpolant: |z| must be < 1");
        detail::KahanCplx acc;
        for (std::size_t n = 0; n < nodes_.size(); ++n) {
            const cplx an = nodes_[n].value();
            acc.add(blaschke_product_excluding(nodes_, n, z) /
                    principal_power(1.0 - std::conj(an) * z, alpha_) * x_[n] / b_self_[n]);
        }
        return acc.value();
    }

private:
    double alpha_;
    NodeSequence nodes_;
    std::vector<cplx> x_, b_self_;
};

inline FAlphaInterpolant build_f_alpha_interpolant(NodeSequence a, std::vector<cplx> x,
                                                   double alpha) {
    return FAlphaInterpolant(std::move(a), std::move(x), alpha);
}

struct YBoundEntry {
    double y_abs = 0.0;
    double bound = 0.0;   // (sigma_1/delta^2) ||x||_inf (1-|a_k|^2)
    double margin = 0.0;  // bound - |y_k|
};

struct YBoundReport {
    std::vector<YBoundEntry> entries;
    double min_margin = 0.0;
    bool all_hold = false;  // margin >= -1e-9 for every node
};

// Per-node check of the coefficient estimate
//   |y(a_k)| <= (sigma_1/delta^2) ||x||_inf (1-|a_k|^2).
// Pass the certified upper endpoint of sigma_1 to keep the check sound.
inline YBoundReport check_y_bound(const NodeSequence& a, std::span<const cplx> x,
                                  std::span<const cplx> y, double sigma1, double delta) {
    detail::require_targets_match(a, x, "fcs::check_y_bound");
    if (y.size() != a.size())
        throw std::domain_error("fcs::check_y_bound: y must match nodes in length");
    double sup_x = 0.0;
    for (const cplx& v : x) sup_x = std::max(sup_x, std::abs(v));

    YBoundReport rep;
    rep.entries.reserve(a.size());
    rep.min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < a.size(); ++k) {
        YBoundEntry e;
        e.y_abs = std::abs(y[k]);
        e.bound = sigma1 / (delta * delta) * sup_x * (1.0 - std::norm(a[k].value()));
        e.margin = e.bound - e.y_abs;
        rep.min_margin = std::min(rep.min_margin, e.margin);
        rep.entries.push_back(e);
    }
    rep.all_hold = rep.min_margin >= -1e-9;
    return rep;
}

struct InterpolationResiduals {
    std::vector<double> residuals;
    double max_residual = 0.0;
};

// |f(a_k) - x_k| through the direct form; the n = k term carries the whole
// value because B_n(a_k) vanishes exactly for n != k.
inline InterpolationResiduals verify_interpolation(const MultiplierInterpolant& f) {
    InterpolationResiduals r;
    const auto& a = f.nodes();
    r.residuals.reserve(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double res = std::abs(f.direct_form(a[k].value()) - f.targets()[k]);
        r.residuals.push_back(res);
        r.max_residual = std::max(r.max_residual, res);
    }
    return r;
}

// |g(a_k)(1-|a_k|^2)^alpha - x_k|.
inline InterpolationResiduals verify_interpolation(const FAlphaInterpolant& g) {
    InterpolationResiduals r;
    const auto& a = g.nodes();
    r.residuals.reserve(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double scale = std::pow(1.0 - std::norm(a[k].value()), g.alpha());
        const double res = std::abs(g.evaluate(a[k].value()) * scale - g.targets()[k]);
        r.residuals.push_back(res);
        r.max_residual = std::max(r.max_residual, res);
    }
    return r;
}

}  // namespace fcs
