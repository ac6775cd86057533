#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fcs/conditions.hpp"
#include "fcs/disk.hpp"
#include "fcs/quadrature.hpp"

// Discrete fractional Cauchy-Stieltjes transforms and the executable
// pieces of the norm machinery: the Omega functional, the derivative-based
// F_alpha bound, the forward trace, and the empirical kernel-integral constant.

namespace fcs {

struct MeasureAtom {
    BoundaryPoint xi;
    cplx c;
};

// Finitely-atomic boundary measure. Zero-mass atoms are dropped so that
// norm() == 0 exactly characterizes the empty measure.
class DiscreteMeasure {
public:
    DiscreteMeasure() = default;
    explicit DiscreteMeasure(std::vector<MeasureAtom> atoms) {
        for (auto& a : atoms)
            if (a.c != cplx(0.0, 0.0)) atoms_.push_back(a);
        for (std::size_t i = 0; i < atoms_.size(); ++i)
            for (std::size_t j = i + 1; j < atoms_.size(); ++j)
                if (std::abs(atoms_[i].xi.value() - atoms_[j].xi.value()) < 1e-12)
                    throw std::domain_error("fcs::DiscreteMeasure: atoms must sit at distinct boundary points");
    }

    const std::vector<MeasureAtom>& atoms() const { return atoms_; }
    bool empty() const { return atoms_.empty(); }
    std::size_t size() const { return atoms_.size(); }

    double norm() const {
        double s = 0.0;
        for (const auto& a : atoms_) s += std::abs(a.c);
        return s;
    }

private:
    std::vector<MeasureAtom> atoms_;
};

// g(z) = sum_j c_j (1 - conj(xi_j) z)^{-alpha}, holomorphic on the disk.
class FractionalTransform {
public:
    FractionalTransform(double alpha, DiscreteMeasure mu)
        : alpha_(alpha), mu_(std::move(mu)) {
        if (!(alpha_ > 0.0))
            throw std::invalid_argument("fcs::FractionalTransform: alpha must be positive");
    }

    double alpha() const { return alpha_; }
    const DiscreteMeasure& measure() const { return mu_; }

    cplx evaluate(cplx z) const {
        if (!(std::abs(z) < 1.0))
            throw std::domain_error("fcs::FractionalTransform: |z| must be < 1");
        detail::KahanCplx acc;
        for (const auto& a : mu_.atoms())
            acc.add(a.c / principal_power(1.0 - std::conj(a.xi.value()) * z, alpha_));
        return acc.value();
    }

private:
    double alpha_;
    DiscreteMeasure mu_;
};

// Finite sum of kernels with pole bases anywhere in the closed disk:
// sum_k c_k (1 - conj(w_k) z)^{-beta}, |w_k| <= 1.
class RationalFamily {
public:
    struct Term {
        cplx base;  // w_k
        cplx c;
    };

    RationalFamily(double beta, std::vector<Term> terms)
        : beta_(beta), terms_(std::move(terms)) {
        if (!(beta_ > 0.0))
            throw std::invalid_argument("fcs::RationalFamily: beta must be positive");
        for (const auto& t : terms_)
            if (std::abs(t.base) > 1.0 + 1e-12)
                throw std::domain_error("fcs::RationalFamily: pole base must satisfy |w| <= 1");
    }

    double beta() const { return beta_; }
    const std::vector<Term>& terms() const { return terms_; }

    cplx evaluate(cplx z) const {
        if (!(std::abs(z) < 1.0))
            throw std::domain_error("fcs::RationalFamily: |z| must be < 1");
        detail::KahanCplx acc;
        for (const auto& t : terms_) {
            const cplx den = 1.0 - std::conj(t.base) * z;
            if (beta_ == 1.0)
                acc.add(t.c / den);
            else if (beta_ == 2.0)
                acc.add(t.c / (den * den));
            else
                acc.add(t.c / principal_power(den, beta_));
        }
        return acc.value();
    }

private:
    double beta_;
    std::vector<Term> terms_;
};

// For atoms, d/dz (1 - conj(xi) z)^{-alpha} = alpha conj(xi) (1 - conj(xi) z)^{-(alpha+1)}.
inline FractionalTransform differentiate(const FractionalTransform& t) {
    std::vector<MeasureAtom> atoms;
    atoms.reserve(t.measure().size());
    for (const auto& a : t.measure().atoms())
        atoms.push_back({a.xi, t.alpha() * a.c * std::conj(a.xi.value())});
    return FractionalTransform(t.alpha() + 1.0, DiscreteMeasure(std::move(atoms)));
}

// The atom masses witness the representation, so ||g||_{F_alpha} <= sum |c_j|.
// Never claimed tight (the norm is an infimum over all representing measures).
inline double norm_upper_bound(const FractionalTransform& t) { return t.measure().norm(); }

// Omega(f) = int_0^1 int_{-pi}^{pi} |f(r e^{i theta})| (1-r)^{alpha-1} dtheta dr.
// Finiteness pushes f into F_{alpha+1} with ||f|| <= (alpha/2pi) Omega(f).
template <class F>
OmegaResult omega(F&& f, double alpha, const QuadratureSpec& q,
                  std::span<const double> singular_angles = {}) {
    return weighted_modulus_integral(std::forward<F>(f), alpha, q, singular_angles);
}

struct DerivativeBoundReport {
    double bound = 0.0;       // |f(0)| + (1/pi) Omega(f')
    double f0_term = 0.0;
    double omega_term = 0.0;  // (2/alpha) * (alpha/2pi) * Omega(f')
    OmegaResult omega_fprime;
};

// ||f||_{F_alpha} <= |f(0)| + (2/alpha) ||f'||_{F_{alpha+1}} combined with
// ||f'||_{F_{alpha+1}} <= (alpha/2pi) Omega(f'). The derivative evaluator is
// cross-checked against central differences of f before being trusted.
template <class F, class DF>
DerivativeBoundReport f_alpha_bound_via_derivative(F&& f, DF&& df, double alpha,
                                                   const QuadratureSpec& q,
                                                   std::span<const double> singular_angles = {}) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("fcs::f_alpha_bound_via_derivative: alpha must be positive");
    const cplx probes[] = {{0.1, 0.2}, {-0.35, 0.05}, {0.4, -0.3}, {-0.15, -0.45}, {0.55, 0.0}};
    const double h = 1e-5;
    for (cplx z : probes) {
        const cplx fd = (f(z + h) - f(z - h)) / (2.0 * h);
        const cplx dv = df(z);
        if (std::abs(fd - dv) > 1e-6 * std::max(1.0, std::abs(dv)))
            throw std::invalid_argument(
                "fcs::f_alpha_bound_via_derivative: derivative evaluator disagrees with finite differences");
    }

    DerivativeBoundReport rep;
    rep.omega_fprime = omega(df, alpha, q, singular_angles);
    rep.f0_term = std::abs(f(cplx(0.0, 0.0)));
    rep.omega_term = rep.omega_fprime.value / pi;
    rep.bound = rep.f0_term + rep.omega_term;
    return rep;
}

struct ForwardTrace {
    std::vector<cplx> values;  // g(a_k) (1-|a_k|^2)^alpha
    double l1_sum = 0.0;
};

// Scaled node trace; l1_sum is at most ||mu|| sigma_alpha(a).
inline ForwardTrace forward_trace(const FractionalTransform& t, const NodeSequence& a) {
    ForwardTrace tr;
    tr.values.reserve(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double scale = std::pow(1.0 - std::norm(a[k].value()), t.alpha());
        const cplx v = t.evaluate(a[k].value()) * scale;
        tr.values.push_back(v);
        tr.l1_sum += std::abs(v);
    }
    return tr;
}

struct KernelRatioResult {
    double ratio = 0.0;
    double lhs = 0.0;  // the double integral, by quadrature
    double rhs = 0.0;  // E-free closed form (1-|z|)^{alpha-1} |1-conj(xi) z|^{-alpha}
    bool converged = false;
};

// Ratio of the weighted kernel double integral to its closed-form majorant;
// the sup of this ratio over a sample grid is the empirical constant E.
inline KernelRatioResult kernel_integral_ratio(const DiskPoint& z, const BoundaryPoint& xi,
                                               double alpha, const QuadratureSpec& q) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("fcs::kernel_integral_ratio: alpha must lie in (0, 1]");
    const cplx zc = std::conj(z.value());
    const cplx xc = std::conj(xi.value());
    const auto f = [&](cplx w) {
        const cplx d1 = 1.0 - zc * w;
        return 1.0 / (d1 * d1 * principal_power(1.0 - xc * w, alpha));
    };
    std::vector<double> angles{xi.angle()};
    if (std::abs(z.value()) > 0.0) angles.push_back(std::arg(z.value()));

    KernelRatioResult r;
    const OmegaResult o = omega(f, alpha, q, angles);
    r.lhs = o.value;
    r.converged = o.converged;
    r.rhs = std::pow(1.0 - z.modulus(), alpha - 1.0) /
            std::pow(std::abs(1.0 - xc * z.value()), alpha);
    r.ratio = r.lhs / r.rhs;
    return r;
}

struct EHatResult {
    double value = 0.0;
    bool all_converged = true;
};

// E_hat = max ratio over the sample set; monotone in the set by construction.
inline EHatResult estimate_kernel_constant(
    std::span<const std::pair<DiskPoint, BoundaryPoint>> samples, double alpha,
    const QuadratureSpec& q) {
    if (samples.empty())
        throw std::invalid_argument("fcs::estimate_kernel_constant: sample list must be nonempty");
    EHatResult e;
    for (const auto& [z, xi] : samples) {
        const KernelRatioResult r = kernel_integral_ratio(z, xi, alpha, q);
        e.value = std::max(e.value, r.ratio);
        e.all_converged = e.all_converged && r.converged;
    }
    return e;
}

// The default sample policy: radii {0, 0.5, 0.9, 0.99} x 16 z-angles x 8 xi
// values (a single z at the origin; angles collapse there).
inline std::vector<std::pair<DiskPoint, BoundaryPoint>> default_kernel_samples() {
    std::vector<std::pair<DiskPoint, BoundaryPoint>> s;
    const double radii[] = {0.0, 0.5, 0.9, 0.99};
    for (double rad : radii) {
        const int z_angles = (rad == 0.0) ? 1 : 16;
        for (int j = 0; j < z_angles; ++j) {
            const DiskPoint z(std::polar(rad, 2.0 * pi * j / z_angles));
            for (int m = 0; m < 8; ++m)
                s.emplace_back(z, BoundaryPoint::from_angle(2.0 * pi * m / 8.0));
        }
    }
    return s;
}

}  // namespace fcs
