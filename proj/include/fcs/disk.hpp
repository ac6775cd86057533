#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

// Complex primitives on the unit disk: Blaschke factors and products,
// the pseudo-hyperbolic metric, and principal fractional powers.

namespace fcs {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// Point in the open unit disk.
class DiskPoint {
public:
    explicit DiskPoint(cplx v) : v_(v) {
        if (!(std::abs(v) < 1.0))
            throw std::domain_error("fcs::DiskPoint: modulus must be < 1");
    }
    cplx value() const { return v_; }
    double modulus() const { return std::abs(v_); }

private:
    cplx v_;
};

// Point on the unit circle. The stored value is renormalized to unit
// modulus on construction so that boundary grids do not drift.
class BoundaryPoint {
public:
    explicit BoundaryPoint(cplx v) {
        const double m = std::abs(v);
        if (std::abs(m - 1.0) > 1e-12)
            throw std::domain_error("fcs::BoundaryPoint: modulus must be 1 within 1e-12");
        v_ = v / m;
    }
    static BoundaryPoint from_angle(double theta) {
        return BoundaryPoint(std::polar(1.0, theta));
    }
    cplx value() const { return v_; }
    double angle() const { return std::arg(v_); }

private:
    cplx v_;
};

// Finite ordered list of distinct disk points (the interpolation nodes).
// Zero nodes are legal here; Blaschke constructions reject them separately
// because the normalizer |a|/a is undefined at the origin.
class NodeSequence {
public:
    explicit NodeSequence(std::vector<DiskPoint> nodes) : nodes_(std::move(nodes)) {
        if (nodes_.empty())
            throw std::invalid_argument("fcs::NodeSequence: at least one node required");
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            for (std::size_t j = i + 1; j < nodes_.size(); ++j)
                if (nodes_[i].value() == nodes_[j].value())
                    throw std::domain_error("fcs::NodeSequence: duplicate node at indices " +
                                            std::to_string(i) + ", " + std::to_string(j));
    }
    static NodeSequence from_values(const std::vector<cplx>& vs) {
        std::vector<DiskPoint> pts;
        pts.reserve(vs.size());
        for (cplx v : vs) pts.emplace_back(v);
        return NodeSequence(std::move(pts));
    }

    std::size_t size() const { return nodes_.size(); }
    const DiskPoint& operator[](std::size_t i) const { return nodes_[i]; }
    const std::vector<DiskPoint>& points() const { return nodes_; }

    bool has_zero_node() const {
        for (const auto& p : nodes_)
            if (p.value() == cplx(0.0, 0.0)) return true;
        return false;
    }
    void require_nonzero(const char* who) const {
        if (has_zero_node())
            throw std::domain_error(std::string(who) +
                                    ": zero node not admissible (|a|/a undefined at 0)");
    }

private:
    std::vector<DiskPoint> nodes_;
};

// Normalized Blaschke factor (z-a)/(1-conj(a) z) * |a|/a.
// Defined for every z off the pole 1/conj(a); the pole is reachable only
// for |z| > 1.
inline cplx blaschke_factor(cplx z, const DiskPoint& a) {
    const cplx av = a.value();
    if (av == cplx(0.0, 0.0))
        throw std::domain_error("fcs::blaschke_factor: node must be nonzero");
    const cplx den = 1.0 - std::conj(av) * z;
    if (den == cplx(0.0, 0.0))
        throw std::domain_error("fcs::blaschke_factor: pole at z = 1/conj(a)");
    return (z - av) / den * (std::abs(av) / av);
}

// Pseudo-hyperbolic distance |z-w| / |1 - conj(w) z|, in [0,1).
inline double pseudo_hyperbolic(const DiskPoint& z, const DiskPoint& w) {
    return std::abs(z.value() - w.value()) / std::abs(1.0 - std::conj(w.value()) * z.value());
}

// Principal branch of w^alpha on the right half-plane, alpha > 0.
// Every kernel base 1 - conj(xi) z with |xi| <= 1, |z| < 1 lands here.
inline cplx principal_power(cplx w, double alpha) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("fcs::principal_power: alpha must be positive");
    if (!(w.real() > 0.0))
        throw std::domain_error("fcs::principal_power: Re(w) must be positive");
    return std::exp(alpha * std::log(w));
}

// B_n(z): product of Blaschke factors over all nodes except the n-th
// (0-based). Empty product (single node) is 1.
inline cplx blaschke_product_excluding(const NodeSequence& a, std::size_t n, cplx z) {
    if (n >= a.size())
        throw std::out_of_range("fcs::blaschke_product_excluding: index out of range");
    a.require_nonzero("fcs::blaschke_product_excluding");
    cplx prod(1.0, 0.0);
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (k == n) continue;
        prod *= blaschke_factor(z, a[k]);
    }
    return prod;
}

namespace detail {

// Neumaier compensated accumulators. Partial-fraction sums can carry
// coefficients many orders above the result; plain summation would leak
// that scale into the error.
struct KahanReal {
    double s = 0.0, c = 0.0;
    void add(double x) {
        const double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double value() const { return s + c; }
};

struct KahanCplx {
    KahanReal re, im;
    void add(cplx x) {
        re.add(x.real());
        im.add(x.imag());
    }
    cplx value() const { return {re.value(), im.value()}; }
};

}  // namespace detail

}  // namespace fcs
