#pragma once

#include <cstdint>
#include <ostream>
#include <random>
#include <stdexcept>
#include <vector>

#include "fcs/conditions.hpp"
#include "fcs/disk.hpp"
#include "fcs/format.hpp"
#include "fcs/interpolation.hpp"
#include "fcs/multiplier.hpp"
#include "fcs/parallel.hpp"

// Seeded random sweeps over admissible configurations. Instances are
// generated serially from a single deterministic stream; rows are computed
// in parallel into preassigned slots, so output bytes depend only on the
// seed and the settings.

namespace fcs {

// Uniform doubles derived directly from mt19937_64 output; the standard
// distributions are implementation-defined, which would break the
// byte-stability contract across toolchains.
class SweepRng {
public:
    explicit SweepRng(std::uint64_t seed) : gen_(seed) {}
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    cplx in_disk(double radius_cap) {
        const double r = radius_cap * std::sqrt(uniform());
        return std::polar(r, uniform(0.0, 2.0 * pi));
    }

private:
    std::mt19937_64 gen_;
};

struct SweepConfig {
    std::uint64_t seed = 1;
    int count = 20;
    int n_min = 1;
    int n_max = 12;
    double radius_cap = 0.9;
    std::vector<double> alphas{0.25, 0.5, 0.75, 1.0};
    double min_delta = 1e-3;   // rejection-sampling floor; keeps coefficient-bound margins meaningful
    double target_cap = 10.0;  // ||x||_inf cap
    int sigma_grid = 2048;
    int xi_grid = 16;
    QuadratureSpec quad{8, 8, 8, 4, 1e-4};

    void validate() const {
        if (count < 1) throw std::invalid_argument("fcs::SweepConfig: count must be >= 1");
        if (n_min < 1 || n_max < n_min)
            throw std::invalid_argument("fcs::SweepConfig: need 1 <= n_min <= n_max");
        if (!(radius_cap > 0.0 && radius_cap <= 0.95))
            throw std::invalid_argument("fcs::SweepConfig: radius_cap must lie in (0, 0.95]");
        if (!(min_delta > 0.0))
            throw std::invalid_argument("fcs::SweepConfig: min_delta must be positive");
        if (alphas.empty())
            throw std::invalid_argument("fcs::SweepConfig: alpha list must be nonempty");
        for (double al : alphas)
            if (!(al > 0.0 && al <= 1.0))
                throw std::invalid_argument("fcs::SweepConfig: alphas must lie in (0, 1]");
        if (sigma_grid < 16) throw std::invalid_argument("fcs::SweepConfig: sigma_grid too small");
        if (xi_grid < 1) throw std::invalid_argument("fcs::SweepConfig: xi_grid must be positive");
        quad.validate();
    }
};

struct SweepInstance {
    NodeSequence nodes;
    std::vector<cplx> x_linf;          // bounded data for the multiplier construction
    std::vector<cplx> x_l1;            // summable data for the F_alpha construction
    double alpha = 0.5;
    std::vector<cplx> check_points;    // 100 interior points for the two-form comparison
};

inline SweepInstance generate_instance(SweepRng& rng, const SweepConfig& cfg, double alpha) {
    const int span = cfg.n_max - cfg.n_min + 1;
    const int n = cfg.n_min + std::min(span - 1, static_cast<int>(rng.uniform() * span));

    std::vector<cplx> nodes;
    for (int attempt = 0;; ++attempt) {
        if (attempt > 100000)
            throw std::runtime_error("fcs::generate_instance: no admissible node set found "
                                     "(min_delta too demanding for this geometry)");
        nodes.clear();
        bool ok = true;
        for (int k = 0; k < n && ok; ++k) {
            cplx z = rng.in_disk(cfg.radius_cap);
            while (z == cplx(0.0, 0.0)) z = rng.in_disk(cfg.radius_cap);
            for (const cplx& prev : nodes)
                if (prev == z) ok = false;
            nodes.push_back(z);
        }
        if (!ok) continue;
        NodeSequence seq = NodeSequence::from_values(nodes);
        if (carleson_delta(seq) >= cfg.min_delta) {
            SweepInstance inst{std::move(seq), {}, {}, alpha, {}};
            for (int k = 0; k < n; ++k)
                inst.x_linf.push_back(std::polar(cfg.target_cap * std::sqrt(rng.uniform()),
                                                 rng.uniform(0.0, 2.0 * pi)));
            for (int k = 0; k < n; ++k)
                inst.x_l1.push_back(std::polar(cfg.target_cap * std::sqrt(rng.uniform()),
                                               rng.uniform(0.0, 2.0 * pi)));
            for (int k = 0; k < 100; ++k) inst.check_points.push_back(rng.in_disk(0.99));
            return inst;
        }
    }
}

inline std::vector<SweepInstance> generate_instances(const SweepConfig& cfg) {
    cfg.validate();
    SweepRng rng(cfg.seed);
    std::vector<SweepInstance> out;
    out.reserve(cfg.count);
    for (int i = 0; i < cfg.count; ++i)
        out.push_back(generate_instance(rng, cfg, cfg.alphas[i % cfg.alphas.size()]));
    return out;
}

struct SweepRow {
    int n = 0;
    double alpha = 0.0;
    double delta = 0.0;
    double sigma_alpha_value = 0.0;
    double max_residual = 0.0;             // max |f(a_k) - x_k|, direct form
    double y_bound_margin = 0.0;           // min over nodes of bound - |y_k|
    double two_form_max_discrepancy = 0.0; // max |direct - expanded| over check points
    double sup_bound = 0.0;                // bound pipeline (alpha < 1) or Vinogradov (alpha = 1)
};

inline SweepRow compute_sweep_row(const SweepInstance& inst, const SweepConfig& cfg) {
    SweepRow row;
    row.n = static_cast<int>(inst.nodes.size());
    row.alpha = inst.alpha;

    const ConditionReport cond = check_conditions(inst.nodes, inst.alpha, cfg.sigma_grid);
    row.delta = cond.delta;
    row.sigma_alpha_value = cond.sigma.value;

    const MultiplierInterpolant f(inst.nodes, inst.x_linf);
    row.max_residual = verify_interpolation(f).max_residual;

    const SigmaResult sigma1 =
        (inst.alpha == 1.0) ? cond.sigma : sigma_alpha(inst.nodes, 1.0, cfg.sigma_grid);
    row.y_bound_margin = check_y_bound(inst.nodes, inst.x_linf, f.coefficients(), sigma1.upper(),
                                   cond.delta)
                         .min_margin;

    for (const cplx& z : inst.check_points)
        row.two_form_max_discrepancy =
            std::max(row.two_form_max_discrepancy, std::abs(f.evaluate(z) - f.direct_form(z)));

    if (inst.alpha < 1.0) {
        const BoundReport b =
            multiplier_norm_bound(f, inst.alpha, cfg.xi_grid, cfg.quad, cond, 0.0);
        row.sup_bound = b.sup_bound;
    } else {
        row.sup_bound = vinogradov_m1_bound(cond, f.sup_target());
    }
    return row;
}

inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    const std::vector<SweepInstance> instances = generate_instances(cfg);
    std::vector<SweepRow> rows(instances.size());
    // multiplier_norm_bound already parallelizes per xi; rows stay serial
    // on top of that to keep thread use bounded.
    for (std::size_t i = 0; i < instances.size(); ++i)
        rows[i] = compute_sweep_row(instances[i], cfg);
    return rows;
}

inline void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& os) {
    os << "n,alpha,delta,sigma_alpha,max_residual,y_bound_margin,two_form_max_discrepancy,sup_bound\n";
    for (const SweepRow& r : rows) {
        os << format_int(r.n) << ',' << format_double(r.alpha) << ',' << format_double(r.delta)
           << ',' << format_double(r.sigma_alpha_value) << ',' << format_double(r.max_residual)
           << ',' << format_double(r.y_bound_margin) << ','
           << format_double(r.two_form_max_discrepancy) << ',' << format_double(r.sup_bound)
           << '\n';
    }
}

}  // namespace fcs
