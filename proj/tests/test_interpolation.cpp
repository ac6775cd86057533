#include <catch_amalgamated.hpp>

#include "fcs/interpolation.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using fcs::cplx;
using fcs::DiskPoint;
using fcs::MultiplierInterpolant;
using fcs::FAlphaInterpolant;
using fcs::NodeSequence;
using Catch::Matchers::WithinAbs;

namespace {

// |a - b| <= tol * scale, with the scale floored at 1 and at a fraction of
// the coefficient mass: double precision cannot localize a partial-fraction
// sum below eps times the size of its terms.
void check_close_scaled(cplx a, cplx b, double tol, double extra_scale = 0.0) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b), 1e-3 * extra_scale});
    CHECK(std::abs(a - b) <= tol * scale);
}

double coeff_mass(const std::vector<cplx>& y) {
    double s = 0.0;
    for (const cplx& v : y) s += std::abs(v);
    return s;
}

}  // namespace

TEST_CASE("single-node expansion coefficients", "[interpolation]") {
    const NodeSequence a = NodeSequence::from_values({{0.5, 0.0}});
    const auto y = fcs::expansion_coefficients(a, std::vector<cplx>{cplx(1.0, 0.0)});
    REQUIRE(y.size() == 1);
    CHECK_THAT(std::abs(y[0] - 0.75), WithinAbs(0.0, 1e-15));

    const auto zero = fcs::expansion_coefficients(a, std::vector<cplx>{cplx(0.0, 0.0)});
    CHECK(zero[0] == cplx(0.0, 0.0));
}

TEST_CASE("multiplier interpolant hand values", "[interpolation]") {
    const MultiplierInterpolant single(NodeSequence::from_values({{0.5, 0.0}}),
                                       {cplx(1.0, 0.0)});
    CHECK_THAT(std::abs(single.evaluate(0.5) - 1.0), WithinAbs(0.0, 1e-14));
    CHECK_THAT(std::abs(single.evaluate(0.0) - 0.75), WithinAbs(0.0, 1e-14));

    const MultiplierInterpolant pair(NodeSequence::from_values({{0.5, 0.0}, {-0.5, 0.0}}),
                                     {cplx(1.0, 0.0), cplx(0.0, 0.0)});
    CHECK_THAT(std::abs(pair.evaluate(0.0) - 0.46875), WithinAbs(0.0, 1e-13));
    CHECK_THAT(std::abs(pair.direct_form(0.0) - 0.46875), WithinAbs(0.0, 1e-13));

    const MultiplierInterpolant both(NodeSequence::from_values({{0.5, 0.0}, {-0.5, 0.0}}),
                                     {cplx(1.0, 0.0), cplx(1.0, 0.0)});
    CHECK_THAT(std::abs(both.direct_form(0.5) - 1.0), WithinAbs(0.0, 1e-12));
    CHECK_THAT(std::abs(both.direct_form(-0.5) - 1.0), WithinAbs(0.0, 1e-12));
}

TEST_CASE("interpolant construction errors", "[interpolation]") {
    CHECK_THROWS_AS(MultiplierInterpolant(NodeSequence::from_values({{0.0, 0.0}}),
                                          {cplx(1.0, 0.0)}),
                    std::domain_error);
    CHECK_THROWS_AS(MultiplierInterpolant(NodeSequence::from_values({{0.5, 0.0}}),
                                          {cplx(1.0, 0.0), cplx(2.0, 0.0)}),
                    std::domain_error);
    // delta below the 1e-6 admissibility floor
    CHECK_THROWS_AS(MultiplierInterpolant(
                        NodeSequence::from_values({{0.5, 0.0}, {0.5 + 1e-9, 0.0}}),
                        {cplx(1.0, 0.0), cplx(2.0, 0.0)}),
                    std::domain_error);
}

TEST_CASE("expansion coefficients match the residue oracle", "[interpolation]") {
    {
        const NodeSequence a = NodeSequence::from_values({{0.5, 0.0}, {-0.5, 0.0}});
        const std::vector<cplx> x{cplx(1.0, 0.0), cplx(0.0, 0.0)};
        const auto y = fcs::expansion_coefficients(a, x);
        const auto yo = oracle::residue_coefficients(a, x);
        for (std::size_t k = 0; k < y.size(); ++k)
            CHECK_THAT(std::abs(y[k] - yo[k]), WithinAbs(0.0, 1e-12));
    }
    testutil::Draw d(41);
    for (int rep = 0; rep < 12; ++rep) {
        const NodeSequence a = d.nodes(1 + rep % 10, 0.93);
        const std::vector<cplx> x = d.targets(static_cast<int>(a.size()));
        const auto y = fcs::expansion_coefficients(a, x);
        const auto yo = oracle::residue_coefficients(a, x);
        double mass = coeff_mass(yo);
        for (std::size_t k = 0; k < y.size(); ++k)
            check_close_scaled(y[k], yo[k], 1e-9, mass);
    }
}

TEST_CASE("direct and expanded forms agree on the disk", "[interpolation]") {
    testutil::Draw d(42);
    for (int rep = 0; rep < 10; ++rep) {
        const NodeSequence a = d.nodes(1 + rep % 12, 0.95);
        const std::vector<cplx> x = d.targets(static_cast<int>(a.size()));
        const MultiplierInterpolant f(a, x);
        const double mass = coeff_mass(f.coefficients());
        for (int i = 0; i < 100; ++i) {
            const cplx z = d.in_disk(0.99);
            check_close_scaled(f.evaluate(z), f.direct_form(z), 1e-9, mass);
        }
    }
}

TEST_CASE("interpolation property holds at the nodes", "[interpolation]") {
    testutil::Draw d(43);
    for (int rep = 0; rep < 25; ++rep) {
        const NodeSequence a = d.nodes(1 + rep % 12, 0.95);
        const std::vector<cplx> x = d.targets(static_cast<int>(a.size()));
        const MultiplierInterpolant f(a, x);
        CHECK(fcs::verify_interpolation(f).max_residual <= 1e-9);
    }
}

TEST_CASE("construction is linear in the data", "[interpolation]") {
    testutil::Draw d(44);
    const NodeSequence a = d.nodes(6, 0.9);
    const auto x1 = d.targets(6), x2 = d.targets(6);
    std::vector<cplx> sum(6);
    for (int i = 0; i < 6; ++i) sum[i] = x1[i] + x2[i];
    const MultiplierInterpolant f1(a, x1), f2(a, x2), fsum(a, sum);
    const double mass = coeff_mass(f1.coefficients()) + coeff_mass(f2.coefficients());
    for (int i = 0; i < 50; ++i) {
        const cplx z = d.in_disk(0.95);
        check_close_scaled(fsum.evaluate(z), f1.evaluate(z) + f2.evaluate(z), 1e-12, mass);
    }
}

TEST_CASE("zero data gives the zero function", "[interpolation]") {
    testutil::Draw d(45);
    const NodeSequence a = d.nodes(5, 0.9);
    const MultiplierInterpolant f(a, std::vector<cplx>(5, cplx(0.0, 0.0)));
    for (const cplx& y : f.coefficients()) CHECK(y == cplx(0.0, 0.0));
    CHECK(f.evaluate(cplx(0.3, 0.2)) == cplx(0.0, 0.0));
}

TEST_CASE("rotation equivariance of the construction", "[interpolation]") {
    testutil::Draw d(46);
    for (int rep = 0; rep < 10; ++rep) {
        const NodeSequence a = d.nodes(5, 0.9);
        const std::vector<cplx> x = d.targets(5);
        const cplx rot = d.on_circle();
        std::vector<cplx> rotated;
        for (const auto& p : a.points()) rotated.push_back(rot * p.value());
        const MultiplierInterpolant f(a, x);
        const MultiplierInterpolant g(NodeSequence::from_values(rotated), x);
        const double mass = coeff_mass(f.coefficients());
        for (int i = 0; i < 30; ++i) {
            const cplx z = d.in_disk(0.95);
            check_close_scaled(g.evaluate(z), f.evaluate(std::conj(rot) * z), 1e-12, mass);
        }
    }
}

TEST_CASE("coefficient bound holds with certified sigma_1", "[interpolation]") {
    // single node: |y| = 0.75 against bound (1.5/1)*1*0.75 = 1.125
    {
        const NodeSequence a = NodeSequence::from_values({{0.5, 0.0}});
        const std::vector<cplx> x{cplx(1.0, 0.0)};
        const auto y = fcs::expansion_coefficients(a, x);
        const auto rep = fcs::check_y_bound(a, x, y, 1.5, 1.0);
        CHECK(rep.all_hold);
        CHECK_THAT(rep.entries[0].bound, WithinAbs(1.125, 1e-12));
        CHECK_THAT(rep.entries[0].margin, WithinAbs(0.375, 1e-12));
    }
    // zero data: margins equal the bounds
    {
        const NodeSequence a = NodeSequence::from_values({{0.3, 0.2}, {-0.4, 0.1}});
        const std::vector<cplx> x(2, cplx(0.0, 0.0));
        const auto y = fcs::expansion_coefficients(a, x);
        const auto rep = fcs::check_y_bound(a, x, y, 2.0, 0.5);
        CHECK(rep.all_hold);
        for (const auto& e : rep.entries) CHECK(e.margin == e.bound);
    }
    testutil::Draw d(47);
    for (int rep_i = 0; rep_i < 15; ++rep_i) {
        const NodeSequence a = d.nodes(1 + rep_i % 12, 0.95);
        const std::vector<cplx> x = d.targets(static_cast<int>(a.size()));
        const auto y = fcs::expansion_coefficients(a, x);
        const double delta = fcs::carleson_delta(a);
        const double sigma1 = fcs::sigma_alpha(a, 1.0, 2048).upper();
        CHECK(fcs::check_y_bound(a, x, y, sigma1, delta).all_hold);
    }
}

TEST_CASE("f_alpha interpolant hand values", "[interpolation]") {
    const FAlphaInterpolant single(NodeSequence::from_values({{0.5, 0.0}}), {cplx(1.0, 0.0)}, 0.5);
    // g(z) = (1 - 0.5 z)^{-1/2}; trace at the node recovers the target
    const cplx at_node = single.evaluate(0.5) * std::pow(0.75, 0.5);
    CHECK_THAT(std::abs(at_node - 1.0), WithinAbs(0.0, 1e-14));

    const FAlphaInterpolant pair(NodeSequence::from_values({{0.5, 0.0}, {-0.5, 0.0}}),
                                 {cplx(1.0, 0.0), cplx(0.0, 0.0)}, 1.0);
    CHECK(pair.evaluate(-0.5) * 0.75 == cplx(0.0, 0.0));  // Blaschke zero is exact

    CHECK_THROWS_AS(FAlphaInterpolant(NodeSequence::from_values({{0.5, 0.0}}),
                                      {cplx(1.0, 0.0)}, 1.5),
                    std::invalid_argument);
}

TEST_CASE("f_alpha trace equalities across alpha", "[interpolation]") {
    testutil::Draw d(48);
    for (int rep = 0; rep < 15; ++rep) {
        const NodeSequence a = d.nodes(1 + rep % 12, 0.95);
        const std::vector<cplx> x = d.targets(static_cast<int>(a.size()));
        for (double alpha : {0.25, 0.5, 1.0}) {
            const FAlphaInterpolant g(a, x, alpha);
            CHECK(fcs::verify_interpolation(g).max_residual <= 1e-9);
        }
    }
}
