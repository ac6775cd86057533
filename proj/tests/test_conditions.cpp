#include <catch_amalgamated.hpp>

#include "fcs/conditions.hpp"
#include "test_util.hpp"

using fcs::cplx;
using fcs::NodeSequence;
using fcs::BoundaryPoint;
using Catch::Matchers::WithinAbs;

TEST_CASE("carleson delta hand values", "[conditions]") {
    CHECK(fcs::carleson_delta(NodeSequence::from_values({{0.5, 0.0}})) == 1.0);
    CHECK_THAT(fcs::carleson_delta(NodeSequence::from_values({{0.5, 0.0}, {-0.5, 0.0}})),
               WithinAbs(0.8, 1e-14));
    CHECK_THROWS_AS(NodeSequence::from_values({{0.5, 0.0}, {0.5, 0.0}}), std::domain_error);
}

TEST_CASE("carleson delta log-space computation matches direct products", "[conditions]") {
    testutil::Draw d(21);
    for (int rep = 0; rep < 20; ++rep) {
        const NodeSequence a = d.nodes(6, 0.9, 1e-4);
        double direct = std::numeric_limits<double>::infinity();
        for (std::size_t n = 0; n < a.size(); ++n) {
            double p = 1.0;
            for (std::size_t k = 0; k < a.size(); ++k)
                if (k != n) p *= fcs::pseudo_hyperbolic(a[k], a[n]);
            direct = std::min(direct, p);
        }
        const double val = fcs::carleson_delta(a);
        CHECK_THAT(val, WithinAbs(direct, 1e-12 * direct));
        // the min never exceeds any fixed-n product
        for (std::size_t n = 0; n < a.size(); ++n) {
            double p = 1.0;
            for (std::size_t k = 0; k < a.size(); ++k)
                if (k != n) p *= fcs::pseudo_hyperbolic(a[k], a[n]);
            CHECK(val <= p * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("sigma profile hand values", "[conditions]") {
    const BoundaryPoint one = BoundaryPoint::from_angle(0.0);
    CHECK_THAT(fcs::sigma_profile(NodeSequence::from_values({{0.0, 0.0}}), 0.5, one),
               WithinAbs(1.0, 1e-15));
    CHECK_THAT(fcs::sigma_profile(NodeSequence::from_values({{0.9, 0.0}}), 1.0, one),
               WithinAbs(1.9, 1e-12));
    CHECK_THAT(fcs::sigma_profile(NodeSequence::from_values({{0.9, 0.0}}), 0.5, one),
               WithinAbs(std::sqrt(1.9), 1e-12));
}

TEST_CASE("sigma_alpha certifies the sup", "[conditions]") {
    // single node at the origin: profile is 1 everywhere, L = 0
    const auto at_zero = fcs::sigma_alpha(NodeSequence::from_values({{0.0, 0.0}}), 1.0, 64);
    CHECK(at_zero.value == 1.0);
    CHECK(at_zero.certified_error == 0.0);

    // profile of {0.9} peaks at xi = 1, which lies on every grid
    const auto near_boundary = fcs::sigma_alpha(NodeSequence::from_values({{0.9, 0.0}}), 1.0, 4096);
    CHECK_THAT(near_boundary.value, WithinAbs(1.9, 1e-12));
    CHECK(near_boundary.certified_error > 0.0);

    const auto pair = fcs::sigma_alpha(NodeSequence::from_values({{0.5, 0.0}, {-0.5, 0.0}}), 1.0, 4096);
    CHECK_THAT(pair.value, WithinAbs(2.0, 1e-12));

    CHECK_THROWS_AS(fcs::sigma_alpha(NodeSequence::from_values({{0.5, 0.0}}), 1.0, 8),
                    std::invalid_argument);
}

TEST_CASE("sigma_alpha nested refinement brackets monotonically", "[conditions]") {
    testutil::Draw d(22);
    for (int rep = 0; rep < 10; ++rep) {
        const NodeSequence a = d.nodes(1 + rep % 8, 0.93);
        const double alpha = (rep % 2) ? 1.0 : 0.5;
        double prev_value = 0.0, prev_err = std::numeric_limits<double>::infinity();
        for (int grid : {64, 256, 1024, 4096}) {
            const auto s = fcs::sigma_alpha(a, alpha, grid);
            CHECK(s.value >= prev_value);                  // nested grids, exact
            CHECK(s.certified_error <= prev_err / 4.0 * (1.0 + 1e-12));
            prev_value = s.value;
            prev_err = s.certified_error;
        }
    }
}

TEST_CASE("sigma_alpha is monotone under appending a node", "[conditions]") {
    testutil::Draw d(23);
    for (int rep = 0; rep < 20; ++rep) {
        const NodeSequence a = d.nodes(5, 0.9);
        std::vector<cplx> extended;
        for (const auto& p : a.points()) extended.push_back(p.value());
        cplx extra = d.in_disk(0.9);
        bool dup = false;
        for (const cplx& v : extended) dup = dup || v == extra;
        if (dup) continue;
        extended.push_back(extra);
        const double alpha = d.uniform(0.2, 1.0);
        const auto before = fcs::sigma_alpha(a, alpha, 512);
        const auto after = fcs::sigma_alpha(NodeSequence::from_values(extended), alpha, 512);
        CHECK(after.value >= before.value);
    }
}

TEST_CASE("delta and sigma are rotation invariant", "[conditions]") {
    testutil::Draw d(24);
    for (int rep = 0; rep < 15; ++rep) {
        const NodeSequence a = d.nodes(6, 0.9);
        const cplx rot = d.on_circle();
        std::vector<cplx> rotated;
        for (const auto& p : a.points()) rotated.push_back(rot * p.value());
        const NodeSequence b = NodeSequence::from_values(rotated);

        CHECK_THAT(fcs::carleson_delta(b), WithinAbs(fcs::carleson_delta(a), 1e-12));

        const double alpha = d.uniform(0.2, 1.0);
        const auto sa = fcs::sigma_alpha(a, alpha, 1024);
        const auto sb = fcs::sigma_alpha(b, alpha, 1024);
        // certified intervals must overlap
        CHECK(sa.value <= sb.upper() + 1e-12);
        CHECK(sb.value <= sa.upper() + 1e-12);
    }
}

TEST_CASE("sigma_1 against 2^{1-alpha} sigma_alpha", "[conditions]") {
    testutil::Draw d(25);
    for (int rep = 0; rep < 20; ++rep) {
        const NodeSequence a = d.nodes(1 + rep % 10, 0.93);
        for (double alpha : {0.25, 0.5, 0.75}) {
            const auto s1 = fcs::sigma_alpha(a, 1.0, 1024);
            const auto sa = fcs::sigma_alpha(a, alpha, 1024);
            CHECK(s1.value <= std::pow(2.0, 1.0 - alpha) * sa.upper() + 1e-12);
        }
    }
}

TEST_CASE("check_conditions bundles the pieces", "[conditions]") {
    const auto single = fcs::check_conditions(NodeSequence::from_values({{0.5, 0.0}}), 1.0, 4096);
    CHECK(single.delta == 1.0);
    CHECK_THAT(single.sigma.value, WithinAbs(1.5, 1e-12));
    CHECK(single.frostman_label);
    CHECK(single.construction_admissible);

    const auto at_zero = fcs::check_conditions(NodeSequence::from_values({{0.0, 0.0}}), 0.5, 64);
    CHECK(at_zero.delta == 1.0);
    CHECK(at_zero.sigma.value == 1.0);
    CHECK_FALSE(at_zero.frostman_label);
    CHECK(at_zero.has_zero_node);
    CHECK_FALSE(at_zero.construction_admissible);

    CHECK_THROWS_AS(fcs::check_conditions(
                        NodeSequence::from_values({{0.5, 0.0}, {0.5, 0.0}}), 1.0, 64),
                    std::domain_error);
}
