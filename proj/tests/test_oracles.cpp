#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "minksphere/error.hpp"
#include "minksphere/oracles.hpp"

using namespace mink;

TEST_CASE("oracle gauge against analytic gauges") {
    for (const auto& norm : fixtures::zoo()) {
        for (int k = 0; k < 32; ++k) {
            const double t = 2.0 * M_PI * (k + 0.5) / 32;
            const Vec2 v{1.9 * std::cos(t), 0.7 * std::sin(t)};
            CHECK(std::abs(oracle::gauge(*norm, v) - norm->gauge(v)) < 1e-10);
        }
    }
    CHECK(oracle::gauge(*fixtures::euclid(), {0, 0}) == 0.0);
}

TEST_CASE("polyline length oracle on known half-lengths") {
    const auto euclid = fixtures::euclid();
    const BasedSpace se = BasedSpace::canonical(euclid);
    CHECK(std::abs(oracle::polyline_arclength(*euclid, se, 0.0, M_PI, 1000000) - M_PI) <
          1e-9);

    const auto square = fixtures::square_l1();
    const BasedSpace ss = BasedSpace::canonical(square);
    CHECK(std::abs(oracle::polyline_arclength(*square, ss, 0.0, M_PI, 1000000) - 4.0) <
          1e-9);

    CHECK_THROWS_AS((void)oracle::polyline_arclength(*euclid, se, 0.0, M_PI, 10), Error);
}

TEST_CASE("polyline oracle converges at the empirical O(N^-2) rate") {
    const auto p4 = fixtures::pnorm(4.0);
    const BasedSpace space = BasedSpace::canonical(p4);
    const double l1 = oracle::polyline_arclength(*p4, space, 0.0, M_PI, 20000);
    const double l2 = oracle::polyline_arclength(*p4, space, 0.0, M_PI, 40000);
    const double l4 = oracle::polyline_arclength(*p4, space, 0.0, M_PI, 80000);
    CHECK(std::abs(l1 - l2) <= 4.5 * std::abs(l2 - l4));
    CHECK(std::abs(l2 - l4) < std::abs(l1 - l2));
}

TEST_CASE("intrinsic distance realizes |s1 - s2|") {
    const auto euclid = fixtures::euclid();
    const NaturalCurve nc(BasedSpace::canonical(euclid));
    CHECK(std::abs(oracle::intrinsic_distance(nc, {1, 0}, {0, 1}, 100000) - M_PI / 2) <
          1e-8);
    CHECK(oracle::intrinsic_distance(nc, {0, 1}, {0, 1}, 1000) == 0.0);

    for (const auto& norm : {fixtures::lens(0.0), fixtures::pnorm(4.0)}) {
        const NaturalCurve curve(BasedSpace::canonical(norm));
        const double L = curve.half_length();
        const Vec2 end = curve.natural_point(L);
        CHECK(std::abs(oracle::intrinsic_distance(curve, curve.natural_point(0.0), end,
                                                  100000) -
                       L) < 1e-6);
        for (int k = 0; k < 8; ++k) {
            const double s1 = L * (k + 0.21) / 8.5;
            const double s2 = L * (k + 3.1) / 11.0;
            const double measured = oracle::intrinsic_distance(
                curve, curve.natural_point(s1), curve.natural_point(s2), 100000);
            CHECK(std::abs(measured - std::abs(s1 - s2)) < 1e-5);
        }
    }
}

TEST_CASE("intrinsic oracle rejects points off the upper half-sphere") {
    const NaturalCurve nc(BasedSpace::canonical(fixtures::euclid()));
    CHECK_THROWS_AS((void)oracle::intrinsic_distance(nc, {0, -1}, {1, 0}, 1000), Error);
    CHECK_THROWS_AS((void)oracle::intrinsic_distance(nc, {0.5, 0}, {1, 0}, 1000), Error);
}

TEST_CASE("richardson derivative oracle") {
    const NaturalCurve euclid(BasedSpace::canonical(fixtures::euclid()));
    const auto fe = [&](double s) { return euclid.natural_point(s); };
    const Vec2 d = oracle::richardson_derivative(fe, 0.0, oracle::Side::Right);
    CHECK(std::abs(d.x) < 1e-9);
    CHECK(std::abs(d.y - 1.0) < 1e-9);
}
