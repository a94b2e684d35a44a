#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "minksphere/error.hpp"
#include "minksphere/jumps.hpp"
#include "minksphere/oracles.hpp"

using namespace mink;

namespace {

const double kSqrt2 = std::sqrt(2.0);

bool close(const Vec2& a, const Vec2& b, double tol) {
    return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol;
}

}  // namespace

TEST_CASE("based space radial bounds") {
    const auto euclid = BasedSpace::canonical(fixtures::euclid());
    CHECK(euclid.c() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(euclid.C() == doctest::Approx(1.0).epsilon(1e-9));

    const auto square = BasedSpace::canonical(fixtures::square_l1());
    CHECK(square.c() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(square.C() == doctest::Approx(kSqrt2).epsilon(1e-9));

    CHECK_THROWS_AS(
        (void)BasedSpace::make(fixtures::euclid(), {1, 0}, {2, 0}), Error);
    CHECK_THROWS_AS(
        (void)BasedSpace::make(fixtures::euclid(), {1, 0}, {1, -1}), Error);
}

TEST_CASE("polar point examples") {
    const PolarCurve euclid(BasedSpace::canonical(fixtures::euclid()));
    CHECK(close(euclid.point(M_PI / 2), {0, 1}, 1e-12));

    const PolarCurve square(BasedSpace::canonical(fixtures::square_l1()));
    CHECK(close(square.point(M_PI / 4), {0.5, 0.5}, 1e-12));

    const PolarCurve lens(BasedSpace::canonical(fixtures::lens(0.0)));
    CHECK(close(lens.point(M_PI / 2), {0, 0.5}, 1e-10));

    for (const auto& norm : fixtures::zoo()) {
        const PolarCurve pc(BasedSpace::canonical(norm));
        for (int k = 0; k < 128; ++k) {
            const double t = 2.0 * M_PI * (k + 0.371) / 128;
            CHECK(std::abs(norm->gauge(pc.point(t)) - 1.0) <= 1e-10);
            // p(t + pi) = -p(t)
            CHECK(close(pc.point(t + M_PI), -pc.point(t), 1e-10));
        }
    }
}

TEST_CASE("polar derivatives: analytic values match the one-sided oracle") {
    const PolarCurve euclid(BasedSpace::canonical(fixtures::euclid()));
    const DerivativePair d0 = euclid.derivatives(0.0);
    CHECK(close(d0.plus, {0, 1}, 1e-12));
    CHECK(close(d0.minus, {0, 1}, 1e-12));

    // Square vertex (0, 1) at t = pi/2: edge directions (-1, 1) then (-1, -1).
    const PolarCurve square(BasedSpace::canonical(fixtures::square_l1()));
    const DerivativePair dv = square.derivatives(M_PI / 2);
    CHECK(close(dv.minus, {-1, 1}, 1e-10));
    CHECK(close(dv.plus, {-1, -1}, 1e-10));
    CHECK(fixtures::square_l1()->gauge(dv.plus - dv.minus) > 0.1);

    // Lens corner at t = 0: one-sided tangents of the two parabolic arcs.
    const PolarCurve lens(BasedSpace::canonical(fixtures::lens(0.0)));
    const DerivativePair dc = lens.derivatives(0.0);
    CHECK(close(dc.plus, {-1, 1}, 1e-9));
    CHECK(close(dc.minus, {1, 1}, 1e-9));

    // Generic parameters across the zoo against the Richardson oracle.
    for (const auto& norm : fixtures::zoo()) {
        const PolarCurve pc(BasedSpace::canonical(norm));
        for (int k = 0; k < 16; ++k) {
            const double t = 2.0 * M_PI * (k + 0.4321) / 16;
            const DerivativePair d = pc.derivatives(t);
            const auto fn = [&](double u) { return pc.point(u); };
            const Vec2 right = oracle::richardson_derivative(fn, t, oracle::Side::Right);
            const Vec2 left = oracle::richardson_derivative(fn, t, oracle::Side::Left);
            CHECK(close(d.plus, right, 2e-6));
            CHECK(close(d.minus, left, 2e-6));
        }
    }
}

TEST_CASE("polar bounds of the radial lemma") {
    for (const auto& norm : {fixtures::euclid(), fixtures::lens(0.2), fixtures::square_l1()}) {
        const BasedSpace space = BasedSpace::canonical(norm);
        const PolarCurve pc(space);
        const double lower = space.c() / space.C();
        const double upper = 2.0 * space.C() * space.C() / (space.c() * space.c());
        for (int i = 0; i < 64; ++i) {
            const double t = 2.0 * M_PI * i / 64;
            for (int j = 0; j < 64; ++j) {
                const double eps = -1.0 + 2.0 * (j + 0.5) / 64;
                const double dist = norm->gauge(pc.point(t + eps) - pc.point(t));
                CHECK(dist >= lower * std::abs(std::sin(eps)) - 1e-9);
                CHECK(dist <= upper * std::abs(eps) + 1e-9);
            }
            const DerivativePair d = pc.derivatives(t + 0.517);
            for (const Vec2& v : {d.minus, d.plus}) {
                const double g = norm->gauge(v);
                CHECK(g >= lower - 1e-9);
                CHECK(g <= upper + 1e-6);
            }
        }
    }
}

TEST_CASE("arc length and half length ground truths") {
    const NaturalCurve euclid(BasedSpace::canonical(fixtures::euclid()));
    CHECK(euclid.arc_length(M_PI) == doctest::Approx(M_PI).epsilon(1e-11));
    CHECK(euclid.half_length() == doctest::Approx(M_PI).epsilon(1e-11));

    const NaturalCurve square(BasedSpace::canonical(fixtures::square_l1()));
    CHECK(square.arc_length(M_PI) == doctest::Approx(4.0).epsilon(1e-11));
    CHECK(square.half_length() == doctest::Approx(4.0).epsilon(1e-11));

    // Quadrature against the inscribed-polyline oracle.
    for (const auto& norm : {fixtures::pnorm(4.0), fixtures::lens(0.0), fixtures::lens(0.2)}) {
        const BasedSpace space = BasedSpace::canonical(norm);
        const NaturalCurve nc(space);
        const double reference = oracle::polyline_arclength(*norm, space, 0.0, M_PI, 200000);
        CHECK(std::abs(nc.half_length() - reference) < 1e-6);
    }
}

TEST_CASE("monotone inversion s(t(sigma)) = sigma") {
    for (const auto& norm : {fixtures::euclid(), fixtures::lens(0.2), fixtures::square_l1()}) {
        const NaturalCurve nc(BasedSpace::canonical(norm));
        const double period = 2.0 * nc.half_length();
        for (int k = 0; k < 128; ++k) {
            const double s = period * (k + 0.318) / 128;
            const double t = nc.invert_arclength(s);
            CHECK(std::abs(nc.arc_length(t) - s) <= 1e-10);
        }
        CHECK(nc.invert_arclength(0.0) == doctest::Approx(0.0).epsilon(1e-12));
    }
    const NaturalCurve square(BasedSpace::canonical(fixtures::square_l1()));
    CHECK(square.invert_arclength(2.0) == doctest::Approx(M_PI / 2).epsilon(1e-10));
}

TEST_CASE("natural point examples and antipodality") {
    const NaturalCurve euclid(BasedSpace::canonical(fixtures::euclid()));
    CHECK(close(euclid.natural_point(M_PI), {-1, 0}, 1e-10));

    const NaturalCurve square(BasedSpace::canonical(fixtures::square_l1()));
    CHECK(close(square.natural_point(1.0), {0.5, 0.5}, 1e-10));

    const NaturalCurve lens(BasedSpace::canonical(fixtures::lens(0.0)));
    CHECK(close(lens.natural_point(lens.half_length()), {-1, 0}, 1e-9));

    for (const auto& norm : fixtures::zoo()) {
        const NaturalCurve nc(BasedSpace::canonical(norm));
        const double L = nc.half_length();
        for (int k = 0; k < 128; ++k) {
            const double s = 2.0 * L * (k + 0.77) / 128;
            CHECK(close(nc.natural_point(s + L), -nc.natural_point(s), 1e-9));
            CHECK(std::abs(norm->gauge(nc.natural_point(s)) - 1.0) <= 1e-10);
        }
    }
}

TEST_CASE("natural parameterization is non-expanding with unit one-sided speed") {
    for (const auto& norm : fixtures::zoo()) {
        const NaturalCurve nc(BasedSpace::canonical(norm));
        const double L = nc.half_length();
        for (int k = 0; k < 32; ++k) {
            const double s1 = 2.0 * L * (k + 0.13) / 32;
            const double s2 = s1 + L * (k % 7 + 1) / 16.0;
            const double chord = norm->gauge(nc.natural_point(s2) - nc.natural_point(s1));
            CHECK(chord <= std::abs(s2 - s1) + 1e-9);

            const DerivativePair d = nc.natural_derivatives(s1);
            CHECK(std::abs(norm->gauge(d.plus) - 1.0) <= 1e-6);
            CHECK(std::abs(norm->gauge(d.minus) - 1.0) <= 1e-6);
            CHECK(cross(nc.natural_point(s1), d.plus) > 0.0);
        }
    }
}

TEST_CASE("natural derivatives at the lens corner and smooth fixtures") {
    const NaturalCurve lens(BasedSpace::canonical(fixtures::lens(0.0)));
    const DerivativePair d0 = lens.natural_derivatives(0.0);
    const double k = kSqrt2 - 1.0;
    CHECK(close(d0.plus, {-k, k}, 1e-9));
    CHECK(close(d0.minus, {k, k}, 1e-9));

    const auto fn = [&](double s) { return lens.natural_point(s); };
    CHECK(close(oracle::richardson_derivative(fn, 0.0, oracle::Side::Right), {-k, k}, 1e-7));
    CHECK(close(oracle::richardson_derivative(fn, 0.0, oracle::Side::Left), {k, k}, 1e-7));

    const NaturalCurve p4(BasedSpace::canonical(fixtures::pnorm(4.0)));
    for (int i = 0; i < 16; ++i) {
        const double s = 2.0 * p4.half_length() * (i + 0.123) / 16;
        CHECK(p4.natural_derivatives(s).gap(p4.norm()) < 1e-6);
    }
}

TEST_CASE("chord/arc ratio approaches 1") {
    for (const auto& norm : fixtures::zoo()) {
        const NaturalCurve nc(BasedSpace::canonical(norm));
        const double L = nc.half_length();
        int tested = 0;
        for (int k = 0; tested < 32 && k < 64; ++k) {
            const double s = 2.0 * L * (k + 0.29) / 64;
            bool near_corner = false;
            for (double c : nc.corner_params()) {
                if (std::abs(s - c) < 1e-3 || std::abs(std::abs(s - c) - 2.0 * L) < 1e-3) {
                    near_corner = true;
                }
            }
            if (near_corner) continue;
            ++tested;
            for (double eps : {1e-4, -1e-4}) {
                const double ratio =
                    norm->gauge(nc.natural_point(s + eps) - nc.natural_point(s)) /
                    std::abs(eps);
                CHECK(ratio > 0.99);
                CHECK(ratio < 1.01);
            }
            for (double eps : {1e-6, -1e-6}) {
                const double ratio =
                    norm->gauge(nc.natural_point(s + eps) - nc.natural_point(s)) /
                    std::abs(eps);
                CHECK(ratio > 0.999);
                CHECK(ratio < 1.001);
            }
        }
        CHECK(tested >= 30);
    }
}

TEST_CASE("rebase at corner matches the averaged tangent") {
    const auto lens = fixtures::lens(0.0);
    const BasedSpace space = BasedSpace::rebased_at_corner(lens, {1.0 + 1e-6, 1e-7});
    CHECK(close(space.e1(), {1, 0}, 1e-12));
    CHECK(close(space.e2(), {0, kSqrt2 - 1.0}, 1e-9));

    const NaturalCurve nc(space);
    const DerivativePair d = nc.natural_derivatives(0.0);
    CHECK(close(d.avg, space.e2(), 1e-9));

    CHECK_THROWS_AS(
        (void)BasedSpace::rebased_at_corner(fixtures::euclid(), {1, 0}), Error);
    CHECK_THROWS_AS(
        (void)BasedSpace::rebased_at_corner(lens, {0, 0.5}), Error);
}

TEST_CASE("reversed curve view") {
    const auto lens = fixtures::lens(0.2);
    const NaturalCurve nc(BasedSpace::rebased_at_corner(lens, {1, 0}));
    const CurveView fwd(nc);
    const CurveView rev(nc, true);
    const double L = nc.half_length();

    CHECK(close(rev.point(0.0), fwd.point(0.0), 1e-12));
    for (double s : {0.3, 1.1, L}) {
        CHECK(close(rev.point(s), fwd.point(2.0 * L - s), 1e-9));
    }
    const DerivativePair df = fwd.derivatives(0.0);
    const DerivativePair dr = rev.derivatives(0.0);
    CHECK(close(dr.plus, -df.minus, 1e-12));
    CHECK(close(dr.minus, -df.plus, 1e-12));
    CHECK(close(dr.avg, -df.avg, 1e-12));

    const JumpData jf = jumps(fwd, 0.0);
    const JumpData jr = jumps(rev, 0.0);
    CHECK(jr.jr == doctest::Approx(jf.jr).epsilon(1e-9));
    CHECK(jr.jt == doctest::Approx(-jf.jt).epsilon(1e-9));
}
