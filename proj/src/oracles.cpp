#include "minksphere/oracles.hpp"

#include <cmath>

#include "minksphere/error.hpp"

namespace mink::oracle {

double gauge(const Norm2D& norm, const Vec2& v, double tol) {
    if (v.x == 0.0 && v.y == 0.0) return 0.0;
    double hi = 1.0;
    int guard = 0;
    while (!norm.contains(v / hi)) {
        hi *= 2.0;
        if (++guard > 80) {
            throw Error(ErrorCode::InvalidConfig, "oracle gauge bracket expansion failed");
        }
    }
    double lo = 0.0;
    while (hi - lo > tol * hi) {
        const double mid = 0.5 * (lo + hi);
        if (norm.contains(v / mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double polyline_arclength(const Norm2D& norm, const BasedSpace& basis, double t0, double t1,
                          int n) {
    if (n < 1000) {
        throw Error(ErrorCode::InvalidConfig, "polyline oracle needs n >= 1000");
    }
    const auto point = [&](double t) {
        const Vec2 e = basis.ray(t);
        return e / gauge(norm, e);
    };
    double sum = 0.0;
    Vec2 prev = point(t0);
    for (int k = 1; k <= n; ++k) {
        const Vec2 cur = point(t0 + (t1 - t0) * k / n);
        sum += gauge(norm, cur - prev);
        prev = cur;
    }
    return sum;
}

double intrinsic_distance(const NaturalCurve& curve, const Vec2& x, const Vec2& y, int n) {
    if (n < 1000) {
        throw Error(ErrorCode::InvalidConfig, "intrinsic oracle needs n >= 1000");
    }
    const Norm2D& norm = curve.norm();
    const BasedSpace& basis = curve.space();
    const auto polar_param = [&](const Vec2& q) {
        if (std::abs(gauge(norm, q) - 1.0) > 1e-8) {
            throw Error(ErrorCode::NotOnHalfSphere, "point is off the sphere");
        }
        const Vec2 ab = basis.coordinates(q);
        double t = std::atan2(ab.y, ab.x);
        // atan2 range is (-pi, pi]; fold the seam neighborhoods onto [0, pi].
        if (t < 0.0 && t <= -M_PI + 1e-9) t += 2.0 * M_PI;
        if (t < -1e-9 || t > M_PI + 1e-9) {
            throw Error(ErrorCode::NotOnHalfSphere,
                        "point is not on the closed upper half-sphere");
        }
        return t;
    };
    const double tx = polar_param(x);
    const double ty = polar_param(y);
    const auto point = [&](double t) {
        const Vec2 e = basis.ray(t);
        return e / gauge(norm, e);
    };
    double sum = 0.0;
    Vec2 prev = point(tx);
    for (int k = 1; k <= n; ++k) {
        const Vec2 cur = point(tx + (ty - tx) * k / n);
        sum += gauge(norm, cur - prev);
        prev = cur;
    }
    return sum;
}

Vec2 richardson_derivative(const std::function<Vec2(double)>& curve, double s, Side side,
                           double h) {
    const double sign = side == Side::Right ? 1.0 : -1.0;
    const Vec2 q0 = curve(s);
    const Vec2 d1 = (curve(s + sign * h) - q0) / (sign * h);
    const Vec2 d2 = (curve(s + sign * 0.5 * h) - q0) / (sign * 0.5 * h);
    return 2.0 * d2 - d1;
}

}  // namespace mink::oracle
