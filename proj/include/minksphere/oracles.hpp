#pragma once

#include <functional>
#include <vector>

#include "minksphere/parameterization.hpp"

namespace mink::oracle {

/// A chain of sphere points used by the intrinsic-distance oracle.
struct Polyline {
    std::vector<Vec2> points;
    bool closed = false;
};

/// Gauge by bisection on the exact membership predicate, with its own
/// bracketing loop. Deliberately shares no code with the analytic gauge
/// paths; default tolerance one decade below the primary gauge.
double gauge(const Norm2D& norm, const Vec2& v, double tol = 1e-13);

/// Inscribed-polyline length of the polar curve over [t0, t1] on a uniform
/// N-point grid, summed left to right. Converges to s(t1) - s(t0).
double polyline_arclength(const Norm2D& norm, const BasedSpace& basis, double t0, double t1,
                          int n);

/// Chord-sum between two points of the closed upper half-sphere along the
/// finest uniform chain; approaches |s_x - s_y| per the intrinsic-metric
/// lemma. Works in the polar parameter so it is independent of the primary
/// quadrature and inversion paths.
double intrinsic_distance(const NaturalCurve& curve, const Vec2& x, const Vec2& y, int n);

enum class Side { Left, Right };

/// One-sided derivative estimate: difference quotients at h and h/2 combined
/// as 2 D(h/2) - D(h).
Vec2 richardson_derivative(const std::function<Vec2(double)>& curve, double s, Side side,
                           double h = 1e-5);

}  // namespace mink::oracle
