#include "minksphere/parameterization.hpp"

#include <algorithm>
#include <cmath>

#include "minksphere/error.hpp"

namespace mink {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr int kRadialGrid = 4096;      // c, C sampling resolution
constexpr int kTableResolution = 8192;  // uniform t-knots of the s-table
constexpr double kQuadTolerance = 1e-10;
constexpr int kQuadMaxDepth = 40;

double reduce_mod(double x, double period) {
    double r = std::fmod(x, period);
    if (r < 0.0) r += period;
    return r;
}

// Golden-section minimization of fn on [a, b] down to interval width tol.
template <typename F>
double golden_min(F&& fn, double a, double b, double tol) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = fn(x1), f2 = fn(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = fn(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = fn(x2);
        }
    }
    return fn(0.5 * (a + b));
}

}  // namespace

BasedSpace BasedSpace::make(std::shared_ptr<const Norm2D> norm, const Vec2& e1,
                            const Vec2& e2) {
    if (!norm) throw Error(ErrorCode::InvalidSpec, "BasedSpace requires a norm");
    if (!e1.finite() || !e2.finite()) {
        throw Error(ErrorCode::InvalidSpec, "basis vectors must be finite");
    }
    BasedSpace space;
    space.norm_ = std::move(norm);
    space.e1_ = space.norm_->scale_to_sphere(e1);
    space.e2_ = e2;
    if (cross(space.e1_, space.e2_) <= 0.0) {
        throw Error(ErrorCode::DegenerateBasis,
                    "basis must be linearly independent with det(e1, e2) > 0");
    }

    const auto radius = [&](double t) { return space.norm_->gauge(space.ray(t)); };
    // Grid scan over one period of ||e^{it}|| (period pi up to sign), then
    // golden-section refinement around the best local extrema.
    std::vector<double> values(kRadialGrid);
    for (int k = 0; k < kRadialGrid; ++k) values[k] = radius(M_PI * k / kRadialGrid);
    const double step = M_PI / kRadialGrid;

    double cmin = values[0], cmax = values[0];
    for (double v : values) {
        cmin = std::min(cmin, v);
        cmax = std::max(cmax, v);
    }
    std::vector<std::pair<double, int>> minima, maxima;
    for (int k = 0; k < kRadialGrid; ++k) {
        const double prev = values[(k + kRadialGrid - 1) % kRadialGrid];
        const double next = values[(k + 1) % kRadialGrid];
        if (values[k] <= prev && values[k] <= next) minima.push_back({values[k], k});
        if (values[k] >= prev && values[k] >= next) maxima.push_back({values[k], k});
    }
    std::sort(minima.begin(), minima.end());
    std::sort(maxima.begin(), maxima.end(), std::greater<>());
    for (size_t i = 0; i < minima.size() && i < 8; ++i) {
        const int k = minima[i].second;
        cmin = std::min(cmin, golden_min(radius, (k - 1) * step, (k + 1) * step, 1e-10));
    }
    for (size_t i = 0; i < maxima.size() && i < 8; ++i) {
        const int k = maxima[i].second;
        const auto neg = [&](double t) { return -radius(t); };
        cmax = std::max(cmax, -golden_min(neg, (k - 1) * step, (k + 1) * step, 1e-10));
    }
    space.c_ = cmin;
    space.C_ = cmax;
    return space;
}

BasedSpace BasedSpace::canonical(std::shared_ptr<const Norm2D> norm) {
    if (!norm) throw Error(ErrorCode::InvalidSpec, "BasedSpace requires a norm");
    const Vec2 e1 = norm->scale_to_sphere({1.0, 0.0});
    return make(std::move(norm), e1, {0.0, 1.0});
}

BasedSpace BasedSpace::rebased_at_corner(std::shared_ptr<const Norm2D> norm,
                                         const Vec2& near_corner) {
    if (!norm) throw Error(ErrorCode::InvalidSpec, "BasedSpace requires a norm");
    const auto corners = norm->corner_points();
    const Vec2* best = nullptr;
    double best_dist = 1e300;
    for (const auto& candidate : corners) {
        const double d = norm->gauge(candidate - near_corner);
        if (d < best_dist) {
            best_dist = d;
            best = &candidate;
        }
    }
    Vec2 corner = near_corner;
    if (best != nullptr && best_dist <= 1e-4) {
        corner = *best;
    } else if (best == nullptr) {
        throw Error(ErrorCode::NotACorner, "norm has no non-smooth points");
    } else {
        throw Error(ErrorCode::NotACorner, "point is not near a corner of the sphere");
    }
    const TangentPair tangents = norm->one_sided_tangents(corner);
    const Vec2 e2 = 0.5 * (tangents.minus + tangents.plus);
    return make(std::move(norm), corner, e2);
}

Vec2 BasedSpace::ray(double t) const { return std::cos(t) * e1_ + std::sin(t) * e2_; }

Vec2 BasedSpace::ray_derivative(double t) const {
    return -std::sin(t) * e1_ + std::cos(t) * e2_;
}

Vec2 BasedSpace::coordinates(const Vec2& x) const { return solve_in_basis(e1_, e2_, x); }

Vec2 PolarCurve::point(double t) const {
    return space_.norm().scale_to_sphere(space_.ray(t));
}

DerivativePair PolarCurve::derivatives(double t) const {
    const Norm2D& norm = space_.norm();
    const Vec2 e = space_.ray(t);
    const double radial = norm.gauge(e);
    const Vec2 w = e / radial;
    const Vec2 ep = space_.ray_derivative(t);
    const SupportCone cone = norm.support_cone(w);
    // One-sided derivatives of t -> ||e^{it}||: extremes of phi(e') over the
    // supporting functionals at the boundary point.
    const double dlo = dot(cone.lo, ep);
    const double dhi = dot(cone.hi, ep);
    const double radial_plus = std::max(dlo, dhi);
    const double radial_minus = std::min(dlo, dhi);
    DerivativePair pair;
    pair.plus = (ep - radial_plus * w) / radial;
    pair.minus = (ep - radial_minus * w) / radial;
    pair.avg = 0.5 * (pair.plus + pair.minus);
    return pair;
}

double PolarCurve::param_of_point(const Vec2& x) const {
    const Vec2 ab = space_.coordinates(x);
    return reduce_mod(std::atan2(ab.y, ab.x), kTwoPi);
}

namespace {

struct Integrand {
    const PolarCurve* polar;
    double operator()(double t) const {
        const DerivativePair d = polar->derivatives(t);
        return polar->space().norm().gauge(d.plus);
    }
};

// Adaptive Simpson with precomputed endpoint values (the endpoints may carry
// one-sided derivative values at corner knots).
double adaptive_simpson(const Integrand& f, double a, double fa, double b, double fb,
                        double fm, double whole, double tol, int depth, bool& ok) {
    const double m = 0.5 * (a + b);
    const double flm = f(0.5 * (a + m));
    const double frm = f(0.5 * (m + b));
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || b - a < 1e-14) {
        if (std::abs(delta) > 15.0 * tol && depth >= kQuadMaxDepth) ok = false;
        return left + right + delta / 15.0;
    }
    if (depth >= kQuadMaxDepth) {
        ok = false;
        return left + right + delta / 15.0;
    }
    return adaptive_simpson(f, a, fa, m, fm, flm, left, 0.5 * tol, depth + 1, ok) +
           adaptive_simpson(f, m, fm, b, fb, frm, right, 0.5 * tol, depth + 1, ok);
}

double integrate_cell(const Integrand& f, double a, double fa, double b, double fb,
                      double tol) {
    if (b - a <= 0.0) return 0.0;
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    bool ok = true;
    const double result = adaptive_simpson(f, a, fa, b, fb, fm, whole, tol, 0, ok);
    if (!ok) {
        throw Error(ErrorCode::QuadratureFailure,
                    "arc-length quadrature did not reach tolerance at max depth");
    }
    return result;
}

}  // namespace

NaturalCurve::NaturalCurve(BasedSpace space) : polar_(std::move(space)) {
    // Knots: uniform grid over [0, 2*pi] plus the exact corner parameters.
    std::vector<double> knots;
    knots.reserve(kTableResolution + 16);
    for (int k = 0; k <= kTableResolution; ++k) {
        knots.push_back(kTwoPi * k / kTableResolution);
    }
    std::vector<double> corner_t;
    for (const auto& c : polar_.space().norm().corner_points()) {
        corner_t.push_back(polar_.param_of_point(c));
    }
    for (double t : corner_t) knots.push_back(t);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end(),
                            [](double a, double b) { return b - a < 1e-12; }),
                knots.end());
    // Make sure pi stays an exact knot (it defines the half-length).
    if (std::none_of(knots.begin(), knots.end(),
                     [](double t) { return std::abs(t - M_PI) < 1e-15; })) {
        knots.push_back(M_PI);
        std::sort(knots.begin(), knots.end());
    }
    knots_t_ = std::move(knots);

    const size_t n = knots_t_.size();
    f_plus_.resize(n);
    f_minus_.resize(n);
    const Norm2D& norm = polar_.space().norm();
    for (size_t i = 0; i < n; ++i) {
        const DerivativePair d = polar_.derivatives(knots_t_[i]);
        f_plus_[i] = norm.gauge(d.plus);
        f_minus_[i] = norm.gauge(d.minus);
    }

    knots_s_.resize(n);
    knots_s_[0] = 0.0;
    const Integrand f{&polar_};
    for (size_t i = 0; i + 1 < n; ++i) {
        const double width = knots_t_[i + 1] - knots_t_[i];
        const double tol = std::max(1e-16, kQuadTolerance * width / kTwoPi);
        knots_s_[i + 1] = knots_s_[i] + integrate_cell(f, knots_t_[i], f_plus_[i],
                                                       knots_t_[i + 1], f_minus_[i + 1], tol);
    }
    full_length_ = knots_s_.back();

    const auto pi_it = std::lower_bound(knots_t_.begin(), knots_t_.end(), M_PI - 1e-15);
    half_length_ = knots_s_[static_cast<size_t>(pi_it - knots_t_.begin())];

    for (double t : corner_t) {
        corner_s_.push_back(table_lookup(reduce_mod(t, kTwoPi)));
    }
    std::sort(corner_s_.begin(), corner_s_.end());
}

double NaturalCurve::table_lookup(double t) const {
    // t in [0, 2*pi]; returns s(t) from the prefix table plus a partial
    // Simpson panel inside the containing cell.
    const auto it = std::upper_bound(knots_t_.begin(), knots_t_.end(), t);
    size_t i = static_cast<size_t>(it - knots_t_.begin());
    if (i == 0) return 0.0;
    --i;
    if (i + 1 >= knots_t_.size()) return knots_s_.back();
    const double a = knots_t_[i];
    const double w = t - a;
    if (w <= 0.0) return knots_s_[i];
    const Integrand f{&polar_};
    const double fm = f(a + 0.5 * w);
    const double fb = (std::abs(t - knots_t_[i + 1]) < 1e-15) ? f_minus_[i + 1] : f(t);
    return knots_s_[i] + w / 6.0 * (f_plus_[i] + 4.0 * fm + fb);
}

double NaturalCurve::arc_length(double t) const {
    if (!std::isfinite(t)) {
        throw Error(ErrorCode::InvalidConfig, "arc_length requires finite t");
    }
    const double k = std::floor(t / kTwoPi);
    const double tau = t - k * kTwoPi;
    return k * full_length_ + table_lookup(tau);
}

double NaturalCurve::normalize_param(double s) const { return reduce_mod(s, full_length_); }

double NaturalCurve::invert_arclength(double s) const {
    if (!std::isfinite(s)) {
        throw Error(ErrorCode::InvalidConfig, "invert_arclength requires finite s");
    }
    const double k = std::floor(s / full_length_);
    const double target = s - k * full_length_;
    const auto it = std::upper_bound(knots_s_.begin(), knots_s_.end(), target);
    size_t i = static_cast<size_t>(it - knots_s_.begin());
    if (i > 0) --i;
    if (i + 1 >= knots_t_.size()) {
        return k * kTwoPi + knots_t_.back();
    }
    double lo = knots_t_[i];
    double hi = knots_t_[i + 1];
    // Bisection against the quadrature evaluator keeps s(t(sigma)) = sigma
    // consistent to the stated tolerance. The tight residual matters: the
    // derivative oracles difference-quotient natural_point at h ~ 1e-5.
    for (int iter = 0; iter < 60 && hi - lo > 1e-16; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double val = table_lookup(mid);
        if (std::abs(val - target) <= 1e-15) return k * kTwoPi + mid;
        if (val < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return k * kTwoPi + 0.5 * (lo + hi);
}

Vec2 NaturalCurve::natural_point(double s) const { return polar_.point(invert_arclength(s)); }

DerivativePair NaturalCurve::natural_derivatives(double s) const {
    const double t = invert_arclength(s);
    const DerivativePair p = polar_.derivatives(t);
    const Norm2D& norm = polar_.space().norm();
    DerivativePair out;
    out.plus = p.plus / norm.gauge(p.plus);
    out.minus = p.minus / norm.gauge(p.minus);
    out.avg = 0.5 * (out.plus + out.minus);
    return out;
}

double NaturalCurve::param_of_point(const Vec2& x) const {
    return table_lookup(polar_.param_of_point(x));
}

}  // namespace mink
