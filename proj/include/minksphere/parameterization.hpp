#pragma once

#include <algorithm>
#include <memory>
#include <vector>

#include "minksphere/norm.hpp"

namespace mink {

/// One-sided derivatives r'-(s), r'+(s) and their average r'+-(s).
struct DerivativePair {
    Vec2 minus;
    Vec2 plus;
    Vec2 avg;

    /// gauge of (plus - minus) in the given norm; zero at smooth points.
    double gap(const Norm2D& norm) const { return norm.gauge(plus - minus); }
};

/// A 2D normed plane with a fixed positively oriented basis (e1 on the
/// sphere). Carries the radial bounds c = min_t ||e^{it}||, C = max_t.
class BasedSpace {
public:
    static BasedSpace make(std::shared_ptr<const Norm2D> norm, const Vec2& e1, const Vec2& e2);

    /// e1 = the sphere point on the positive x-axis, e2 = (0, 1).
    static BasedSpace canonical(std::shared_ptr<const Norm2D> norm);

    /// Rebase at a non-smooth point: e1 = the corner (snapped to the exact
    /// corner of the body), e2 = the averaged one-sided tangent there, as
    /// the two-corner reconstruction workflow requires.
    static BasedSpace rebased_at_corner(std::shared_ptr<const Norm2D> norm,
                                        const Vec2& near_corner);

    const Norm2D& norm() const { return *norm_; }
    std::shared_ptr<const Norm2D> norm_ptr() const { return norm_; }
    const Vec2& e1() const { return e1_; }
    const Vec2& e2() const { return e2_; }
    double c() const { return c_; }
    double C() const { return C_; }

    /// cos(t) e1 + sin(t) e2.
    Vec2 ray(double t) const;
    /// d/dt ray(t).
    Vec2 ray_derivative(double t) const;
    /// Coordinates of x in the basis (e1, e2).
    Vec2 coordinates(const Vec2& x) const;

private:
    std::shared_ptr<const Norm2D> norm_;
    Vec2 e1_, e2_;
    double c_ = 1.0, C_ = 1.0;
};

/// The polar parameterization p(t) = e^{it} / ||e^{it}||.
class PolarCurve {
public:
    explicit PolarCurve(BasedSpace space) : space_(std::move(space)) {}

    const BasedSpace& space() const { return space_; }

    Vec2 point(double t) const;

    /// One-sided derivatives, analytic through the support cone of the body.
    DerivativePair derivatives(double t) const;

    /// Polar parameter of a sphere point, in [0, 2*pi).
    double param_of_point(const Vec2& x) const;

private:
    BasedSpace space_;
};

/// The arc-length (natural) parameterization r(s) of the sphere, with the
/// half-length L, the monotone inverse t(s) and the corner parameters.
/// Immutable after construction; queries are pure.
class NaturalCurve {
public:
    explicit NaturalCurve(BasedSpace space);

    const BasedSpace& space() const { return polar_.space(); }
    const PolarCurve& polar() const { return polar_; }
    const Norm2D& norm() const { return space().norm(); }

    double half_length() const { return half_length_; }

    /// s(t): adaptive Simpson quadrature of ||p'(u)|| with forced splits at
    /// the corner parameters. Accepts any finite t via periodicity.
    double arc_length(double t) const;

    /// t(s): bracket on the monotone sample table, then bisection.
    double invert_arclength(double s) const;

    Vec2 natural_point(double s) const;

    /// r'-(s), r'+(s), r'+-(s); the one-sided vectors have gauge 1.
    DerivativePair natural_derivatives(double s) const;

    /// Natural parameter of a sphere point, in [0, 2L).
    double param_of_point(const Vec2& x) const;

    /// Exact corner parameters in [0, 2L), sorted.
    const std::vector<double>& corner_params() const { return corner_s_; }

    /// Reduce an arbitrary parameter into [0, 2L).
    double normalize_param(double s) const;

private:
    double table_lookup(double t) const;  // s(t) for t in [0, 2*pi]

    PolarCurve polar_;
    std::vector<double> knots_t_;
    std::vector<double> knots_s_;
    std::vector<double> f_plus_;   // ||p'+|| at knots
    std::vector<double> f_minus_;  // ||p'-|| at knots
    std::vector<double> corner_s_;
    double half_length_ = 0.0;
    double full_length_ = 0.0;
};

/// A traversal of a NaturalCurve, optionally reversed (the "replace e2 by
/// -e2" move of the reconstruction pipeline). Reversal keeps r(0) fixed and
/// runs the sphere the other way; jumps transform as (jr, jt) -> (jr, -jt).
class CurveView {
public:
    CurveView(const NaturalCurve& curve, bool reversed = false)
        : curve_(&curve), reversed_(reversed) {}

    const NaturalCurve& base() const { return *curve_; }
    const Norm2D& norm() const { return curve_->norm(); }
    bool reversed() const { return reversed_; }
    double half_length() const { return curve_->half_length(); }

    Vec2 point(double s) const {
        return curve_->natural_point(reversed_ ? -s : s);
    }

    DerivativePair derivatives(double s) const {
        const DerivativePair d = curve_->natural_derivatives(reversed_ ? -s : s);
        if (!reversed_) return d;
        return {-d.plus, -d.minus, -d.avg};
    }

    double param_of_point(const Vec2& x) const {
        const double s = curve_->param_of_point(x);
        if (!reversed_) return s;
        return curve_->normalize_param(-s);
    }

    std::vector<double> corner_params() const {
        std::vector<double> out;
        for (double s : curve_->corner_params()) {
            out.push_back(reversed_ ? curve_->normalize_param(-s) : s);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    const NaturalCurve* curve_;
    bool reversed_;
};

}  // namespace mink
