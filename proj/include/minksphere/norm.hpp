#pragma once

#include <memory>
#include <string>
#include <vector>

#include "minksphere/error.hpp"
#include "minksphere/vec2.hpp"

namespace mink {

enum class NormKind { PNorm, Polygon, Lens, DoubleLens, Transform };

/// Declarative description of a centrally symmetric convex body whose
/// Minkowski gauge is the norm.
struct NormSpec {
    NormKind kind = NormKind::PNorm;
    double p = 2.0;                         // PNorm
    double beta = 0.0;                      // Lens
    std::vector<Vec2> vertices;             // Polygon, counterclockwise
    std::shared_ptr<const NormSpec> base;   // Transform
    Mat2 matrix = Mat2::identity();         // Transform

    static NormSpec pnorm(double p);
    static NormSpec polygon(std::vector<Vec2> vertices);
    static NormSpec lens(double beta);
    static NormSpec double_lens();
    static NormSpec transform(NormSpec base, const Mat2& matrix);
};

/// One-line human-readable tag, e.g. "pnorm(2)" or "lens(0.2)".
std::string describe(const NormSpec& spec);

enum class Membership { Interior, Boundary, Exterior };

/// Extreme supporting functionals at a sphere point w, each normalized so
/// phi(w) = 1. At smooth points lo == hi; at a corner they are the two
/// one-sided support lines.
struct SupportCone {
    Vec2 lo;
    Vec2 hi;
    bool corner = false;
};

/// One-sided tangent vectors of the sphere at a point, oriented
/// counterclockwise and normalized to gauge 1.
struct TangentPair {
    Vec2 minus;
    Vec2 plus;
};

struct AxiomCheck {
    std::string axiom;
    double max_violation = 0.0;
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;
    double worst() const;
    bool pass(double tol) const { return worst() <= tol; }
};

/// A 2D norm represented as the Minkowski gauge of its unit body.
/// Immutable after construction; all queries are pure.
class Norm2D {
public:
    /// Validates the spec invariants (central symmetry, convexity, beta
    /// bound, invertible transform) and builds the norm.
    static Norm2D build_from_spec(const NormSpec& spec);

    /// Builds without validating spec invariants. Intended for negative
    /// controls; validate_axioms() reports what is broken.
    static Norm2D build_unchecked(const NormSpec& spec);

    /// Minkowski functional: the unique lambda >= 0 with v/lambda on the
    /// body boundary (0 for v = 0). Analytic for pnorm/polygon, monotone
    /// bisection on ray membership for the lens kinds.
    double gauge(const Vec2& v) const;

    /// Exact body membership test (no root finding). This is the primitive
    /// the lens gauge bisects on; oracles bisect on it independently.
    bool contains(const Vec2& v) const;

    /// Classification of gauge(v) against 1 with a +-1e-9 band.
    Membership membership(const Vec2& v) const;

    /// v / gauge(v). Throws ZeroVector for v = 0.
    Vec2 scale_to_sphere(const Vec2& v) const;

    /// Supporting-functional cone at a sphere point (gauge(w) ~= 1).
    SupportCone support_cone(const Vec2& w) const;

    /// One-sided unit tangents of the sphere at w, counterclockwise.
    TangentPair one_sided_tangents(const Vec2& w) const;

    /// The non-smooth sphere points, exact per kind, sorted by angle.
    /// Empty for smooth norms.
    std::vector<Vec2> corner_points() const;

    /// Samples homogeneity, symmetry, triangle inequality and boundary
    /// convexity on a direction grid; reports the max violation per axiom.
    AxiomReport validate_axioms(int grid_size) const;

    bool strictly_convex() const { return strictly_convex_; }
    bool smooth() const { return smooth_; }
    double gauge_tolerance() const { return gauge_tol_; }
    const NormSpec& spec() const { return spec_; }

private:
    Norm2D() = default;
    static Norm2D build(const NormSpec& spec, bool validate);
    double gauge_bisect(const Vec2& v) const;
    SupportCone lens_cone(const Vec2& w) const;

    NormSpec spec_;
    double gauge_tol_ = 1e-12;
    bool strictly_convex_ = false;
    bool smooth_ = false;

    // Polygon cache: edge functionals phi_i with phi_i = 1 on edge i.
    std::vector<Vec2> edge_functionals_;

    // Transform cache.
    std::shared_ptr<const Norm2D> base_;
    Mat2 inv_matrix_ = Mat2::identity();
    Mat2 inv_transpose_ = Mat2::identity();
};

}  // namespace mink
