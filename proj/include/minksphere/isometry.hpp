#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "minksphere/jumps.hpp"
#include "minksphere/parameterization.hpp"

namespace mink {

/// A sphere-to-sphere isometry candidate between two 2D norms, either an
/// exact linear map restricted to the sphere or a sampled table interpolated
/// along the target sphere by natural parameter (never chordally).
class SphereMap {
public:
    enum class Representation { ExactLinear, Sampled };

    /// The pushforward construction: target gauge(v) = source gauge(A^-1 v),
    /// f = A restricted to the source sphere.
    static SphereMap exact_linear(const Mat2& a, std::shared_ptr<const Norm2D> source);

    /// Same map, represented as `rows` samples (source parameter, target
    /// point) interpolated along the target sphere.
    static SphereMap sampled_from_linear(const Mat2& a, std::shared_ptr<const Norm2D> source,
                                         int rows);

    Vec2 operator()(const Vec2& x) const;

    Representation representation() const { return representation_; }
    std::shared_ptr<const Norm2D> source_norm() const { return source_; }
    std::shared_ptr<const Norm2D> target_norm() const { return target_; }
    const NaturalCurve& source_curve() const { return *source_curve_; }
    const NaturalCurve& target_curve() const { return *target_curve_; }
    std::shared_ptr<const NaturalCurve> source_curve_ptr() const { return source_curve_; }

    /// Max |  ||f(x)-f(y)||_Y - ||x-y||_X  | over sampled pairs of table rows
    /// (uniform sphere samples for exact maps).
    double max_isometry_defect(int pairs) const;

    /// Max gauge_Y(f(-x) + f(x)) over uniform samples.
    double max_antipodality_defect(int samples) const;

    /// Moves one sampled row along the target sphere; for negative-control
    /// tests only. Throws for exact maps.
    void perturb_row(size_t row, double target_param_shift);

    size_t row_count() const { return sample_s_.size(); }

private:
    SphereMap() = default;

    Representation representation_ = Representation::ExactLinear;
    std::shared_ptr<const Norm2D> source_;
    std::shared_ptr<const Norm2D> target_;
    std::shared_ptr<const NaturalCurve> source_curve_;
    std::shared_ptr<const NaturalCurve> target_curve_;
    Mat2 matrix_;

    // Sampled representation: uniform source parameters and unwrapped
    // (monotone) target parameters; direction is +-1.
    std::vector<double> sample_s_;
    std::vector<double> sample_sigma_;
    double direction_ = 1.0;
};

struct PairClass {
    bool regular = true;
    std::optional<Vec2> witness;  // the corner realizing singularity
};

/// Singular when u = +-v or some sphere point z has supporting chords in
/// both directions.
PairClass pair_classify(const NaturalCurve& curve, const Vec2& u, const Vec2& v);

/// The theta map of the special-direction machinery: the unique y with
/// x - y = ||x - y|| * c, for x in the open component of S \ c_perp
/// containing c. Throws OnPerpSet near the supporting chords.
Vec2 theta_map(const NaturalCurve& curve, const Vec2& x, const Vec2& c);

struct SpecialnessReport {
    double max_deviation = 0.0;
    std::optional<Vec2> common_value;  // set when max_deviation <= 1e-6
    int samples_used = 0;
};

/// Evaluates g(x) = (f(x) - f(theta(x))) / ||x - theta(x)|| over the
/// component of c and reports how far it is from constant. Constancy
/// certifies that f maps c-chords to f(c)-chords of preserved length.
SpecialnessReport specialness_check(const SphereMap& map, const Vec2& c, int samples);

struct ChordTriangle {
    Vec2 x, y, z;
    bool x_degenerate = false;
    bool y_degenerate = false;
    double alignment_defect = 0.0;  // |sin(angle(x - y, w))|
};

/// Finds z with psi(z) = w (psi as in the chord-triangle lemma) by bisecting
/// the angular defect, using psi(-z) = -psi(z) for the bracket. Throws
/// SingularPair for singular (u, v) and NoBracket when no sign change shows.
ChordTriangle solve_chord_triangle(const NaturalCurve& curve, const Vec2& u, const Vec2& v,
                                   const Vec2& w);

struct ExtensionOptions {
    int sweep_points = 256;   // chord-triangle verification sweep
    int grid_points = 512;    // direct grid identity
    double tolerance = 1e-6;  // sweep tolerance; sampled maps need the
                              // interpolation budget instead
};

struct ExtensionResult {
    Mat2 map;
    double max_unit_defect = 0.0;   // | ||L w||_Y - 1 |
    double max_chord_defect = 0.0;  // || (f(x)-f(y))/c - L w ||_Y
    double max_grid_defect = 0.0;   // || L r(s) - f(r(s)) ||_Y
    bool pair_was_singular = false;
    Vec2 used_u, used_v;
};

/// Builds the linear extension L with L u = f(u), L v = f(v) and verifies it
/// per the two-special-points construction. Substitutes the singularity
/// witness corner when (u, v) is singular. Throws NotIsometric when the
/// verification sweep exceeds tolerance.
ExtensionResult build_extension_p2(const SphereMap& map, const Vec2& u, const Vec2& v,
                                   const ExtensionOptions& options = {});

struct ReconstructionOptions {
    int grid_points = 512;
    int scan_resolution = 512;
    double half_length_tolerance = 1e-6;
    double jump_tolerance = 1e-3;
    double match_tolerance = 1e-6;      // f o r vs target curve
    double extension_tolerance = 1e-5;  // I o r vs target curve on [0, 2L]
};

struct ReconstructionResult {
    Mat2 map;
    double half_length_source = 0.0;
    double half_length_target = 0.0;
    JjLimits source_jj, target_jj;
    bool orientation_reversed = false;
    double match_defect = 0.0;      // max || f(r(s)) - rt(s) ||_Y on [0, L]
    double extension_defect = 0.0;  // max || I r(s) - rt(s) ||_Y on [0, 2L]
};

/// The two-corner reconstruction pipeline: rebases both spheres at their
/// corners, fixes the orientation of the target basis, checks half-length
/// and corner-jump equality, then returns the linear map taking (e1, e2)
/// to the target basis, verified against f on the full period.
ReconstructionResult reconstruct_two_corner(const SphereMap& map,
                                            const ReconstructionOptions& options = {});

struct VerifyReport {
    double max_map_deviation = 0.0;   // || M x - f(x) ||_Y
    double max_unit_deviation = 0.0;  // | ||M x||_Y - 1 |
    double max_antipodality_defect = 0.0;
    int antipodality_violations = 0;  // samples with defect > 1e-9
};

/// Measures how far M is from extending f over a parameter grid. Reports,
/// never throws on deviation.
VerifyReport verify_extension(const SphereMap& map, const Mat2& m, int grid,
                              int threads = 1);

}  // namespace mink
