#pragma once

#include <optional>
#include <vector>

#include "minksphere/parameterization.hpp"

namespace mink {

/// Radial and tangential jumps of r' at a parameter:
/// (r'+ - r'-)/2 = jr * r(s) + jt * r'+-(s).
struct JumpData {
    double jr = 0.0;
    double jt = 0.0;
};

JumpData jumps(const CurveView& curve, double s);
JumpData jumps(const NaturalCurve& curve, double s);

/// Parameters in [0, 2L) where the one-sided derivative gap exceeds
/// gap_threshold: coarse second-difference scan at scale 1/resolution,
/// ternary shrink to width 1e-9, dedup within 1e-7.
std::vector<double> nonsmooth_scan(const NaturalCurve& curve, int resolution,
                                   double gap_threshold);

/// Second intersection of the line x + R*direction with the sphere.
/// `degenerate` marks supporting lines (no second intersection); the point
/// is then x itself.
struct ChordMate {
    Vec2 point;
    double lambda = 0.0;  // mate = x + lambda * normalized(direction)
    bool degenerate = false;
};

ChordMate chord_mate(const Norm2D& norm, const Vec2& x, const Vec2& direction);
ChordMate chord_mate(const NaturalCurve& curve, const Vec2& x, const Vec2& direction);

/// One measurement of the distance function nu(eps) = ||r(b+eps) - r(a)||.
struct SlopeMeasurement {
    double left_slope = 0.0;
    double right_slope = 0.0;
    double base_distance = 0.0;
    double eps_used = 0.0;
};

/// Comparison of measured one-sided slopes of nu against the asymptotic
/// prediction x - sign(eps) jr y / (1 + sign(eps) jt).
struct LemmaAReport {
    double chord_param = 0.0;  // s with r(b) - r(a) = ||..|| r(s)
    double x = 0.0;            // r'(b) coordinates in (r(s), r'+-(s))
    double y = 0.0;
    JumpData jump;
    double predicted_left = 0.0;
    double predicted_right = 0.0;
    double measured_left = 0.0;  // Richardson-extrapolated quotients
    double measured_right = 0.0;
    std::vector<SlopeMeasurement> samples;
    double rel_err_left = 0.0;
    double rel_err_right = 0.0;
};

LemmaAReport lemma_a_check(const NaturalCurve& curve, double a, double b);

/// The two metric limits at a corner at parameter 0 (space rebased so that
/// e1 = r(0), e2 = r'+-(0)): chord-length ratio -> (1-jt)/(1+jt) and
/// mate-distance slope -> jr/(1-jt).
struct JjLimits {
    double ratio_limit = 0.0;
    double slope_limit = 0.0;
};

struct JjOptions {
    double corner_gap_threshold = 1e-3;
    bool bypass_corner_check = false;
};

JjLimits lemma_jj_limits(const CurveView& curve, const JjOptions& options = {});
JjLimits lemma_jj_limits(const NaturalCurve& curve, const JjOptions& options = {});

/// Derivative coordinates recovered from metric limits across an e1-chord.
struct RecoveredDerivatives {
    double x = 0.0;
    double y = 0.0;
    double xbar = 0.0;
    double ybar = 0.0;
};

RecoveredDerivatives lemma_xy_recovery(const NaturalCurve& curve, double s, double sbar);

enum class ProbeMode { ns, sd };

struct SmoothnessProbeConfig {
    double delta = 0.1;
    double eps0 = 1e-2;
    std::vector<double> eps_schedule = {1e-3, 5e-4, 2.5e-4};
};

/// Chord inputs for the sd probe: parameters with r(b) - r(a) parallel to
/// the probed point and r differentiable at b.
struct SdChord {
    double a = 0.0;
    double b = 0.0;
};

/// Distance-only smoothness tests. Mode ns detects corner cutting near
/// +-point; mode sd detects the superlinear growth of ||x-a|| + ||y-a||
/// around the chord through the probed direction. Returns true when the
/// point is detected as non-smooth.
bool smoothness_probe(const NaturalCurve& curve, const Vec2& point, ProbeMode mode,
                      const SmoothnessProbeConfig& config,
                      const std::optional<SdChord>& sd_chord = std::nullopt);

}  // namespace mink
