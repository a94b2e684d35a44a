#include "minksphere/jumps.hpp"

#include <algorithm>
#include <cmath>

#include "minksphere/error.hpp"

namespace mink {

namespace {

constexpr double kJjEps[3] = {1e-3, 5e-4, 2.5e-4};

JumpData solve_jumps(const Vec2& r, const DerivativePair& d) {
    const double det = cross(r, d.avg);
    if (std::abs(det) <= 1e-10) {
        throw Error(ErrorCode::DegenerateBasis,
                    "r(s) and r'+-(s) numerically dependent; parameterization bug");
    }
    const Vec2 rhs = 0.5 * (d.plus - d.minus);
    const Vec2 coords = solve_in_basis(r, d.avg, rhs);
    return {coords.x, coords.y};
}

// First-order Richardson extrapolation over a halving schedule v(e), v(e/2).
double richardson1(double coarse, double fine) { return 2.0 * fine - coarse; }

}  // namespace

JumpData jumps(const CurveView& curve, double s) {
    return solve_jumps(curve.point(s), curve.derivatives(s));
}

JumpData jumps(const NaturalCurve& curve, double s) {
    return jumps(CurveView(curve), s);
}

ChordMate chord_mate(const Norm2D& norm, const Vec2& x, const Vec2& direction) {
    if (std::abs(norm.gauge(x) - 1.0) > 1e-8) {
        throw Error(ErrorCode::NotOnSphere, "chord_mate requires a sphere point");
    }
    const Vec2 d = norm.scale_to_sphere(direction);
    const auto g = [&](double lambda) { return norm.gauge(x + lambda * d) - 1.0; };

    // g is convex with g(0) ~= 0; the mate is the far root. Probe each side
    // from coarse to fine for an interior negative value.
    static constexpr double kProbes[] = {2.0,  1.0,  0.5,  0.25, 0.1,  0.05, 0.02,
                                         0.01, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7};
    double side = 0.0;
    double inner = 0.0;
    for (double p : kProbes) {
        if (g(p) < -1e-13) {
            side = 1.0;
            inner = p;
            break;
        }
        if (g(-p) < -1e-13) {
            side = -1.0;
            inner = -p;
            break;
        }
    }
    if (side == 0.0 || std::abs(inner) < 1e-7) {
        return {x, 0.0, true};
    }
    double lo = inner;       // g(lo) < 0
    double hi = side * 4.0;  // gauge(x + 4d) >= 4 - 1 > 1
    for (int i = 0; i < 64 && std::abs(hi - lo) > 1e-12; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double lambda = 0.5 * (lo + hi);
    return {x + lambda * d, lambda, false};
}

ChordMate chord_mate(const NaturalCurve& curve, const Vec2& x, const Vec2& direction) {
    return chord_mate(curve.norm(), x, direction);
}

std::vector<double> nonsmooth_scan(const NaturalCurve& curve, int resolution,
                                   double gap_threshold) {
    if (resolution < 64) {
        throw Error(ErrorCode::InvalidConfig, "nonsmooth_scan needs resolution >= 64");
    }
    const Norm2D& norm = curve.norm();
    const double period = 2.0 * curve.half_length();
    const double step = period / resolution;

    std::vector<Vec2> pts(resolution);
    for (int k = 0; k < resolution; ++k) pts[k] = curve.natural_point(k * step);

    std::vector<double> mismatch(resolution);
    for (int k = 0; k < resolution; ++k) {
        const Vec2& prev = pts[(k + resolution - 1) % resolution];
        const Vec2& next = pts[(k + 1) % resolution];
        mismatch[k] = norm.gauge(next - 2.0 * pts[k] + prev) / step;
    }
    std::vector<double> sorted = mismatch;
    std::nth_element(sorted.begin(), sorted.begin() + resolution / 2, sorted.end());
    const double median = sorted[resolution / 2];
    const double cutoff = std::max(0.25 * gap_threshold, 4.0 * median);

    std::vector<double> found;
    for (int k = 0; k < resolution; ++k) {
        const double prev = mismatch[(k + resolution - 1) % resolution];
        const double next = mismatch[(k + 1) % resolution];
        if (mismatch[k] < cutoff || mismatch[k] < prev || mismatch[k] < next) continue;

        // Ternary shrink of the bracket around the second-difference peak.
        double lo = (k - 1) * step;
        double hi = (k + 1) * step;
        const auto score = [&](double u, double w) {
            return norm.gauge(curve.natural_point(u + w) + curve.natural_point(u - w) -
                              2.0 * curve.natural_point(u));
        };
        while (hi - lo > 1e-9) {
            const double w = (hi - lo) / 3.0;
            const double m1 = lo + w;
            const double m2 = hi - w;
            if (score(m1, w) >= score(m2, w)) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        const double located = 0.5 * (lo + hi);

        // Measured jump from one-sided derivatives just off the located
        // parameter; rejects curvature-induced false peaks.
        const double h = 1e-8;
        const Vec2 dplus = curve.natural_derivatives(located + h).plus;
        const Vec2 dminus = curve.natural_derivatives(located - h).minus;
        if (norm.gauge(dplus - dminus) > gap_threshold) {
            found.push_back(curve.normalize_param(located));
        }
    }

    std::sort(found.begin(), found.end());
    std::vector<double> out;
    for (double s : found) {
        if (s > period - 1e-7) s = 0.0;  // wrap back onto the base period
        if (out.empty() || std::abs(s - out.back()) > 1e-7) {
            out.push_back(s);
        }
    }
    if (out.size() > 1 && std::abs(out.front() + period - out.back()) < 1e-7) {
        out.pop_back();
    }
    std::sort(out.begin(), out.end());
    return out;
}

LemmaAReport lemma_a_check(const NaturalCurve& curve, double a, double b) {
    const Norm2D& norm = curve.norm();
    const Vec2 ra = curve.natural_point(a);
    const Vec2 rb = curve.natural_point(b);
    const Vec2 diff = rb - ra;
    const double base = norm.gauge(diff);
    if (base < 1e-9) {
        throw Error(ErrorCode::CoincidentPoints, "r(a) and r(b) coincide");
    }
    const DerivativePair db = curve.natural_derivatives(b);
    if (db.gap(norm) >= 1e-6) {
        throw Error(ErrorCode::NotDifferentiableAtB, "r is not differentiable at b");
    }

    LemmaAReport report;
    const Vec2 chord_dir = diff / base;
    report.chord_param = curve.param_of_point(chord_dir);
    const DerivativePair ds = curve.natural_derivatives(report.chord_param);
    report.jump = solve_jumps(chord_dir, ds);

    const Vec2 coords = solve_in_basis(chord_dir, ds.avg, db.avg);
    report.x = coords.x;
    report.y = coords.y;
    if (report.y <= 0.0) {
        throw Error(ErrorCode::VerificationFailure,
                    "expected y > 0 in the r'(b) decomposition");
    }

    report.predicted_right = report.x - report.jump.jr * report.y / (1.0 + report.jump.jt);
    report.predicted_left = report.x + report.jump.jr * report.y / (1.0 - report.jump.jt);

    for (double eps : {1e-3, 1e-4, 1e-5}) {
        SlopeMeasurement m;
        m.eps_used = eps;
        m.base_distance = base;
        m.right_slope = (norm.gauge(curve.natural_point(b + eps) - ra) - base) / eps;
        m.left_slope = (base - norm.gauge(curve.natural_point(b - eps) - ra)) / eps;
        report.samples.push_back(m);
    }
    // Richardson extrapolation over the 1e-4 -> 1e-5 decade.
    const auto extrapolate = [](double coarse, double fine) {
        return (10.0 * fine - coarse) / 9.0;
    };
    report.measured_right =
        extrapolate(report.samples[1].right_slope, report.samples[2].right_slope);
    report.measured_left =
        extrapolate(report.samples[1].left_slope, report.samples[2].left_slope);

    report.rel_err_right = std::abs(report.measured_right - report.predicted_right) /
                           std::max(1.0, std::abs(report.predicted_right));
    report.rel_err_left = std::abs(report.measured_left - report.predicted_left) /
                          std::max(1.0, std::abs(report.predicted_left));
    return report;
}

JjLimits lemma_jj_limits(const CurveView& curve, const JjOptions& options) {
    const Norm2D& norm = curve.norm();
    const Vec2 e1 = curve.point(0.0);
    const DerivativePair d0 = curve.derivatives(0.0);
    if (!options.bypass_corner_check && d0.gap(norm) < options.corner_gap_threshold) {
        throw Error(ErrorCode::NotACorner, "derivative gap at parameter 0 below threshold");
    }

    double ratios[3];
    double slopes[3];
    for (int i = 0; i < 3; ++i) {
        const double eps = kJjEps[i];
        const Vec2 re = curve.point(eps);
        const ChordMate mate = chord_mate(norm, re, e1);
        ratios[i] = norm.gauge(re - e1) / norm.gauge(mate.point + e1);
        slopes[i] = (norm.gauge(re - mate.point) - 2.0) / (2.0 * eps);
    }
    JjLimits out;
    out.ratio_limit = richardson1(ratios[1], ratios[2]);
    out.slope_limit = richardson1(slopes[1], slopes[2]);
    return out;
}

JjLimits lemma_jj_limits(const NaturalCurve& curve, const JjOptions& options) {
    return lemma_jj_limits(CurveView(curve), options);
}

RecoveredDerivatives lemma_xy_recovery(const NaturalCurve& curve, double s, double sbar) {
    const Norm2D& norm = curve.norm();
    const Vec2 e1 = curve.space().e1();
    const Vec2 rs = curve.natural_point(s);
    const Vec2 rsbar = curve.natural_point(sbar);
    const double base = norm.gauge(rs - rsbar);
    if (base < 1e-9 || norm.gauge(rs - rsbar - base * e1) > 1e-8 * std::max(1.0, base)) {
        throw Error(ErrorCode::BadChordAlignment,
                    "r(s) - r(sbar) is not aligned with e1");
    }
    if (norm.gauge(rs - e1) < 1e-8 || norm.gauge(rs + e1) < 1e-8) {
        throw Error(ErrorCode::BadChordAlignment, "r(s) must differ from +-e1");
    }
    const JumpData j0 = jumps(curve, 0.0);
    if (j0.jr > -1e-4) {
        throw Error(ErrorCode::SingularSystem,
                    "radial jump at the corner vanishes; recovery is ill-posed");
    }

    // Matched-offset measurements of the four limits, per side.
    double m2_side[2], m3_side[2], m4_vals[3], m5_vals[3];
    for (int side = 0; side < 2; ++side) {
        const double sign = side == 0 ? 1.0 : -1.0;
        double m2[3], m3[3];
        for (int i = 0; i < 3; ++i) {
            const double eps = sign * kJjEps[i];
            const Vec2 q = curve.natural_point(s + eps);
            const ChordMate mate = chord_mate(norm, q, e1);
            m2[i] = norm.gauge(mate.point - rsbar) / norm.gauge(q - rs);
            m3[i] = (norm.gauge(q - mate.point) - base) / eps;
            const double m45 = (norm.gauge(q - rsbar) - base) / eps;
            (side == 0 ? m4_vals : m5_vals)[i] = m45;
        }
        m2_side[side] = richardson1(m2[1], m2[2]);
        m3_side[side] = richardson1(m3[1], m3[2]);
    }
    const double m2 = 0.5 * (m2_side[0] + m2_side[1]);
    const double m3 = 0.5 * (m3_side[0] + m3_side[1]);
    const double m4 = richardson1(m4_vals[1], m4_vals[2]);
    const double m5 = richardson1(m5_vals[1], m5_vals[2]);

    // (4): m4 = x - kp y, (5): m5 = x + km y with the corner jumps at 0.
    const double kp = j0.jr / (1.0 + j0.jt);
    const double km = j0.jr / (1.0 - j0.jt);
    const double denom = km + kp;  // 2 jr / (1 - jt^2)
    if (std::abs(denom) < 1e-6) {
        throw Error(ErrorCode::SingularSystem, "determinant 2 jr y/(1-jt^2) vanishes");
    }
    RecoveredDerivatives out;
    out.y = (m5 - m4) / denom;
    out.x = m4 + kp * out.y;
    out.ybar = -out.y / m2;
    out.xbar = (out.x - m3) * out.ybar / out.y;
    if (!(out.y > 0.0) || !(out.ybar < 0.0)) {
        throw Error(ErrorCode::VerificationFailure,
                    "recovered derivatives violate y > 0 > ybar");
    }
    return out;
}

namespace {

// Parameter offset h >= 0 with ||r(s0 + dir*h) - target|| = rho.
double offset_at_distance(const NaturalCurve& curve, double s0, double dir,
                          const Vec2& target, double rho) {
    const Norm2D& norm = curve.norm();
    double lo = 0.0;
    double hi = std::min(3.0 * rho, curve.half_length());
    for (int i = 0; i < 24; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double d = norm.gauge(curve.natural_point(s0 + dir * mid) - target);
        if (d < rho) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

bool smoothness_probe(const NaturalCurve& curve, const Vec2& point, ProbeMode mode,
                      const SmoothnessProbeConfig& config,
                      const std::optional<SdChord>& sd_chord) {
    const Norm2D& norm = curve.norm();
    if (std::abs(norm.gauge(point) - 1.0) > 1e-8) {
        throw Error(ErrorCode::NotOnSphere, "probe point must lie on the sphere");
    }
    if (!(config.delta > 0.0) || !(config.eps0 > 0.0) || config.eps_schedule.empty()) {
        throw Error(ErrorCode::InvalidConfig, "probe needs delta > 0, eps0 > 0, eps list");
    }
    for (size_t i = 0; i < config.eps_schedule.size(); ++i) {
        if (!(config.eps_schedule[i] < config.eps0) || config.eps_schedule[i] <= 0.0 ||
            (i > 0 && config.eps_schedule[i] >= config.eps_schedule[i - 1])) {
            throw Error(ErrorCode::InvalidConfig, "eps schedule must decrease below eps0");
        }
    }

    if (mode == ProbeMode::ns) {
        const double sp = curve.param_of_point(point);
        const double L = curve.half_length();
        const Vec2 antipode = -point;
        for (double eps : config.eps_schedule) {
            const double rho = 0.9 * eps;
            Vec2 xs[2], ys[2];
            for (int side = 0; side < 2; ++side) {
                const double dir = side == 0 ? 1.0 : -1.0;
                xs[side] = curve.natural_point(
                    sp + dir * offset_at_distance(curve, sp, dir, point, rho));
                ys[side] = curve.natural_point(
                    sp + L + dir * offset_at_distance(curve, sp + L, dir, antipode, rho));
            }
            double best = 1e300;
            for (const Vec2& x : xs) {
                for (const Vec2& y : ys) best = std::min(best, norm.gauge(x - y));
            }
            if (!(best < 2.0 - config.delta * eps)) return false;
        }
        return true;
    }

    // sd mode.
    if (!sd_chord) {
        throw Error(ErrorCode::InvalidConfig, "sd probe requires chord parameters (a, b)");
    }
    const double a = sd_chord->a;
    const double b = sd_chord->b;
    const Vec2 ra = curve.natural_point(a);
    const Vec2 rb = curve.natural_point(b);
    const double base = norm.gauge(rb - ra);
    if (base < 1e-9 || norm.gauge(rb - ra - base * point) > 1e-8 * std::max(1.0, base)) {
        throw Error(ErrorCode::InvalidConfig, "sd probe chord is not aligned with point");
    }
    if (curve.natural_derivatives(b).gap(norm) >= 1e-6) {
        throw Error(ErrorCode::InvalidConfig, "sd probe requires differentiability at b");
    }
    for (double eps : config.eps_schedule) {
        const double hp = offset_at_distance(curve, b, 1.0, rb, eps);
        const double hm = offset_at_distance(curve, b, -1.0, rb, eps);
        const Vec2 x = curve.natural_point(b + hp);
        const Vec2 y = curve.natural_point(b - hm);
        const double lhs = norm.gauge(x - ra) + norm.gauge(y - ra);
        if (!(lhs > 2.0 * base + config.delta * eps)) return false;
    }
    return true;
}

}  // namespace mink
