#include "minksphere/isometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "minksphere/error.hpp"

namespace mink {

namespace {

double reduce_mod(double x, double period) {
    double r = std::fmod(x, period);
    if (r < 0.0) r += period;
    return r;
}

// Deterministic parallel map: out[i] = fn(i) for i in [0, n), any thread count.
template <typename F>
void parallel_for(int n, int threads, F&& fn) {
    threads = std::max(1, std::min(threads, n));
    if (threads == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            for (int i = t; i < n; i += threads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

SphereMap SphereMap::exact_linear(const Mat2& a, std::shared_ptr<const Norm2D> source) {
    if (std::abs(a.det()) <= 1e-12) {
        throw Error(ErrorCode::SingularTransform, "sphere map generator is singular");
    }
    SphereMap map;
    map.representation_ = Representation::ExactLinear;
    map.matrix_ = a;
    map.source_ = std::move(source);
    map.target_ = std::make_shared<const Norm2D>(
        Norm2D::build_from_spec(NormSpec::transform(map.source_->spec(), a)));
    map.source_curve_ =
        std::make_shared<const NaturalCurve>(BasedSpace::canonical(map.source_));
    map.target_curve_ =
        std::make_shared<const NaturalCurve>(BasedSpace::canonical(map.target_));
    return map;
}

SphereMap SphereMap::sampled_from_linear(const Mat2& a, std::shared_ptr<const Norm2D> source,
                                         int rows) {
    if (rows < 16) {
        throw Error(ErrorCode::InvalidConfig, "sampled sphere map needs >= 16 rows");
    }
    SphereMap map = exact_linear(a, std::move(source));
    map.representation_ = Representation::Sampled;

    const NaturalCurve& src = *map.source_curve_;
    const NaturalCurve& tgt = *map.target_curve_;
    const double period_src = 2.0 * src.half_length();
    const double period_tgt = 2.0 * tgt.half_length();

    map.sample_s_.resize(rows);
    map.sample_sigma_.resize(rows);
    for (int k = 0; k < rows; ++k) {
        map.sample_s_[k] = period_src * k / rows;
        const Vec2 y = a * src.natural_point(map.sample_s_[k]);
        const double raw = tgt.param_of_point(y);
        if (k == 0) {
            map.sample_sigma_[k] = raw;
            continue;
        }
        double diff = reduce_mod(raw - map.sample_sigma_[k - 1], period_tgt);
        if (diff > 0.5 * period_tgt) diff -= period_tgt;
        map.sample_sigma_[k] = map.sample_sigma_[k - 1] + diff;
    }
    map.direction_ = map.sample_sigma_[1] > map.sample_sigma_[0] ? 1.0 : -1.0;
    return map;
}

Vec2 SphereMap::operator()(const Vec2& x) const {
    if (representation_ == Representation::ExactLinear) {
        return matrix_ * x;
    }
    const NaturalCurve& src = *source_curve_;
    const NaturalCurve& tgt = *target_curve_;
    const double period_src = 2.0 * src.half_length();
    const double period_tgt = 2.0 * tgt.half_length();
    const int rows = static_cast<int>(sample_s_.size());
    const double s = reduce_mod(src.param_of_point(x), period_src);
    const double step = period_src / rows;
    int cell = std::min(rows - 1, static_cast<int>(s / step));
    const double frac = (s - sample_s_[cell]) / step;
    const double next = cell + 1 < rows ? sample_sigma_[cell + 1]
                                        : sample_sigma_[0] + direction_ * period_tgt;
    const double sigma = sample_sigma_[cell] + frac * (next - sample_sigma_[cell]);
    return tgt.natural_point(reduce_mod(sigma, period_tgt));
}

double SphereMap::max_isometry_defect(int pairs) const {
    const NaturalCurve& src = *source_curve_;
    const double period = 2.0 * src.half_length();
    double worst = 0.0;
    for (int k = 0; k < pairs; ++k) {
        // Deterministic low-discrepancy pair pattern.
        const double s1 = period * reduce_mod(0.6180339887 * k + 0.05, 1.0);
        const double s2 = period * reduce_mod(0.7548776662 * k + 0.41, 1.0);
        const Vec2 x1 = src.natural_point(s1);
        const Vec2 x2 = src.natural_point(s2);
        const double lhs = target_->gauge((*this)(x1) - (*this)(x2));
        const double rhs = source_->gauge(x1 - x2);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

double SphereMap::max_antipodality_defect(int samples) const {
    const NaturalCurve& src = *source_curve_;
    const double period = 2.0 * src.half_length();
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const Vec2 x = src.natural_point(period * k / samples);
        worst = std::max(worst, target_->gauge((*this)(-x) + (*this)(x)));
    }
    return worst;
}

void SphereMap::perturb_row(size_t row, double target_param_shift) {
    if (representation_ != Representation::Sampled || row >= sample_sigma_.size()) {
        throw Error(ErrorCode::InvalidConfig, "perturb_row needs a sampled map row");
    }
    sample_sigma_[row] += target_param_shift;
}

PairClass pair_classify(const NaturalCurve& curve, const Vec2& u, const Vec2& v) {
    const Norm2D& norm = curve.norm();
    const Vec2 un = norm.scale_to_sphere(u);
    const Vec2 vn = norm.scale_to_sphere(v);
    if (norm.gauge(un - vn) < 1e-8 || norm.gauge(un + vn) < 1e-8) {
        return {false, std::nullopt};
    }
    // A common supporting chord witness must sit at a corner: at smooth
    // points only the tangent direction is supporting and u, v are
    // independent.
    for (double sc : curve.corner_params()) {
        const Vec2 z = curve.natural_point(sc);
        const DerivativePair d = curve.natural_derivatives(sc);
        const Vec2 a = d.plus;
        const Vec2 b = -d.minus;
        const auto strictly_inside = [&](const Vec2& dir) {
            return cross(a, dir) > 1e-9 && cross(dir, b) > 1e-9;
        };
        const auto supporting = [&](const Vec2& dir) {
            return !strictly_inside(dir) && !strictly_inside(-dir);
        };
        if (supporting(un) && supporting(vn)) {
            return {false, z};
        }
    }
    return {true, std::nullopt};
}

Vec2 theta_map(const NaturalCurve& curve, const Vec2& x, const Vec2& c) {
    const Norm2D& norm = curve.norm();
    const ChordMate mate = chord_mate(norm, x, c);
    if (mate.degenerate || std::abs(mate.lambda) < 1e-7) {
        throw Error(ErrorCode::OnPerpSet, "x lies on the supporting-chord set of c");
    }
    if (mate.lambda > 0.0) {
        throw Error(ErrorCode::OnPerpSet, "x is in the opposite component -A of c");
    }
    return mate.point;
}

SpecialnessReport specialness_check(const SphereMap& map, const Vec2& c, int samples) {
    if (samples < 16) {
        throw Error(ErrorCode::InvalidConfig, "specialness_check needs samples >= 16");
    }
    const NaturalCurve& curve = map.source_curve();
    const Norm2D& norm = curve.norm();
    const Norm2D& target = *map.target_norm();
    const Vec2 cn = norm.scale_to_sphere(c);
    const double period = 2.0 * curve.half_length();

    // The perp set c_perp consists of the two extrema of z -> cross(c, z);
    // the component A is the open arc between them containing c.
    const auto height = [&](double s) { return cross(cn, curve.natural_point(s)); };
    const int grid = 1024;
    int kmax = 0, kmin = 0;
    double vmax = -1e300, vmin = 1e300;
    for (int k = 0; k < grid; ++k) {
        const double val = height(period * k / grid);
        if (val > vmax) {
            vmax = val;
            kmax = k;
        }
        if (val < vmin) {
            vmin = val;
            kmin = k;
        }
    }
    const auto refine = [&](int k, double sign) {
        double lo = period * (k - 1) / grid;
        double hi = period * (k + 1) / grid;
        for (int i = 0; i < 60 && hi - lo > 1e-10; ++i) {
            const double m1 = lo + (hi - lo) / 3.0;
            const double m2 = hi - (hi - lo) / 3.0;
            if (sign * height(m1) >= sign * height(m2)) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        return 0.5 * (lo + hi);
    };
    const double perp1 = curve.normalize_param(refine(kmax, 1.0));
    const double perp2 = curve.normalize_param(refine(kmin, -1.0));

    double lo = std::min(perp1, perp2);
    double hi = std::max(perp1, perp2);
    double sc = curve.param_of_point(cn);
    // Pick the arc (lo, hi) or its complement, whichever contains c.
    if (!(sc > lo && sc < hi)) {
        const double new_lo = hi;
        const double new_hi = lo + period;
        lo = new_lo;
        hi = new_hi;
        if (sc < lo) sc += period;
        if (!(sc > lo && sc < hi)) {
            throw Error(ErrorCode::DegenerateComponent, "could not locate the component of c");
        }
    }
    const double margin = std::max(1e-6, (hi - lo) * 1e-3);
    if (hi - lo <= 2.0 * margin) {
        throw Error(ErrorCode::DegenerateComponent, "component arc of c is empty");
    }

    SpecialnessReport report;
    std::vector<Vec2> values;
    values.reserve(samples);
    for (int j = 0; j < samples; ++j) {
        const double s = lo + margin + (hi - lo - 2.0 * margin) * (j + 0.5) / samples;
        const Vec2 x = curve.natural_point(s);
        Vec2 y;
        try {
            y = theta_map(curve, x, cn);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::OnPerpSet) continue;
            throw;
        }
        values.push_back((map(x) - map(y)) / norm.gauge(x - y));
    }
    if (values.empty()) {
        throw Error(ErrorCode::DegenerateComponent, "no usable samples in the component");
    }
    report.samples_used = static_cast<int>(values.size());
    for (size_t i = 0; i < values.size(); ++i) {
        for (size_t j = i + 1; j < values.size(); ++j) {
            report.max_deviation =
                std::max(report.max_deviation, target.gauge(values[i] - values[j]));
        }
    }
    if (report.max_deviation <= 1e-6) {
        report.common_value = values[values.size() / 2];
    }
    return report;
}

namespace {

// Shared machinery for chord triangles: psi(z) = (u(z) - v(z)) / ||..||
// sampled coarsely once, then bisection per target direction.
class TriangleSolver {
public:
    TriangleSolver(const NaturalCurve& curve, const Vec2& u, const Vec2& v)
        : curve_(curve), norm_(curve.norm()) {
        u_ = norm_.scale_to_sphere(u);
        v_ = norm_.scale_to_sphere(v);
        period_ = 2.0 * curve.half_length();
        params_.resize(kCoarse);
        psi_.resize(kCoarse);
        for (int k = 0; k < kCoarse; ++k) {
            params_[k] = period_ * k / kCoarse;
            psi_[k] = psi_at(params_[k]);
        }
    }

    ChordTriangle solve(const Vec2& w_in) const {
        const Vec2 w = norm_.scale_to_sphere(w_in);
        int bracket = -1;
        bool exact_hit = false;
        for (int k = 0; k < kCoarse; ++k) {
            const double h0 = cross(psi_[k], w);
            const double h1 = cross(psi_[(k + 1) % kCoarse], w);
            if (std::abs(h0) <= 1e-11) {
                // The grid parameter already is a root.
                bracket = k;
                exact_hit = true;
                break;
            }
            if (h0 * h1 < 0.0) {
                bracket = k;
                break;
            }
        }
        if (bracket < 0) {
            throw Error(ErrorCode::NoBracket,
                        "no sign change of the angular defect over the coarse scan");
        }
        double root = params_[bracket];
        if (!exact_hit) {
            double lo = params_[bracket];
            double hi = bracket + 1 < kCoarse ? params_[bracket + 1] : period_;
            double hlo = cross(psi_at(lo), w);
            double mid = 0.5 * (lo + hi);
            for (int i = 0; i < 64 && hi - lo > 1e-12; ++i) {
                mid = 0.5 * (lo + hi);
                const double hmid = cross(psi_at(mid), w);
                if (std::abs(hmid) <= 1e-11) break;
                if ((hlo < 0.0) == (hmid < 0.0)) {
                    lo = mid;
                    hlo = hmid;
                } else {
                    hi = mid;
                }
            }
            root = mid;
        }
        if (dot(psi_at(root), w) < 0.0) {
            root = curve_.normalize_param(root + curve_.half_length());
        }
        ChordTriangle tri;
        tri.z = curve_.natural_point(root);
        const ChordMate mu = chord_mate(norm_, tri.z, u_);
        const ChordMate mv = chord_mate(norm_, tri.z, v_);
        tri.x = mu.point;
        tri.y = mv.point;
        tri.x_degenerate = mu.degenerate;
        tri.y_degenerate = mv.degenerate;
        const Vec2 d = tri.x - tri.y;
        const double dn = euclid_norm(d);
        tri.alignment_defect = dn > 1e-12 ? std::abs(cross(d, w)) / (dn * euclid_norm(w)) : 0.0;
        return tri;
    }

private:
    Vec2 psi_at(double s) const {
        const Vec2 z = curve_.natural_point(s);
        const Vec2 a = chord_mate(norm_, z, u_).point;
        const Vec2 b = chord_mate(norm_, z, v_).point;
        const Vec2 phi = a - b;
        const double g = norm_.gauge(phi);
        if (g < 1e-9) {
            throw Error(ErrorCode::SingularPair,
                        "psi vanishes: the pair has a common supporting chord");
        }
        return phi / g;
    }

    static constexpr int kCoarse = 128;
    const NaturalCurve& curve_;
    const Norm2D& norm_;
    Vec2 u_, v_;
    double period_ = 0.0;
    std::vector<double> params_;
    std::vector<Vec2> psi_;
};

}  // namespace

ChordTriangle solve_chord_triangle(const NaturalCurve& curve, const Vec2& u, const Vec2& v,
                                   const Vec2& w) {
    const PairClass pc = pair_classify(curve, u, v);
    if (!pc.regular) {
        throw Error(ErrorCode::SingularPair, "chord triangles need a regular pair");
    }
    return TriangleSolver(curve, u, v).solve(w);
}

ExtensionResult build_extension_p2(const SphereMap& map, const Vec2& u, const Vec2& v,
                                   const ExtensionOptions& options) {
    const NaturalCurve& curve = map.source_curve();
    const Norm2D& norm = curve.norm();
    const Norm2D& target = *map.target_norm();

    Vec2 un = norm.scale_to_sphere(u);
    Vec2 vn = norm.scale_to_sphere(v);
    if (std::abs(cross(un, vn)) < 1e-10) {
        throw Error(ErrorCode::SingularPair, "u and v must be linearly independent");
    }

    ExtensionResult result;
    PairClass pc = pair_classify(curve, un, vn);
    if (!pc.regular) {
        if (!pc.witness) {
            throw Error(ErrorCode::SingularPair, "u and v are dependent sphere points");
        }
        // Substitute the singular witness (a corner, itself special) for one
        // of the inputs, keeping independence.
        result.pair_was_singular = true;
        const Vec2 z = *pc.witness;
        if (norm.gauge(z - vn) > 1e-8 && norm.gauge(z + vn) > 1e-8) {
            un = z;
        } else {
            vn = z;
        }
        pc = pair_classify(curve, un, vn);
        if (!pc.regular) {
            throw Error(ErrorCode::SingularPair,
                        "pair remains singular after witness substitution");
        }
    }
    result.used_u = un;
    result.used_v = vn;

    const Mat2 basis = Mat2::from_columns(un, vn);
    const Mat2 images = Mat2::from_columns(map(un), map(vn));
    const Mat2 ext = images * basis.inverse();
    result.map = ext;

    const double period = 2.0 * curve.half_length();
    const TriangleSolver solver(curve, un, vn);
    for (int k = 0; k < options.sweep_points; ++k) {
        const Vec2 w = curve.natural_point(period * (k + 0.5) / options.sweep_points);
        const ChordTriangle tri = solver.solve(w);
        result.max_unit_defect =
            std::max(result.max_unit_defect, std::abs(target.gauge(ext * w) - 1.0));
        if (!(tri.x_degenerate && tri.y_degenerate)) {
            const double len = norm.gauge(tri.x - tri.y);
            if (len > 1e-9) {
                const double c = dot(tri.x - tri.y, w) > 0.0 ? len : -len;
                const Vec2 via_f = (map(tri.x) - map(tri.y)) / c;
                result.max_chord_defect =
                    std::max(result.max_chord_defect, target.gauge(via_f - ext * w));
            }
        }
    }
    for (int k = 0; k < options.grid_points; ++k) {
        const Vec2 x = curve.natural_point(period * k / options.grid_points);
        result.max_grid_defect =
            std::max(result.max_grid_defect, target.gauge(ext * x - map(x)));
    }
    const double worst = std::max({result.max_unit_defect, result.max_chord_defect,
                                   result.max_grid_defect});
    if (worst > options.tolerance) {
        std::ostringstream os;
        os << "extension sweep deviation " << worst << " exceeds tolerance "
           << options.tolerance;
        throw Error(ErrorCode::NotIsometric, os.str());
    }
    return result;
}

ReconstructionResult reconstruct_two_corner(const SphereMap& map,
                                            const ReconstructionOptions& options) {
    const auto source = map.source_norm();
    const auto target = map.target_norm();

    // Scan-certify the two-corner hypothesis on the source sphere.
    const auto scan = nonsmooth_scan(map.source_curve(), options.scan_resolution, 1e-3);
    if (scan.size() != 2) {
        std::ostringstream os;
        os << "expected exactly 2 non-smooth points, scan found " << scan.size();
        throw Error(ErrorCode::WrongCornerCount, os.str());
    }

    const Vec2 corner = map.source_curve().natural_point(scan.front());
    const BasedSpace src_space = BasedSpace::rebased_at_corner(source, corner);
    const NaturalCurve src(src_space);
    const Vec2 e1 = src_space.e1();
    const Vec2 e2 = src_space.e2();

    const Vec2 e1_target = map(e1);
    const BasedSpace tgt_space = BasedSpace::rebased_at_corner(target, e1_target);
    const NaturalCurve tgt(tgt_space);

    ReconstructionResult result;
    // Orientation fix: does f carry the forward arc to the forward arc?
    const double probe = 1e-3;
    const double sigma = tgt.param_of_point(map(src.natural_point(probe)));
    result.orientation_reversed = sigma > tgt.half_length();
    const CurveView tgt_view(tgt, result.orientation_reversed);

    result.half_length_source = src.half_length();
    result.half_length_target = tgt.half_length();
    if (std::abs(result.half_length_source - result.half_length_target) >
        options.half_length_tolerance) {
        std::ostringstream os;
        os << "half-lengths differ: " << result.half_length_source << " vs "
           << result.half_length_target;
        throw Error(ErrorCode::HalfLengthMismatch, os.str());
    }

    result.source_jj = lemma_jj_limits(CurveView(src));
    result.target_jj = lemma_jj_limits(tgt_view);
    if (std::abs(result.source_jj.ratio_limit - result.target_jj.ratio_limit) >
            options.jump_tolerance ||
        std::abs(result.source_jj.slope_limit - result.target_jj.slope_limit) >
            options.jump_tolerance) {
        throw Error(ErrorCode::JumpMismatch,
                    "corner jumps recovered from the two spheres disagree");
    }

    const double L = result.half_length_source;
    for (int k = 0; k < options.grid_points; ++k) {
        const double s = L * k / (options.grid_points - 1);
        const double defect = target->gauge(map(src.natural_point(s)) - tgt_view.point(s));
        result.match_defect = std::max(result.match_defect, defect);
    }
    if (result.match_defect > options.match_tolerance) {
        std::ostringstream os;
        os << "f o r differs from the target parameterization by " << result.match_defect;
        throw Error(ErrorCode::VerificationFailure, os.str());
    }

    const Vec2 e1t = tgt_view.point(0.0);
    const Vec2 e2t = tgt_view.derivatives(0.0).avg;
    result.map = Mat2::from_columns(e1t, e2t) * Mat2::from_columns(e1, e2).inverse();

    for (int k = 0; k < options.grid_points; ++k) {
        const double s = 2.0 * L * k / options.grid_points;
        const double defect =
            target->gauge(result.map * src.natural_point(s) - tgt_view.point(s));
        result.extension_defect = std::max(result.extension_defect, defect);
    }
    if (result.extension_defect > options.extension_tolerance) {
        std::ostringstream os;
        os << "extension stage: I o r deviates by " << result.extension_defect;
        throw Error(ErrorCode::VerificationFailure, os.str());
    }
    return result;
}

VerifyReport verify_extension(const SphereMap& map, const Mat2& m, int grid, int threads) {
    if (grid < 64) {
        throw Error(ErrorCode::InvalidConfig, "verify_extension needs grid >= 64");
    }
    const NaturalCurve& curve = map.source_curve();
    const Norm2D& target = *map.target_norm();
    const double period = 2.0 * curve.half_length();

    std::vector<double> map_dev(grid), unit_dev(grid), anti_dev(grid);
    parallel_for(grid, threads, [&](int k) {
        const Vec2 x = curve.natural_point(period * k / grid);
        const Vec2 fx = map(x);
        map_dev[k] = target.gauge(m * x - fx);
        unit_dev[k] = std::abs(target.gauge(m * x) - 1.0);
        anti_dev[k] = target.gauge(map(-x) + fx);
    });
    VerifyReport report;
    for (int k = 0; k < grid; ++k) {
        report.max_map_deviation = std::max(report.max_map_deviation, map_dev[k]);
        report.max_unit_deviation = std::max(report.max_unit_deviation, unit_dev[k]);
        report.max_antipodality_defect = std::max(report.max_antipodality_defect, anti_dev[k]);
        if (anti_dev[k] > 1e-9) ++report.antipodality_violations;
    }
    return report;
}

}  // namespace mink
