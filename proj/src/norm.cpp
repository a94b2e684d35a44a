#include "minksphere/norm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace mink {

namespace {

constexpr double kBoundaryBand = 1e-9;
constexpr double kCornerBand = 1e-9;
// Euclidean inradius lower bound for the lens bodies; |beta| < 1/3 keeps the
// rhombus |x| + 3|y| <= 1 inside, whose inradius is 1/sqrt(10) > 0.3.
constexpr double kLensInradius = 0.3;

double lens_f(double x, double beta) { return 0.5 * (1.0 - x * x) * (1.0 + beta * x); }
double lens_fprime(double x, double beta) { return 0.5 * (beta - 2.0 * x - 3.0 * beta * x * x); }

bool lens_contains(const Vec2& v, double beta) {
    if (std::abs(v.x) > 1.0) return false;
    return v.y <= lens_f(v.x, beta) && v.y >= -lens_f(-v.x, beta);
}

// Distance of a near-boundary point to the lens arcs, in the y direction.
double lens_boundary_gap(const Vec2& v, double beta) {
    if (std::abs(v.x) > 1.0 + 1e-12) return std::abs(v.x);
    return std::min(std::abs(v.y - lens_f(v.x, beta)), std::abs(v.y + lens_f(-v.x, beta)));
}

constexpr double kLensCornerBand = 1e-9;

// Supporting cone of the lens(beta) body at a boundary point w.
SupportCone lens_cone_at(const Vec2& w, double beta) {
    SupportCone cone;
    if (1.0 - std::abs(w.x) < kLensCornerBand) {
        // Corner at (sign, 0): support lines are the one-sided arc tangents.
        const double sgn = w.x > 0.0 ? 1.0 : -1.0;
        const double mu = lens_fprime(sgn, beta);   // upper-arc slope
        const double ml = lens_fprime(-sgn, beta);  // lower-arc slope
        const Vec2 phi_upper = Vec2{-mu, 1.0} / (-mu * sgn);
        const Vec2 phi_lower = Vec2{ml, -1.0} / (ml * sgn);
        cone.lo = phi_lower;
        cone.hi = phi_upper;
        cone.corner = true;
        if (sgn < 0.0) std::swap(cone.lo, cone.hi);
        return cone;
    }
    Vec2 phi;
    if (w.y >= 0.0) {
        const double m = lens_fprime(w.x, beta);
        phi = Vec2{-m, 1.0} / (-m * w.x + w.y);
    } else {
        const double m = lens_fprime(-w.x, beta);
        phi = Vec2{m, -1.0} / (m * w.x - w.y);
    }
    cone.lo = cone.hi = phi;
    return cone;
}

// The double lens is lens(0) intersected with its 90-degree rotation.
Vec2 rot90_inv(const Vec2& v) { return {v.y, -v.x}; }
Vec2 rot90(const Vec2& v) { return {-v.y, v.x}; }

}  // namespace

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidSpec: return "InvalidSpec";
        case ErrorCode::SingularTransform: return "SingularTransform";
        case ErrorCode::ZeroVector: return "ZeroVector";
        case ErrorCode::QuadratureFailure: return "QuadratureFailure";
        case ErrorCode::DegenerateBasis: return "DegenerateBasis";
        case ErrorCode::NotOnSphere: return "NotOnSphere";
        case ErrorCode::NotOnHalfSphere: return "NotOnHalfSphere";
        case ErrorCode::NotDifferentiableAtB: return "NotDifferentiableAtB";
        case ErrorCode::CoincidentPoints: return "CoincidentPoints";
        case ErrorCode::NotACorner: return "NotACorner";
        case ErrorCode::SingularSystem: return "SingularSystem";
        case ErrorCode::BadChordAlignment: return "BadChordAlignment";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::OnPerpSet: return "OnPerpSet";
        case ErrorCode::DegenerateComponent: return "DegenerateComponent";
        case ErrorCode::SingularPair: return "SingularPair";
        case ErrorCode::NoBracket: return "NoBracket";
        case ErrorCode::NotIsometric: return "NotIsometric";
        case ErrorCode::WrongCornerCount: return "WrongCornerCount";
        case ErrorCode::HalfLengthMismatch: return "HalfLengthMismatch";
        case ErrorCode::JumpMismatch: return "JumpMismatch";
        case ErrorCode::VerificationFailure: return "VerificationFailure";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Error";
}

NormSpec NormSpec::pnorm(double p) {
    NormSpec s;
    s.kind = NormKind::PNorm;
    s.p = p;
    return s;
}

NormSpec NormSpec::polygon(std::vector<Vec2> vertices) {
    NormSpec s;
    s.kind = NormKind::Polygon;
    s.vertices = std::move(vertices);
    return s;
}

NormSpec NormSpec::lens(double beta) {
    NormSpec s;
    s.kind = NormKind::Lens;
    s.beta = beta;
    return s;
}

NormSpec NormSpec::double_lens() {
    NormSpec s;
    s.kind = NormKind::DoubleLens;
    return s;
}

NormSpec NormSpec::transform(NormSpec base, const Mat2& matrix) {
    NormSpec s;
    s.kind = NormKind::Transform;
    s.base = std::make_shared<const NormSpec>(std::move(base));
    s.matrix = matrix;
    return s;
}

std::string describe(const NormSpec& spec) {
    char buf[64];
    switch (spec.kind) {
        case NormKind::PNorm:
            std::snprintf(buf, sizeof(buf), "pnorm(%g)", spec.p);
            return buf;
        case NormKind::Polygon:
            std::snprintf(buf, sizeof(buf), "polygon[%zu]", spec.vertices.size());
            return buf;
        case NormKind::Lens:
            std::snprintf(buf, sizeof(buf), "lens(%g)", spec.beta);
            return buf;
        case NormKind::DoubleLens:
            return "double_lens";
        case NormKind::Transform:
            return "transform(" + describe(*spec.base) + ")";
    }
    return "norm";
}

double AxiomReport::worst() const {
    double w = 0.0;
    for (const auto& c : checks) w = std::max(w, c.max_violation);
    return w;
}

Norm2D Norm2D::build_from_spec(const NormSpec& spec) { return build(spec, true); }
Norm2D Norm2D::build_unchecked(const NormSpec& spec) { return build(spec, false); }

Norm2D Norm2D::build(const NormSpec& spec, bool validate) {
    Norm2D n;
    n.spec_ = spec;
    switch (spec.kind) {
        case NormKind::PNorm: {
            if (validate && !(spec.p >= 1.0 && std::isfinite(spec.p))) {
                throw Error(ErrorCode::InvalidSpec, "pnorm requires p >= 1");
            }
            n.strictly_convex_ = spec.p > 1.0;
            n.smooth_ = spec.p > 1.0;
            break;
        }
        case NormKind::Polygon: {
            const auto& vs = spec.vertices;
            if (validate) {
                if (vs.size() < 4 || vs.size() % 2 != 0) {
                    throw Error(ErrorCode::InvalidSpec,
                                "polygon needs an even vertex count >= 4");
                }
                const size_t m = vs.size();
                for (size_t i = 0; i < m; ++i) {
                    if (!vs[i].finite()) {
                        throw Error(ErrorCode::InvalidSpec, "polygon vertex not finite");
                    }
                    // Central symmetry: v_{i + m/2} == -v_i.
                    const Vec2 opp = vs[(i + m / 2) % m];
                    if (euclid_norm(opp + vs[i]) > 1e-12) {
                        throw Error(ErrorCode::InvalidSpec,
                                    "polygon vertex set is not centrally symmetric");
                    }
                    const Vec2 a = vs[(i + 1) % m] - vs[i];
                    const Vec2 b = vs[(i + 2) % m] - vs[(i + 1) % m];
                    if (cross(a, b) <= 0.0) {
                        throw Error(ErrorCode::InvalidSpec,
                                    "polygon is not convex and counterclockwise");
                    }
                }
            }
            n.edge_functionals_.reserve(vs.size());
            for (size_t i = 0; i < vs.size(); ++i) {
                const Vec2 a = vs[i];
                const Vec2 b = vs[(i + 1) % vs.size()];
                const Vec2 normal{(b - a).y, -(b - a).x};  // outward for CCW order
                const double h = dot(normal, a);
                if (validate && h <= 1e-12) {
                    throw Error(ErrorCode::InvalidSpec,
                                "polygon does not contain the origin in its interior");
                }
                n.edge_functionals_.push_back(normal / h);
            }
            n.strictly_convex_ = false;
            n.smooth_ = false;
            break;
        }
        case NormKind::Lens: {
            if (validate && !(std::abs(spec.beta) < 1.0 / 3.0)) {
                throw Error(ErrorCode::InvalidSpec, "lens requires |beta| < 1/3");
            }
            n.strictly_convex_ = true;
            n.smooth_ = false;
            break;
        }
        case NormKind::DoubleLens: {
            n.strictly_convex_ = true;
            n.smooth_ = false;
            break;
        }
        case NormKind::Transform: {
            if (!spec.base) {
                throw Error(ErrorCode::InvalidSpec, "transform without base spec");
            }
            if (std::abs(spec.matrix.det()) <= 1e-12) {
                throw Error(ErrorCode::SingularTransform,
                            "transform matrix has |det| <= 1e-12");
            }
            n.base_ = std::make_shared<const Norm2D>(build(*spec.base, validate));
            n.inv_matrix_ = spec.matrix.inverse();
            n.inv_transpose_ = n.inv_matrix_.transpose();
            n.strictly_convex_ = n.base_->strictly_convex();
            n.smooth_ = n.base_->smooth();
            break;
        }
    }
    return n;
}

bool Norm2D::contains(const Vec2& v) const {
    switch (spec_.kind) {
        case NormKind::PNorm: {
            if (spec_.p == 1.0) return std::abs(v.x) + std::abs(v.y) <= 1.0;
            if (spec_.p == 2.0) return v.x * v.x + v.y * v.y <= 1.0;
            if (spec_.p == 4.0) {
                const double x2 = v.x * v.x, y2 = v.y * v.y;
                return x2 * x2 + y2 * y2 <= 1.0;
            }
            return std::pow(std::abs(v.x), spec_.p) + std::pow(std::abs(v.y), spec_.p) <= 1.0;
        }
        case NormKind::Polygon: {
            for (const auto& phi : edge_functionals_) {
                if (dot(phi, v) > 1.0) return false;
            }
            return true;
        }
        case NormKind::Lens:
            return lens_contains(v, spec_.beta);
        case NormKind::DoubleLens:
            return lens_contains(v, 0.0) && lens_contains(rot90_inv(v), 0.0);
        case NormKind::Transform:
            return base_->contains(inv_matrix_ * v);
    }
    return false;
}

double Norm2D::gauge_bisect(const Vec2& v) const {
    const double l1 = std::abs(v.x) + std::abs(v.y);
    if (l1 == 0.0) return 0.0;
    double lo = 0.0;
    double hi = 2.0 * l1 / kLensInradius;
    // contains(v/hi) holds by the inradius bound; 80 iterations cap with a
    // relative width stop of gauge_tol.
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (contains(v / mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
        if (hi - lo <= gauge_tol_ * hi) break;
    }
    return 0.5 * (lo + hi);
}

double Norm2D::gauge(const Vec2& v) const {
    switch (spec_.kind) {
        case NormKind::PNorm: {
            const double ax = std::abs(v.x), ay = std::abs(v.y);
            if (spec_.p == 1.0) return ax + ay;
            if (spec_.p == 2.0) return std::hypot(v.x, v.y);
            const double m = std::max(ax, ay);
            if (m == 0.0) return 0.0;
            return m * std::pow(std::pow(ax / m, spec_.p) + std::pow(ay / m, spec_.p),
                                1.0 / spec_.p);
        }
        case NormKind::Polygon: {
            double g = 0.0;
            for (const auto& phi : edge_functionals_) g = std::max(g, dot(phi, v));
            return g;
        }
        case NormKind::Lens:
        case NormKind::DoubleLens:
            return gauge_bisect(v);
        case NormKind::Transform:
            return base_->gauge(inv_matrix_ * v);
    }
    return 0.0;
}

Membership Norm2D::membership(const Vec2& v) const {
    const double g = gauge(v);
    if (g < 1.0 - kBoundaryBand) return Membership::Interior;
    if (g > 1.0 + kBoundaryBand) return Membership::Exterior;
    return Membership::Boundary;
}

Vec2 Norm2D::scale_to_sphere(const Vec2& v) const {
    if (v.x == 0.0 && v.y == 0.0) {
        throw Error(ErrorCode::ZeroVector, "cannot scale the zero vector to the sphere");
    }
    return v / gauge(v);
}

SupportCone Norm2D::lens_cone(const Vec2& w) const {
    return lens_cone_at(w, spec_.kind == NormKind::Lens ? spec_.beta : 0.0);
}

SupportCone Norm2D::support_cone(const Vec2& w) const {
    switch (spec_.kind) {
        case NormKind::PNorm: {
            SupportCone cone;
            const double p = spec_.p;
            if (p == 1.0) {
                const double sx = w.x >= 0.0 ? 1.0 : -1.0;
                const double sy = w.y >= 0.0 ? 1.0 : -1.0;
                if (std::abs(w.x) < kCornerBand) {
                    cone.lo = {-1.0, sy};
                    cone.hi = {1.0, sy};
                    cone.corner = true;
                } else if (std::abs(w.y) < kCornerBand) {
                    cone.lo = {sx, -1.0};
                    cone.hi = {sx, 1.0};
                    cone.corner = true;
                } else {
                    cone.lo = cone.hi = {sx, sy};
                }
                return cone;
            }
            const auto comp = [p](double t) {
                return t == 0.0 ? 0.0
                                : (t > 0.0 ? std::pow(t, p - 1.0) : -std::pow(-t, p - 1.0));
            };
            const double g = gauge(w);
            const double scale = std::pow(g, p - 1.0);
            cone.lo = cone.hi = Vec2{comp(w.x), comp(w.y)} / scale;
            return cone;
        }
        case NormKind::Polygon: {
            double best = -1.0;
            for (const auto& phi : edge_functionals_) best = std::max(best, dot(phi, w));
            std::vector<Vec2> active;
            for (const auto& phi : edge_functionals_) {
                if (dot(phi, w) >= best - kCornerBand) active.push_back(phi);
            }
            SupportCone cone;
            const Vec2 q = perp(w);
            cone.lo = cone.hi = active.front();
            for (const auto& phi : active) {
                if (dot(phi, q) < dot(cone.lo, q)) cone.lo = phi;
                if (dot(phi, q) > dot(cone.hi, q)) cone.hi = phi;
            }
            cone.corner = active.size() > 1;
            return cone;
        }
        case NormKind::Lens:
            return lens_cone(w);
        case NormKind::DoubleLens: {
            const Vec2 u = rot90_inv(w);
            const double gap1 = lens_boundary_gap(w, 0.0);
            const double gap2 = lens_boundary_gap(u, 0.0);
            bool on1 = gap1 < 1e-8;
            bool on2 = gap2 < 1e-8;
            if (!on1 && !on2) {
                // Drift off both boundary bands: take the closer body.
                (gap1 <= gap2 ? on1 : on2) = true;
            }
            Vec2 candidates[4];
            int count = 0;
            if (on1) {
                const SupportCone c = lens_cone_at(w, 0.0);
                candidates[count++] = c.lo;
                candidates[count++] = c.hi;
            }
            if (on2) {
                const SupportCone c = lens_cone_at(u, 0.0);
                candidates[count++] = rot90(c.lo);
                candidates[count++] = rot90(c.hi);
            }
            SupportCone cone;
            const Vec2 q = perp(w);
            cone.lo = cone.hi = candidates[0];
            for (int i = 1; i < count; ++i) {
                if (dot(candidates[i], q) < dot(cone.lo, q)) cone.lo = candidates[i];
                if (dot(candidates[i], q) > dot(cone.hi, q)) cone.hi = candidates[i];
            }
            cone.corner = euclid_norm(cone.hi - cone.lo) > 1e-9;
            return cone;
        }
        case NormKind::Transform: {
            const SupportCone base = base_->support_cone(inv_matrix_ * w);
            SupportCone cone;
            const Vec2 a = inv_transpose_ * base.lo;
            const Vec2 b = inv_transpose_ * base.hi;
            const Vec2 q = perp(w);
            if (dot(a, q) <= dot(b, q)) {
                cone.lo = a;
                cone.hi = b;
            } else {
                cone.lo = b;
                cone.hi = a;
            }
            cone.corner = base.corner;
            return cone;
        }
    }
    return {};
}

TangentPair Norm2D::one_sided_tangents(const Vec2& w) const {
    const SupportCone cone = support_cone(w);
    // The functional active just after the point (counterclockwise) is the
    // cone endpoint maximal along perp(w); its kernel direction, turned
    // counterclockwise, is the departing tangent.
    const Vec2 tp = perp(cone.hi);
    const Vec2 tm = perp(cone.lo);
    return {tm / gauge(tm), tp / gauge(tp)};
}

std::vector<Vec2> Norm2D::corner_points() const {
    std::vector<Vec2> pts;
    switch (spec_.kind) {
        case NormKind::PNorm:
            if (spec_.p == 1.0) {
                pts = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
            }
            break;
        case NormKind::Polygon:
            pts = spec_.vertices;
            break;
        case NormKind::Lens:
            pts = {{1, 0}, {-1, 0}};
            break;
        case NormKind::DoubleLens: {
            const double r = std::sqrt(2.0) - 1.0;
            pts = {{r, r}, {-r, r}, {-r, -r}, {r, -r}};
            break;
        }
        case NormKind::Transform:
            for (const auto& c : base_->corner_points()) pts.push_back(spec_.matrix * c);
            break;
    }
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
        return std::atan2(a.y, a.x) < std::atan2(b.y, b.x);
    });
    return pts;
}

AxiomReport Norm2D::validate_axioms(int grid_size) const {
    AxiomReport report;
    const int n = std::max(grid_size, 8);
    std::vector<Vec2> dirs(n);
    std::vector<double> g(n);
    for (int k = 0; k < n; ++k) {
        const double t = 2.0 * M_PI * k / n;
        dirs[k] = {std::cos(t), std::sin(t)};
        g[k] = gauge(dirs[k]);
    }

    double homo = 0.0;
    for (int k = 0; k < n; ++k) {
        for (double lambda : {-2.0, -0.5, 3.0}) {
            const double lhs = gauge(lambda * dirs[k]);
            const double rhs = std::abs(lambda) * g[k];
            homo = std::max(homo, std::abs(lhs - rhs) / std::max(1.0, rhs));
        }
    }
    report.checks.push_back({"homogeneity", homo});

    double sym = 0.0;
    for (int k = 0; k < n; ++k) sym = std::max(sym, std::abs(gauge(-dirs[k]) - g[k]));
    report.checks.push_back({"symmetry", sym});

    double tri = 0.0;
    for (int k = 0; k < n; ++k) {
        const Vec2 u = dirs[k];
        const Vec2 v = dirs[(k + n / 3 + 1) % n];
        tri = std::max(tri, gauge(u + v) - gauge(u) - gauge(v));
    }
    report.checks.push_back({"triangle", std::max(0.0, tri)});

    double conv = 0.0;
    Vec2 prev = dirs[0] / g[0];
    for (int k = 1; k <= n; ++k) {
        const Vec2 cur = dirs[k % n] / g[k % n];
        conv = std::max(conv, gauge(0.5 * (prev + cur)) - 1.0);
        prev = cur;
    }
    report.checks.push_back({"convexity", std::max(0.0, conv)});
    return report;
}

}  // namespace mink
