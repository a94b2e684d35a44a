#pragma once

#include <memory>
#include <random>
#include <vector>

#include "minksphere/norm.hpp"
#include "minksphere/parameterization.hpp"

namespace fixtures {

using mink::BasedSpace;
using mink::Mat2;
using mink::NaturalCurve;
using mink::Norm2D;
using mink::NormSpec;
using mink::Vec2;

inline std::shared_ptr<const Norm2D> euclid() {
    return std::make_shared<const Norm2D>(Norm2D::build_from_spec(NormSpec::pnorm(2.0)));
}

inline std::shared_ptr<const Norm2D> pnorm(double p) {
    return std::make_shared<const Norm2D>(Norm2D::build_from_spec(NormSpec::pnorm(p)));
}

inline std::shared_ptr<const Norm2D> square_l1() {
    return std::make_shared<const Norm2D>(Norm2D::build_from_spec(
        NormSpec::polygon({{1, 0}, {0, 1}, {-1, 0}, {0, -1}})));
}

inline std::shared_ptr<const Norm2D> hexagon() {
    return std::make_shared<const Norm2D>(Norm2D::build_from_spec(NormSpec::polygon(
        {{1, 0}, {0.5, 1}, {-0.5, 1}, {-1, 0}, {-0.5, -1}, {0.5, -1}})));
}

inline std::shared_ptr<const Norm2D> lens(double beta) {
    return std::make_shared<const Norm2D>(Norm2D::build_from_spec(NormSpec::lens(beta)));
}

inline std::shared_ptr<const Norm2D> double_lens() {
    return std::make_shared<const Norm2D>(Norm2D::build_from_spec(NormSpec::double_lens()));
}

inline std::shared_ptr<const Norm2D> transformed(std::shared_ptr<const Norm2D> base,
                                                 const Mat2& a) {
    return std::make_shared<const Norm2D>(
        Norm2D::build_from_spec(NormSpec::transform(base->spec(), a)));
}

inline NaturalCurve curve_of(std::shared_ptr<const Norm2D> norm) {
    return NaturalCurve(BasedSpace::canonical(std::move(norm)));
}

/// The standard zoo the property suites loop over.
inline std::vector<std::shared_ptr<const Norm2D>> zoo() {
    return {euclid(),   pnorm(4.0),  square_l1(),  lens(0.0),
            lens(0.2), lens(-0.2), double_lens()};
}

inline std::vector<std::shared_ptr<const Norm2D>> strictly_convex_zoo() {
    return {euclid(), pnorm(4.0), lens(0.0), lens(0.2), lens(-0.2), double_lens()};
}

/// Well-conditioned random generator matrices: rotation * diag * rotation,
/// condition number <= 10, deterministic for a fixed seed.
inline Mat2 random_well_conditioned(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> logscale(-0.8, 0.8);  // cond <= e^1.6 ~ 5
    std::uniform_int_distribution<int> flip(0, 1);
    const Mat2 r1 = Mat2::rotation(angle(rng));
    const Mat2 r2 = Mat2::rotation(angle(rng));
    const double s1 = std::exp(logscale(rng));
    const double s2 = std::exp(logscale(rng)) * (flip(rng) ? 1.0 : -1.0);
    return r1 * Mat2{s1, 0, 0, s2} * r2;
}

}  // namespace fixtures
