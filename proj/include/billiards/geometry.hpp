#pragma once

#include <memory>
#include <vector>

#include "billiards/vec2.hpp"

namespace billiards {

/// Truncated trigonometric support function
///   h(theta) = c0 + sum_k (cos_coeffs[k-1] cos(k theta) + sin_coeffs[k-1] sin(k theta)).
/// The boundary point with outward normal angle theta is h*n + h'*t; the
/// radius of curvature is h + h'', which must stay positive.
struct SupportCoeffs {
    double c0 = 1.0;
    std::vector<double> cos_coeffs;  // a_k, k = 1, 2, ...
    std::vector<double> sin_coeffs;  // b_k

    double h(double theta) const;
    double h1(double theta) const;  // dh/dtheta
    double h2(double theta) const;
    double h3(double theta) const;
};

enum class DomainKind { circle, ellipse, support };

/// Constructible description of a domain; `rotate` is a rigid rotation of
/// the embedding (the arc-length origin stays on the same material point),
/// `scale` a homothety applied to the shape parameters.
struct DomainSpec {
    DomainKind kind = DomainKind::circle;
    double radius = 1.0;      // circle
    double semi_major = 1.0;  // ellipse a (>= b)
    double semi_minor = 1.0;  // ellipse b
    SupportCoeffs support;
    double rotate = 0.0;
    double scale = 1.0;
};

/// Immutable strictly convex planar domain with arc-length evaluators.
///
/// All boundaries are parametrized by an internal angle theta in [0, 2pi):
/// the polar angle for circles, the elliptic angle for ellipses, the
/// outward-normal angle for support-function domains. Cumulative tables for
/// arc length s(theta) and the Lazutkin abscissa are built at construction
/// (monotone-cubic inverse seed + Newton polish per query, table doubling
/// until 1e-10 round-trip consistency). Evaluators are pure and safe for
/// concurrent callers.
class ConvexDomain {
public:
    double perimeter() const;
    /// Integral of curvature^(2/3) over the boundary (arc length).
    double lazutkin_perimeter() const;
    double min_curvature() const;
    const DomainSpec& spec() const;
    DomainKind kind() const { return spec().kind; }

    Vec2 position(double s) const;
    Vec2 tangent(double s) const;
    double curvature(double s) const;
    double curvature_deriv(double s) const;

    /// s reduced mod perimeter into [0, perimeter).
    double wrap(double s) const;

    // parameter chart <-> arc length
    double param_of_arclength(double s) const;    // theta(s), in [0, 2pi)
    double arclength_of_param(double theta) const;  // lifted: s(theta + 2pi) = s(theta) + perimeter
    Vec2 position_at_param(double theta) const;
    Vec2 tangent_at_param(double theta) const;
    double curvature_at_param(double theta) const;
    double speed_at_param(double theta) const;  // ds/dtheta

    // normalized Lazutkin abscissa x(s) = C^{-1} * integral_0^s curvature^(2/3)
    double lazutkin_abscissa(double s) const;       // in [0, 1)
    double arclength_of_abscissa(double x) const;   // inverse, x taken mod 1

    struct Impl;

private:
    explicit ConvexDomain(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;

    friend ConvexDomain build_domain(const DomainSpec&);
};

ConvexDomain build_circle(double r);
ConvexDomain build_ellipse(double a, double b);
ConvexDomain build_from_support(const SupportCoeffs& coeffs);
ConvexDomain build_domain(const DomainSpec& spec);

/// Same shape scaled by `factor` (composes with any scale already present).
ConvexDomain rescaled(const ConvexDomain& dom, double factor);

}  // namespace billiards
