#include "billiards/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "billiards/errors.hpp"
#include "billiards/numerics.hpp"

namespace billiards {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kDefaultTableSize = 4096;
constexpr int kMaxTableSize = 65536;
constexpr int kValidationGrid = 8192;
constexpr int kMaxSupportIndex = 64;
constexpr double kRoundTripTol = 1e-10;

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

/// theta-parametrized boundary model, scale already applied, rotation not.
struct Model {
    virtual ~Model() = default;
    virtual Vec2 point(double th) const = 0;
    virtual Vec2 unit_tangent(double th) const = 0;
    virtual double speed(double th) const = 0;  // ds/dtheta > 0
    virtual double curvature(double th) const = 0;
    virtual double curvature_dtheta(double th) const = 0;
};

struct CircleModel final : Model {
    double r;
    explicit CircleModel(double r_) : r(r_) {}
    Vec2 point(double th) const override { return {r * std::cos(th), r * std::sin(th)}; }
    Vec2 unit_tangent(double th) const override { return {-std::sin(th), std::cos(th)}; }
    double speed(double) const override { return r; }
    double curvature(double) const override { return 1.0 / r; }
    double curvature_dtheta(double) const override { return 0.0; }
};

struct EllipseModel final : Model {
    double a, b;
    EllipseModel(double a_, double b_) : a(a_), b(b_) {}
    double w(double th) const {
        const double s = std::sin(th), c = std::cos(th);
        return a * a * s * s + b * b * c * c;
    }
    Vec2 point(double th) const override { return {a * std::cos(th), b * std::sin(th)}; }
    Vec2 unit_tangent(double th) const override {
        const double sp = speed(th);
        return {-a * std::sin(th) / sp, b * std::cos(th) / sp};
    }
    double speed(double th) const override { return std::sqrt(w(th)); }
    double curvature(double th) const override { return a * b * std::pow(w(th), -1.5); }
    double curvature_dtheta(double th) const override {
        const double dw = (a * a - b * b) * std::sin(2.0 * th);
        return -1.5 * a * b * std::pow(w(th), -2.5) * dw;
    }
};

struct SupportModel final : Model {
    SupportCoeffs cf;
    explicit SupportModel(SupportCoeffs c) : cf(std::move(c)) {}
    double rc(double th) const { return cf.h(th) + cf.h2(th); }  // radius of curvature
    Vec2 point(double th) const override {
        const double h = cf.h(th), h1 = cf.h1(th);
        const double c = std::cos(th), s = std::sin(th);
        return {h * c - h1 * s, h * s + h1 * c};
    }
    Vec2 unit_tangent(double th) const override { return {-std::sin(th), std::cos(th)}; }
    double speed(double th) const override { return rc(th); }
    double curvature(double th) const override { return 1.0 / rc(th); }
    double curvature_dtheta(double th) const override {
        const double d = rc(th);
        return -(cf.h1(th) + cf.h3(th)) / (d * d);
    }
};

}  // namespace

double SupportCoeffs::h(double theta) const {
    double v = c0;
    for (std::size_t k = 0; k < cos_coeffs.size(); ++k) v += cos_coeffs[k] * std::cos((k + 1) * theta);
    for (std::size_t k = 0; k < sin_coeffs.size(); ++k) v += sin_coeffs[k] * std::sin((k + 1) * theta);
    return v;
}

double SupportCoeffs::h1(double theta) const {
    double v = 0.0;
    for (std::size_t k = 0; k < cos_coeffs.size(); ++k) {
        const double kk = double(k + 1);
        v -= cos_coeffs[k] * kk * std::sin(kk * theta);
    }
    for (std::size_t k = 0; k < sin_coeffs.size(); ++k) {
        const double kk = double(k + 1);
        v += sin_coeffs[k] * kk * std::cos(kk * theta);
    }
    return v;
}

double SupportCoeffs::h2(double theta) const {
    double v = 0.0;
    for (std::size_t k = 0; k < cos_coeffs.size(); ++k) {
        const double kk = double(k + 1);
        v -= cos_coeffs[k] * kk * kk * std::cos(kk * theta);
    }
    for (std::size_t k = 0; k < sin_coeffs.size(); ++k) {
        const double kk = double(k + 1);
        v -= sin_coeffs[k] * kk * kk * std::sin(kk * theta);
    }
    return v;
}

double SupportCoeffs::h3(double theta) const {
    double v = 0.0;
    for (std::size_t k = 0; k < cos_coeffs.size(); ++k) {
        const double kk = double(k + 1);
        v += cos_coeffs[k] * kk * kk * kk * std::sin(kk * theta);
    }
    for (std::size_t k = 0; k < sin_coeffs.size(); ++k) {
        const double kk = double(k + 1);
        v -= sin_coeffs[k] * kk * kk * kk * std::cos(kk * theta);
    }
    return v;
}

struct ConvexDomain::Impl {
    DomainSpec spec;
    std::unique_ptr<const Model> model;
    double rot_cos = 1.0, rot_sin = 0.0;

    int table_size = kDefaultTableSize;
    std::vector<double> theta_nodes;  // uniform, size n+1
    std::vector<double> s_nodes;      // cumulative arc length
    std::vector<double> u_nodes;      // cumulative integral of curvature^(2/3) ds
    num::MonotoneCubic theta_of_s;
    num::MonotoneCubic theta_of_u;

    double perimeter = 0.0;
    double lazutkin_c = 0.0;
    double kappa_min = 0.0;

    Vec2 rot(const Vec2& v) const { return {rot_cos * v.x - rot_sin * v.y, rot_sin * v.x + rot_cos * v.y}; }

    double lazutkin_weight(double th) const {
        return std::pow(model->curvature(th), 2.0 / 3.0) * model->speed(th);
    }

    // machine-accurate s(theta) and u(theta) on [0, 2pi]: nearest table node
    // below plus one Gauss panel for the remainder
    double s_exact(double th) const {
        const double h = kTwoPi / table_size;
        int i = std::clamp(int(th / h), 0, table_size - 1);
        return s_nodes[i] + num::gauss7_fn([this](double t) { return model->speed(t); },
                                           theta_nodes[i], th);
    }
    double u_exact(double th) const {
        const double h = kTwoPi / table_size;
        int i = std::clamp(int(th / h), 0, table_size - 1);
        return u_nodes[i] + num::gauss7_fn([this](double t) { return lazutkin_weight(t); },
                                           theta_nodes[i], th);
    }

    void build_tables(int n) {
        table_size = n;
        const double h = kTwoPi / n;
        theta_nodes.resize(n + 1);
        s_nodes.resize(n + 1);
        u_nodes.resize(n + 1);
        double s_acc = 0.0, s_comp = 0.0, u_acc = 0.0, u_comp = 0.0;
        theta_nodes[0] = 0.0;
        s_nodes[0] = 0.0;
        u_nodes[0] = 0.0;
        for (int i = 0; i < n; ++i) {
            const double t0 = i * h, t1 = (i + 1) * h;
            theta_nodes[i + 1] = t1;
            // Kahan-compensated accumulation keeps the tables to ~1 ulp
            double ds = num::gauss15_fn([this](double t) { return model->speed(t); }, t0, t1);
            double y = ds - s_comp, t = s_acc + y;
            s_comp = (t - s_acc) - y;
            s_acc = t;
            s_nodes[i + 1] = s_acc;
            double du = num::gauss15_fn([this](double t) { return lazutkin_weight(t); }, t0, t1);
            y = du - u_comp;
            t = u_acc + y;
            u_comp = (t - u_acc) - y;
            u_acc = t;
            u_nodes[i + 1] = u_acc;
        }
        theta_nodes[n] = kTwoPi;
        perimeter = s_nodes[n];
        lazutkin_c = u_nodes[n];
        theta_of_s = num::MonotoneCubic(s_nodes, theta_nodes);
        theta_of_u = num::MonotoneCubic(u_nodes, theta_nodes);
    }

    double invert_s(double s) const {  // s in [0, perimeter] -> theta
        double th = std::clamp(theta_of_s(s), 0.0, kTwoPi);
        for (int it = 0; it < 4; ++it) {
            const double dt = (s_exact(th) - s) / model->speed(th);
            th = std::clamp(th - dt, 0.0, kTwoPi);
            if (std::abs(dt) < 1e-14 * kTwoPi) break;
        }
        return th;
    }
    double invert_u(double u) const {
        double th = std::clamp(theta_of_u(u), 0.0, kTwoPi);
        for (int it = 0; it < 4; ++it) {
            const double dt = (u_exact(th) - u) / lazutkin_weight(th);
            th = std::clamp(th - dt, 0.0, kTwoPi);
            if (std::abs(dt) < 1e-14 * kTwoPi) break;
        }
        return th;
    }

    bool round_trip_ok() const {
        for (int i = 0; i < 97; ++i) {
            const double s = perimeter * (i + 0.31) / 97.0;
            const double th = invert_s(s);
            if (std::abs(s_exact(th) - s) > kRoundTripTol * perimeter) return false;
            const double u = lazutkin_c * (i + 0.57) / 97.0;
            const double tu = invert_u(u);
            if (std::abs(u_exact(tu) - u) > kRoundTripTol * lazutkin_c) return false;
        }
        return true;
    }

    void validate_and_finish() {
        // strict convexity on the validation grid
        kappa_min = std::numeric_limits<double>::infinity();
        for (int i = 0; i < kValidationGrid; ++i) {
            const double th = kTwoPi * i / kValidationGrid;
            const double k = model->curvature(th);
            if (!std::isfinite(k) || k <= 0.0)
                throw DomainError(fmt("domain is not strictly convex: curvature %.3e at theta=%.6f", k, th));
            kappa_min = std::min(kappa_min, k);
        }

        int n = kDefaultTableSize;
        build_tables(n);
        while (!round_trip_ok() && n < kMaxTableSize) {
            n *= 2;
            build_tables(n);
        }
        if (!round_trip_ok())
            throw NumericalError("arc-length table failed 1e-10 self-consistency at maximum resolution");

        if (kappa_min < 1e-6 / perimeter)
            throw DomainError(fmt("curvature minimum %.3e below threshold %.3e", kappa_min, 1e-6 / perimeter));

        // cross-check the table sums against adaptive quadrature and the
        // total-curvature identity (integral of curvature ds == 2pi)
        const double c_adaptive = num::adaptive_integral(
            [this](double t) { return lazutkin_weight(t); }, 0.0, kTwoPi, 1e-10, "lazutkin perimeter");
        if (std::abs(c_adaptive - lazutkin_c) > 1e-8 * lazutkin_c)
            throw NumericalError(fmt("lazutkin perimeter mismatch: table %.12e vs adaptive %.12e",
                                     lazutkin_c, c_adaptive));
        const double total_curv = num::adaptive_integral(
            [this](double t) { return model->curvature(t) * model->speed(t); }, 0.0, kTwoPi, 1e-10,
            "total curvature");
        if (std::abs(total_curv - kTwoPi) > 1e-8)
            throw DomainError(fmt("total curvature %.12f differs from 2pi", total_curv));
    }
};

double ConvexDomain::perimeter() const { return impl_->perimeter; }
double ConvexDomain::lazutkin_perimeter() const { return impl_->lazutkin_c; }
double ConvexDomain::min_curvature() const { return impl_->kappa_min; }
const DomainSpec& ConvexDomain::spec() const { return impl_->spec; }

double ConvexDomain::wrap(double s) const {
    const double L = impl_->perimeter;
    double r = s - L * std::floor(s / L);
    if (r >= L) r -= L;
    return r;
}

double ConvexDomain::param_of_arclength(double s) const {
    double th = impl_->invert_s(wrap(s));
    if (th >= kTwoPi) th -= kTwoPi;
    return th;
}

double ConvexDomain::arclength_of_param(double theta) const {
    const double k = std::floor(theta / kTwoPi);
    const double tr = theta - k * kTwoPi;
    return impl_->s_exact(std::clamp(tr, 0.0, kTwoPi)) + k * impl_->perimeter;
}

Vec2 ConvexDomain::position(double s) const { return position_at_param(param_of_arclength(s)); }
Vec2 ConvexDomain::tangent(double s) const { return tangent_at_param(param_of_arclength(s)); }
double ConvexDomain::curvature(double s) const { return impl_->model->curvature(param_of_arclength(s)); }

double ConvexDomain::curvature_deriv(double s) const {
    const double th = param_of_arclength(s);
    return impl_->model->curvature_dtheta(th) / impl_->model->speed(th);
}

Vec2 ConvexDomain::position_at_param(double theta) const {
    const double k = std::floor(theta / kTwoPi);
    return impl_->rot(impl_->model->point(theta - k * kTwoPi));
}

Vec2 ConvexDomain::tangent_at_param(double theta) const {
    const double k = std::floor(theta / kTwoPi);
    return impl_->rot(impl_->model->unit_tangent(theta - k * kTwoPi));
}

double ConvexDomain::curvature_at_param(double theta) const {
    const double k = std::floor(theta / kTwoPi);
    return impl_->model->curvature(theta - k * kTwoPi);
}

double ConvexDomain::speed_at_param(double theta) const {
    const double k = std::floor(theta / kTwoPi);
    return impl_->model->speed(theta - k * kTwoPi);
}

double ConvexDomain::lazutkin_abscissa(double s) const {
    const double th = param_of_arclength(s);
    double x = impl_->u_exact(th) / impl_->lazutkin_c;
    x -= std::floor(x);
    return x;
}

double ConvexDomain::arclength_of_abscissa(double x) const {
    x -= std::floor(x);
    const double th = impl_->invert_u(x * impl_->lazutkin_c);
    return wrap(impl_->s_exact(th));
}

ConvexDomain build_domain(const DomainSpec& spec) {
    if (!(spec.scale > 0.0)) throw DomainError("scale must be positive");
    auto impl = std::make_shared<ConvexDomain::Impl>();
    impl->spec = spec;
    impl->rot_cos = std::cos(spec.rotate);
    impl->rot_sin = std::sin(spec.rotate);
    switch (spec.kind) {
        case DomainKind::circle: {
            if (!(spec.radius > 0.0)) throw DomainError("circle radius must be positive");
            impl->model = std::make_unique<CircleModel>(spec.radius * spec.scale);
            break;
        }
        case DomainKind::ellipse: {
            if (!(spec.semi_minor > 0.0))
                throw DomainError("ellipse semi-minor axis must be positive");
            if (spec.semi_major < spec.semi_minor)
                throw DomainError("ellipse requires a >= b (axes are not swapped implicitly)");
            impl->model = std::make_unique<EllipseModel>(spec.semi_major * spec.scale,
                                                         spec.semi_minor * spec.scale);
            break;
        }
        case DomainKind::support: {
            const std::size_t kmax =
                std::max(spec.support.cos_coeffs.size(), spec.support.sin_coeffs.size());
            if (kmax > kMaxSupportIndex)
                throw DomainError("support-function harmonics above index 64 are rejected");
            SupportCoeffs scaled = spec.support;
            scaled.c0 *= spec.scale;
            for (auto& v : scaled.cos_coeffs) v *= spec.scale;
            for (auto& v : scaled.sin_coeffs) v *= spec.scale;
            // reject with the offending angle before the generic grid check
            for (int i = 0; i < kValidationGrid; ++i) {
                const double th = kTwoPi * i / kValidationGrid;
                const double rc = scaled.h(th) + scaled.h2(th);
                if (!(rc > 0.0))
                    throw DomainError(
                        fmt("support function not strictly convex: h + h'' = %.6e at theta = %.6f", rc, th));
            }
            impl->model = std::make_unique<SupportModel>(std::move(scaled));
            break;
        }
    }
    impl->validate_and_finish();
    return ConvexDomain(std::move(impl));
}

ConvexDomain build_circle(double r) {
    DomainSpec spec;
    spec.kind = DomainKind::circle;
    spec.radius = r;
    return build_domain(spec);
}

ConvexDomain build_ellipse(double a, double b) {
    DomainSpec spec;
    spec.kind = DomainKind::ellipse;
    spec.semi_major = a;
    spec.semi_minor = b;
    return build_domain(spec);
}

ConvexDomain build_from_support(const SupportCoeffs& coeffs) {
    DomainSpec spec;
    spec.kind = DomainKind::support;
    spec.support = coeffs;
    return build_domain(spec);
}

ConvexDomain rescaled(const ConvexDomain& dom, double factor) {
    if (!(factor > 0.0)) throw DomainError("rescale factor must be positive");
    DomainSpec spec = dom.spec();
    spec.scale *= factor;
    return build_domain(spec);
}

}  // namespace billiards
