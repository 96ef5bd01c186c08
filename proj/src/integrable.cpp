#include "billiards/integrable.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "billiards/csv.hpp"
#include "billiards/errors.hpp"
#include "billiards/spectrum.hpp"

namespace billiards {

namespace {

struct EllipseFrame {
    double a, b;
    double cosh2_mu0;  // a^2 / (a^2 - b^2)
    double sinh2_mu0;  // b^2 / (a^2 - b^2)
};

EllipseFrame ellipse_frame(const ConvexDomain& dom) {
    if (dom.kind() != DomainKind::ellipse)
        throw DomainError("elliptic first integral requires an ellipse domain");
    const double a = dom.spec().semi_major * dom.spec().scale;
    const double b = dom.spec().semi_minor * dom.spec().scale;
    const double h2 = a * a - b * b;
    if (!(h2 > 0.0))
        throw DomainError(
            "degenerate elliptic parametrization: a == b (use the rotation number of the circle instead)");
    return {a, b, a * a / h2, b * b / h2};
}

double integral_at(const EllipseFrame& f, double theta, double phi) {
    const double cp = std::cos(phi), ct = std::cos(theta), sp = std::sin(phi);
    return f.cosh2_mu0 * cp * cp + ct * ct * sp * sp;
}

}  // namespace

double elliptic_first_integral(const ConvexDomain& dom, double theta, double phi) {
    return integral_at(ellipse_frame(dom), theta, phi);
}

double conservation_defect(const ConvexDomain& dom, const PhasePoint& p0, std::size_t n) {
    const EllipseFrame f = ellipse_frame(dom);
    const Orbit orbit = iterate(dom, p0, n);
    if (!orbit.complete) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "conservation_defect: iteration failed at step %zu: %s",
                      orbit.failed_index, orbit.failure.c_str());
        throw NumericalError(buf);
    }
    const double I0 = integral_at(f, dom.param_of_arclength(orbit.points.front().s),
                                  orbit.points.front().phi);
    double defect = 0.0;
    for (const PhasePoint& p : orbit.points) {
        const double I = integral_at(f, dom.param_of_arclength(p.s), p.phi);
        defect = std::max(defect, std::abs(I - I0));
    }
    return defect;
}

double separatrix_level(const ConvexDomain& dom) {
    // the major-axis orbit from theta = 0 passes through both foci
    return elliptic_first_integral(dom, 0.0, 0.5 * std::numbers::pi);
}

CausticInfo classify_caustic(const ConvexDomain& dom, double I, const CausticClassifyOptions& opts) {
    const EllipseFrame f = ellipse_frame(dom);
    const double I_sep = separatrix_level(dom);
    const double I_max = f.cosh2_mu0;  // boundary level (phi = 0)
    if (I < -opts.separatrix_tol || I > I_max + opts.separatrix_tol) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "first-integral level %.12g outside attainable range [0, %.12g]",
                      I, I_max);
        throw RangeError(buf);
    }
    CausticInfo info;
    info.integral_value = I;
    if (std::abs(I - I_sep) <= opts.separatrix_tol) {
        info.cls = CausticClass::separatrix;
        return info;
    }
    if (I < I_sep) {
        info.cls = CausticClass::confocal_hyperbola;
        return info;
    }
    info.cls = CausticClass::confocal_ellipse;
    // launch on the level set from theta = 0: cos^2(phi) = (I - 1) / sinh^2(mu0)
    const double c2 = std::min(1.0, (I - 1.0) / f.sinh2_mu0);
    const double phi = std::acos(std::sqrt(std::max(0.0, c2)));
    const RotationEstimate est = rotation_number(dom, {0.0, phi}, opts.rotation_steps);
    info.rotation_number = est.value;
    info.rotation_error = est.error_estimate;
    return info;
}

void write_caustic_scan_csv(std::ostream& os, const ConvexDomain& dom,
                            const std::vector<double>& levels, const std::string& header_comment,
                            const CausticClassifyOptions& opts) {
    if (!header_comment.empty()) os << "# " << header_comment << "\n";
    os << "I,class,rotation_number,rotation_error\n";
    for (double I : levels) {
        const CausticInfo info = classify_caustic(dom, I, opts);
        const char* name = info.cls == CausticClass::confocal_ellipse     ? "confocal_ellipse"
                           : info.cls == CausticClass::confocal_hyperbola ? "confocal_hyperbola"
                                                                          : "separatrix";
        os << csv::g17(info.integral_value) << ',' << name << ',';
        if (info.rotation_number)
            os << csv::g17(*info.rotation_number) << ',' << csv::g17(info.rotation_error) << "\n";
        else
            os << "nan,nan\n";
    }
}

}  // namespace billiards
