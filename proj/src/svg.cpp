#include "billiards/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <vector>

namespace billiards {

namespace {

void put(std::ostream& os, const char* fmt, double a, double b) {
    char buf[96];
    std::snprintf(buf, sizeof buf, fmt, a, b);
    os << buf;
}

}  // namespace

void write_orbit_svg(std::ostream& os, const ConvexDomain& dom, const Orbit& orbit) {
    const int boundary_samples = 512;
    const double L = dom.perimeter();

    double minx = 1e300, maxx = -1e300, miny = 1e300, maxy = -1e300;
    std::vector<Vec2> boundary(boundary_samples + 1);
    for (int i = 0; i <= boundary_samples; ++i) {
        boundary[i] = dom.position(L * i / boundary_samples);
        minx = std::min(minx, boundary[i].x);
        maxx = std::max(maxx, boundary[i].x);
        miny = std::min(miny, boundary[i].y);
        maxy = std::max(maxy, boundary[i].y);
    }
    const double pad = 0.04 * std::max(maxx - minx, maxy - miny);
    minx -= pad;
    miny -= pad;
    maxx += pad;
    maxy += pad;
    const double w = maxx - minx, h = maxy - miny;
    const double stroke = 0.0020 * std::max(w, h);

    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"720\" viewBox=\"";
    put(os, "%.6f %.6f ", minx, -maxy);
    put(os, "%.6f %.6f", w, h);
    os << "\">\n";

    // y axis flipped so the picture is in the usual orientation
    os << "  <g stroke-linecap=\"round\" fill=\"none\">\n";
    char sbuf[64];
    std::snprintf(sbuf, sizeof sbuf, "%.6g", stroke);
    os << "    <path stroke=\"#1a1a1a\" stroke-width=\"" << sbuf << "\" d=\"";
    for (int i = 0; i <= boundary_samples; ++i) {
        os << (i == 0 ? "M" : "L");
        put(os, "%.6f %.6f", boundary[i].x, -boundary[i].y);
    }
    os << "Z\"/>\n";

    if (orbit.points.size() > 1) {
        os << "    <path stroke=\"#2266cc\" stroke-width=\"" << sbuf << "\" stroke-opacity=\"0.55\" d=\"";
        for (std::size_t k = 0; k < orbit.points.size(); ++k) {
            const Vec2 p = dom.position(orbit.points[k].s);
            os << (k == 0 ? "M" : "L");
            put(os, "%.6f %.6f", p.x, -p.y);
        }
        os << "\"/>\n";
    }
    os << "  </g>\n</svg>\n";
}

}  // namespace billiards
