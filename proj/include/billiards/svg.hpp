#pragma once

#include <iosfwd>

#include "billiards/billiard_map.hpp"
#include "billiards/geometry.hpp"

namespace billiards {

/// Static SVG of the boundary with the orbit's chords drawn inside
/// (tangency envelopes show up as caustic gaps).
void write_orbit_svg(std::ostream& os, const ConvexDomain& dom, const Orbit& orbit);

}  // namespace billiards
