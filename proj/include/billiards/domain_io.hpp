#pragma once

#include <iosfwd>
#include <string>

#include "billiards/geometry.hpp"

namespace billiards {

/// Domain description files hold one domain each as JSON:
///   {"kind": "circle",  "r": 1.0}
///   {"kind": "ellipse", "a": 2.0, "b": 1.0, "rotate": 0.5, "scale": 1.7}
///   {"kind": "support", "c0": 1.0, "cos": [0, 0, 0.05], "sin": []}
/// cos/sin arrays are 1-based harmonics (index k-1 holds the k-th
/// coefficient). Doubles are emitted with shortest round-trip formatting,
/// so write-then-read reproduces every parameter bit-exactly.
DomainSpec read_domain_file(const std::string& path);
void write_domain_file(const std::string& path, const DomainSpec& spec);

DomainSpec parse_domain_text(const std::string& text);
std::string domain_to_text(const DomainSpec& spec);

}  // namespace billiards
