#pragma once

#include <cstdio>
#include <string>

namespace billiards::csv {

/// 17 significant digits: round-trips doubles exactly, so emitted tables are
/// reproducible bit-for-bit after parsing.
inline std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace billiards::csv
