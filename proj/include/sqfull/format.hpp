#pragma once

#include <cstdio>
#include <string>

namespace sqfull {

/// Fixed, locale-independent rendering of a double for CSV/JSON output.
inline std::string fmt_real(double v, int digits = 12)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

}  // namespace sqfull
