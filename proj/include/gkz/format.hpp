#pragma once

#include <complex>
#include <cstdio>
#include <string>

namespace gkz {

/// Fixed 17-significant-digit rendering used for all numeric program output,
/// so repeated runs produce identical bytes.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string format_complex_pair(const std::complex<double>& z) {
    return "[" + format_double(z.real()) + "," + format_double(z.imag()) + "]";
}

} // namespace gkz
