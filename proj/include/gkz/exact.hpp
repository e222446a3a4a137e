#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace gkz {

// Exact arithmetic used throughout the integer-lattice and operator-algebra
// layers.  Numerics (quadrature, mode finding) convert at the boundary.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Int& v) { return v.convert_to<double>(); }
inline double to_double(const Rat& v) { return v.convert_to<double>(); }

} // namespace gkz
