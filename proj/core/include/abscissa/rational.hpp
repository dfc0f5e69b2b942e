#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace abscissa {

/// Exact rational number used for all symbolic constraint assembly.
using Rational = mpq_class;

/// Parses "3", "-7/2" or a decimal literal such as "0.125" or "1e-3" exactly.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

inline double to_double(const Rational& r) { return r.get_d(); }
inline double to_double(double v) { return v; }

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline bool is_zero(double v) { return v == 0.0; }

}  // namespace abscissa
