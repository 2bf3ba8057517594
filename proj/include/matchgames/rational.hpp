#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace matchgames {

// Exact rationals. mpq_class keeps values canonical (reduced, positive
// denominator) after every arithmetic operation.
using Rational = mpq_class;

/// Formats as `num/den`, always including the denominator.
std::string to_fraction_string(const Rational& q);

/// Formats as `num/den`, or just `num` for integers.
std::string to_display_string(const Rational& q);

/// Parses `num/den` or an integer. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

Rational lcm_of_denominators(const std::vector<Rational>& values);

double to_double(const Rational& q);

}  // namespace matchgames
