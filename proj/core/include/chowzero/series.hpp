#ifndef CHOWZERO_SERIES_HPP_
#define CHOWZERO_SERIES_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "chowzero/rational.hpp"

namespace chowzero {

// Coefficient i multiplies t^i.
using Polynomial = std::vector<Rational>;

struct RationalFunction {
  Polynomial numerator;
  Polynomial denominator;
};

// Parses expressions in t built from integers, + - * / ^ (nonnegative
// integer powers), parentheses and implicit multiplication, e.g.
// "(1-t)^3/(1-2t)^3". Throws std::invalid_argument on syntax errors.
RationalFunction parse_rational_function(std::string_view text);

// Power series coefficients of numer/denom at t = 0 up to t^dmax.
// Throws std::domain_error when denom(0) = 0.
std::vector<Rational> expand_rational(const Polynomial& numer, const Polynomial& denom, int dmax);
std::vector<Rational> expand_rational(const RationalFunction& f, int dmax);

}  // namespace chowzero

#endif  // CHOWZERO_SERIES_HPP_
