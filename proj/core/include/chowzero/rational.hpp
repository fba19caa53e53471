#ifndef CHOWZERO_RATIONAL_HPP_
#define CHOWZERO_RATIONAL_HPP_

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace chowzero {

// Arbitrary-precision rational. Always kept in canonical (reduced) form.
using Rational = mpq_class;
using Integer = mpz_class;

// "p/q" with q >= 1, never a decimal point. Integers print as "p/1".
std::string to_fraction_string(const Rational& value);

// Accepts "p", "p/q", optional leading sign. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

}  // namespace chowzero

#endif  // CHOWZERO_RATIONAL_HPP_
