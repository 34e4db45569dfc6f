#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace jetham {

using Rational = mpq_class;

/// "p/q" in lowest terms, or "p" when the denominator is one.
std::string to_string(const Rational& q);

/// Exact value of a decimal literal such as "12", "0.25" or "3.".
Rational rational_from_decimal(std::string_view digits);

/// num/den in lowest terms.
inline Rational ratio(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace jetham
