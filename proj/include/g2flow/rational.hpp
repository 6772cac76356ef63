#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace g2flow {

using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" into a canonicalized rational. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

/// Exact n-th root when both numerator and denominator are perfect powers.
std::optional<Rational> exact_root(const Rational& r, unsigned long n);

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace g2flow
