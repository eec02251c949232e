#pragma once

#include <boost/rational.hpp>

#include <string>
#include <string_view>

namespace learnta {

using Rational = boost::rational<long long>;

// Largest integer not above r.
inline long long floor_of(const Rational& r) {
  long long q = r.numerator() / r.denominator();
  if (r.numerator() < 0 && q * r.denominator() != r.numerator()) --q;
  return q;
}

inline Rational frac_of(const Rational& r) { return r - floor_of(r); }

inline bool is_integer(const Rational& r) { return r.denominator() == 1; }

// Accepts "7", "3/4", "1.25". Throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

// Integers print bare, finite decimals print as decimals, everything else as p/q.
std::string to_string(const Rational& r);

}  // namespace learnta
