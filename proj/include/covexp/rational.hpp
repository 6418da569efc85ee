#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace covexp {

// Arbitrary precision rational, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;

using Vector = std::vector<Rational>;

// "n/d", or "n" when d == 1.
std::string to_string(const Rational& q);

// Accepts "n", "-n", "n/d"; rejects zero denominators and trailing garbage.
Rational parse_rational(std::string_view text);

bool is_zero(const Vector& v);

}  // namespace covexp
