#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace smdp {

/// Exact arbitrary-precision rational. All probabilities and rewards are kept exact.
using Rational = mpq_class;

Rational make_rational(std::int64_t num, std::uint64_t den = 1);

/// Canonical `num/den` text; integers print without a denominator.
std::string to_string(const Rational& q);

/// Parses `num`, `num/den`, or `-num/den`. Throws smdp::Error on bad input.
Rational parse_rational(const std::string& text);

double to_double(const Rational& q);

}  // namespace smdp
