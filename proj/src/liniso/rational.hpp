#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace liniso {

using Rational = mpq_class;
using BigInt = mpz_class;

// Accepts "p/q", "p" or "-p/q". Decimals are rejected so thresholds stay exact.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);
double to_double(const Rational& r);

// Exact ceiling.
BigInt ceil(const Rational& r);

// Ceiling of a floating value that may carry solver jitter: anything within
// `snap` of an integer is treated as that integer.
std::int64_t snapped_ceil(double value, double snap = 1e-6);

// k / 2^n.
Rational dyadic(std::int64_t k, int n);

}  // namespace liniso
