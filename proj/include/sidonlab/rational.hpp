#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace sidonlab {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Parses "p/q", "p" or a finite decimal such as "0.2" into an exact rational.
/// Throws ValidationError on anything else or on a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form (just "p" when the denominator is 1).
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

BigInt to_bigint(std::int64_t v);
std::int64_t to_int64(const BigInt& z); // throws ValidationError when out of range

/// floor(sqrt(n)) for n >= 0
std::int64_t isqrt(std::int64_t n);
std::int64_t ceil_sqrt(std::int64_t n);
bool is_perfect_square(std::int64_t n);

/// ceil(q) and floor(q) as integers
BigInt ceil(const Rational& q);
BigInt floor(const Rational& q);

/// Value of q * n^{h/2} when it is rational (n a perfect square, or h even).
std::optional<Rational> scale_by_half_power(const Rational& q, std::int64_t n, int half_power);

BigInt pow(const BigInt& base, unsigned long exponent);
Rational pow(const Rational& base, unsigned long exponent);

} // namespace sidonlab
