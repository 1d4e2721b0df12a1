// Arbitrary-precision integer/rational aliases and small helpers shared
// across the library. All exact arithmetic goes through these types;
// floating point only ever appears in display formatting.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace goodfrey {

using Int = mpz_class;
using Rat = mpq_class;

// x^e for machine-sized exponents.
Int pow_ui(const Int& x, unsigned long e);
Rat pow_ui(const Rat& x, unsigned long e);

Int gcd(const Int& x, const Int& y);

// 2-adic valuation of |n|; v2(0) is undefined and asserts.
unsigned long v2(const Int& n);

bool is_perfect_square(const Int& n);

// If n = m^k for some k >= 2, returns the pair (m, k) with k maximal.
std::optional<std::pair<Int, unsigned>> perfect_power(const Int& n);

// High-precision log ratio log(num) / log(den), both arguments > 1,
// evaluated with 256-bit mantissas. Accurate well beyond 10 significant
// digits for anything this library produces.
double log_ratio(const Int& num, const Int& den);

std::string to_decimal(const Int& n);
std::string to_decimal(const Rat& q);

// Parses a decimal string, throws std::invalid_argument on garbage.
Int int_from_decimal(const std::string& s);

}  // namespace goodfrey
