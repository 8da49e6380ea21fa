#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cubapprox {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

std::string to_string(const Int& v);
std::string to_string(const Rat& v);

/// Parses "n" or "n/d" with optional sign. Throws Error(ParseError).
Rat parse_rat(std::string_view text);

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);

/// Largest r with r*r <= v; v >= 0.
Int isqrt(const Int& v);
bool is_perfect_square(const Int& v);
bool is_perfect_square(const Rat& v);

/// p-adic valuation of a nonzero integer.
long valuation(const Int& v, const Int& p);
long valuation(const Rat& v, const Int& p);

/// Squarefree part with sign: v = squarefree_part(v) * s^2.
Int squarefree_part(const Int& v);

bool is_prime(const Int& p);

/// Positive divisors of |v| (v != 0), ascending. Throws Error(Overflow) when
/// |v| cannot be factored by trial division within the built-in budget.
std::vector<Int> divisors(const Int& v);

/// Prime factorisation of |v| as (prime, exponent) pairs.
std::vector<std::pair<Int, unsigned>> factorize(const Int& v);

inline int sign(const Int& v) { return sgn(v); }
inline int sign(const Rat& v) { return sgn(v); }

bool fits_int64(const Int& v);
std::int64_t to_int64(const Int& v);

}  // namespace cubapprox
