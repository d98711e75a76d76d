#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace twistsum {

using Int = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// floor(x) as an integer.
Int floor_rational(const Rational& x);

// x - floor(x), in [0, 1).
Rational frac_part(const Rational& x);

bool is_prime(std::uint64_t n);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// Inverse of a modulo m; throws validation_error if gcd(a, m) != 1.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);

// Reduce a rational with denominator coprime to m into Z/m.
std::uint64_t rational_mod(const Rational& x, std::uint64_t m);

// p-adic order of the numerator minus that of the denominator.
long ord_p(const Rational& x, std::uint64_t p);

// "num" or "num/den".
std::string rational_str(const Rational& x);

}  // namespace twistsum
