#include <doctest.h>

#include "twistsum/errors.hpp"
#include "twistsum/rational.hpp"

using namespace twistsum;

TEST_CASE("floor and fractional part") {
    CHECK(floor_rational(make_rational(7, 2)) == 3);
    CHECK(floor_rational(make_rational(-7, 2)) == -4);
    CHECK(floor_rational(Rational(5)) == 5);
    CHECK(frac_part(make_rational(7, 2)) == make_rational(1, 2));
    CHECK(frac_part(make_rational(-7, 2)) == make_rational(1, 2));
    CHECK(frac_part(Rational(3)) == 0);
}

TEST_CASE("primality") {
    CHECK(is_prime(2));
    CHECK(is_prime(23));
    CHECK(!is_prime(1));
    CHECK(!is_prime(25));
    CHECK(!is_prime(91));  // 7 * 13
}

TEST_CASE("modular arithmetic") {
    const std::uint64_t m = 390625;  // 5^8
    CHECK(mul_mod(390624, 390624, m) == 1);
    CHECK(pow_mod(2, 10, 1000) == 24);
    CHECK(mul_mod(inv_mod(7, m), 7, m) == 1);
    CHECK_THROWS_AS((void)inv_mod(5, m), validation_error);
}

TEST_CASE("rational reduction mod m") {
    CHECK(rational_mod(make_rational(1, 2), 390625) == 195313);
    CHECK(rational_mod(make_rational(5, 24), 11) == rational_mod(Rational(5), 11) * inv_mod(24 % 11, 11) % 11);
    CHECK_THROWS_AS((void)rational_mod(make_rational(1, 5), 25), validation_error);
}

TEST_CASE("p-adic order of rationals") {
    CHECK(ord_p(make_rational(50, 3), 5) == 2);
    CHECK(ord_p(make_rational(3, 25), 5) == -2);
    CHECK(ord_p(make_rational(5, 24), 5) == 1);
}

TEST_CASE("rational serialization") {
    CHECK(rational_str(make_rational(3, 4)) == "3/4");
    CHECK(rational_str(Rational(7)) == "7");
    CHECK(rational_str(make_rational(-1, 2)) == "-1/2");
}
