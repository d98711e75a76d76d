#include <doctest.h>

#include "twistsum/errors.hpp"
#include "twistsum/twist.hpp"

using namespace twistsum;

TEST_CASE("context derivation") {
    TwistContext c = make_context(11, 2, 3, 14);
    CHECK(c.q == 121);
    CHECK(c.digits == std::vector<std::uint32_t>{3, 1});
    CHECK(c.b == 2);
    CHECK(c.s == std::vector<std::uint64_t>{14, 34});  // 11*14 = 154 = 34 mod 120
    CHECK(c.digit_sum_b() == 4);

    TwistContext t = make_context(5, 1, 2, 0);
    CHECK(t.b == 1);
    CHECK(t.hypothesis_ok());
    CHECK(!make_context(5, 1, 4, 0).hypothesis_ok());  // 5 <= 2*9+1
}

TEST_CASE("context validation") {
    CHECK_THROWS_AS(make_context(6, 1, 2, 0), validation_error);   // p not prime
    CHECK_THROWS_AS(make_context(5, 1, 10, 0), validation_error);  // p | d
    CHECK_THROWS_AS(make_context(5, 1, 2, 4), validation_error);   // u > q-2
    CHECK_THROWS_AS(make_context(5, 0, 2, 0), validation_error);
    CHECK_THROWS_AS(make_context(5, 1, 1, 0), validation_error);   // d >= 2
}

TEST_CASE("arithmetic slopes, frozen values") {
    TwistContext c0 = make_context(11, 1, 3, 0);
    CHECK(arith_slope(c0, 0) == 0);
    CHECK(arith_slope(c0, 1) == 4);
    CHECK(arith_slope(c0, 2) == 6);
    TwistContext c1 = make_context(11, 1, 3, 1);
    CHECK(arith_slope(c1, 0) == 1);
    CHECK(arith_slope(c1, 1) == 3);
    CHECK(arith_slope(c1, 2) == 7);
    CHECK(arith_polygon(c0, 3).value_at(Rational(3)) == 10);
    CHECK(arith_polygon(c1, 3).value_at(Rational(3)) == 11);
}

TEST_CASE("slope periodicity omega(n+d) = omega(n) + p-1") {
    for (std::uint64_t p : {5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull})
        for (unsigned a : {1u, 2u})
            for (std::uint64_t d : {2ull, 3ull, 4ull, 5ull}) {
                if (d % p == 0 || p <= 2 * (d - 1) * (d - 1) + 1) continue;
                std::uint64_t q = (a == 1) ? p : p * p;
                for (std::uint64_t u = 0; u < q - 1; u += (a == 1 ? 1 : 7)) {
                    TwistContext c = make_context(p, a, d, u);
                    for (std::uint64_t n = 0; n <= 4 * d; ++n)
                        REQUIRE(arith_slope(c, n + d) ==
                                arith_slope(c, n) + Rational(static_cast<long>(p) - 1));
                }
            }
}

TEST_CASE("closed form of the polygon endpoint") {
    // P(d) = (1/b) sum u_i + (p-1)(d-1)/2
    for (std::uint64_t u : {0ull, 1ull, 5ull, 9ull}) {
        TwistContext c = make_context(11, 1, 3, u);
        Rational expected = Rational(static_cast<long>(u)) + Rational(10) * 2 / 2;
        CHECK(arith_polygon(c, 3).value_at(Rational(3)) == expected);
    }
    TwistContext c = make_context(11, 2, 3, 14);
    Rational expected = make_rational(4, 2) + Rational(10);
    CHECK(arith_polygon(c, 3).value_at(Rational(3)) == expected);
}

TEST_CASE("hodge polygon and the Hodge bound") {
    TwistContext c = make_context(11, 1, 3, 1);
    NewtonPolygon H = hodge_polygon(c, 3);
    CHECK(H.slopes()[0] == make_rational(1, 30));  // u/(b d (p-1)) + 0/d
    CHECK(H.slopes()[1] == make_rational(1, 30) + make_rational(1, 3));
    NewtonPolygon scaled = scale_polygon(H, Rational(10));
    ComparisonReport r = compare_polygons(arith_polygon(c, 3), scaled, 3);
    CHECK(r.dominated);
    CHECK(scaled.value_at(Rational(3)) == 11);
}

TEST_CASE("digit rotation leaves the polygon invariant") {
    // Replacing u by pu mod q-1 rotates the digits, so omega is unchanged.
    TwistContext c = make_context(11, 2, 3, 14);
    TwistContext r = make_context(11, 2, 3, 34);
    for (std::uint64_t n = 0; n <= 6; ++n) CHECK(arith_slope(c, n) == arith_slope(r, n));
}

TEST_CASE("level slopes at m = 1 reproduce omega") {
    TwistContext c = make_context(11, 1, 3, 1);
    auto s = level_slopes(c, 1, 6);
    REQUIRE(s.size() == 6);
    CHECK(s[0] == 1);
    CHECK(s[1] == 3);
    CHECK(s[2] == 7);
    CHECK(s[3] == 11);  // omega(0) + (p-1)
    CHECK(s[4] == 13);
    CHECK(s[5] == 17);
}
