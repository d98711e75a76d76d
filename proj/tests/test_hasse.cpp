#include <doctest.h>

#include <vector>

#include "twistsum/errors.hpp"
#include "twistsum/hasse.hpp"

using namespace twistsum;

namespace {

// Independent oracle: exponentiate the series g = sum x^{p^i}/p^i term by
// term, E = sum g^k / k!, all truncated at degree M.
std::vector<Rational> series_exp_oracle(std::uint64_t p, std::size_t M) {
    std::vector<Rational> g(M + 1, Rational(0));
    for (std::uint64_t pi = 1; pi <= M; pi *= p) {
        g[pi] = make_rational(1, 1);
        g[pi] /= Rational(static_cast<long>(pi));
        g[pi].canonicalize();
    }
    std::vector<Rational> out(M + 1, Rational(0)), pw(M + 1, Rational(0));
    out[0] = 1;
    pw[0] = 1;
    Rational fact(1);
    for (std::size_t k = 1; k <= M; ++k) {
        std::vector<Rational> nxt(M + 1, Rational(0));
        for (std::size_t i = 0; i <= M; ++i) {
            if (pw[i] == 0) continue;
            for (std::size_t j = 1; i + j <= M; ++j) nxt[i + j] += pw[i] * g[j];
        }
        pw = nxt;
        fact *= Rational(static_cast<long>(k));
        for (std::size_t i = 0; i <= M; ++i) {
            Rational t = pw[i] / fact;
            t.canonicalize();
            out[i] += t;
        }
    }
    for (auto& r : out) r.canonicalize();
    return out;
}

}  // namespace

TEST_CASE("artin-hasse coefficients") {
    ArtinHasseTable t = artin_hasse(5, 60);
    CHECK(t.coeffs[0] == 1);
    CHECK(t.coeffs[1] == 1);
    CHECK(t.coeffs[2] == make_rational(1, 2));
    CHECK(t.coeffs[4] == make_rational(1, 24));  // 1/n! below p
    CHECK(t.coeffs[5] == make_rational(5, 24));  // first deviation
    for (std::size_t n = 0; n <= 60; ++n)
        REQUIRE(ord_p(t.coeffs[n] == 0 ? Rational(1) : t.coeffs[n], 5) >= 0);  // p-integral
    CHECK_THROWS_AS((void)artin_hasse(4, 10), validation_error);
}

TEST_CASE("artin-hasse agrees with the series-exponential oracle") {
    for (std::uint64_t p : {5ull, 7ull}) {
        auto oracle = series_exp_oracle(p, 26);
        ArtinHasseTable t = artin_hasse(p, 26);
        for (std::size_t n = 0; n <= 26; ++n) REQUIRE(t.coeffs[n] == oracle[n]);
    }
}

TEST_CASE("permutation sets") {
    TwistContext ctx = make_context(11, 1, 3, 1);
    // alpha = (1, 0) at n=2: only tau = (1, 0) fits
    auto perms = s_ni_permutations(ctx, 1, 2);
    REQUIRE(perms.size() == 1);
    CHECK(perms[0] == std::vector<unsigned>{1, 0});
    CHECK_THROWS_AS((void)s_ni_permutations(ctx, 2, 2), validation_error);  // i > b
    CHECK_THROWS_AS((void)s_ni_permutations(ctx, 1, 3), validation_error);  // n > d-1
}

TEST_CASE("hasse component, frozen small case") {
    TwistContext ctx = make_context(11, 1, 3, 1);
    ArtinHasseTable t = artin_hasse(11, 40);
    HasseComponent c = hasse_component(ctx, t, 1, 2);
    CHECK(c.exponent == 0);
    CHECK(c.coefficient == make_rational(-1, 24));
    CHECK(ord_p(c.coefficient, 11) == 0);
    CHECK(vandermonde_certificate(ctx, t, 1, 2) == 1);  // alpha = (1,0)
}

TEST_CASE("two-component case b = 2") {
    TwistContext ctx = make_context(11, 2, 3, 14);  // digits (3, 1), b = 2
    ArtinHasseTable t = artin_hasse(11, 40);
    for (unsigned n = 1; n <= 2; ++n) {
        HasseMonomial m = hasse_polynomial(ctx, t, n);
        CHECK(m.coefficient != 0);
        long exp_sum = 0;
        for (unsigned i = 1; i <= 2; ++i) {
            HasseComponent c = hasse_component(ctx, t, i, n);
            CHECK(ord_p(c.coefficient, 11) == 0);
            exp_sum += c.exponent;
            (void)vandermonde_certificate(ctx, t, i, n);
        }
        CHECK(m.exponent == exp_sum);
    }
}

TEST_CASE("evaluation at lambda") {
    TwistContext ctx = make_context(11, 1, 3, 1);
    ArtinHasseTable t = artin_hasse(11, 40);
    FieldDesc F = build_field(11, 1);
    // exponent 0, coefficient -1/24 = -6^{-1}... just check multiplicativity shape
    HasseMonomial m = hasse_polynomial(ctx, t, 2);
    FieldElement lam = fe_from_int(F, 3);
    FieldElement v = hasse_value_at_lambda(ctx, t, 2, F, lam);
    FieldElement expected =
        fe_mul(F, fe_pow(F, lam, static_cast<std::uint64_t>(m.exponent)),
               fe_from_int(F, m.coefficient));
    CHECK(v == expected);
    CHECK_THROWS_AS((void)hasse_value_at_lambda(ctx, t, 2, F, fe_zero(F)), validation_error);
}
