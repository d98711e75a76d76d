#include <doctest.h>

#include <vector>

#include "twistsum/dwork.hpp"
#include "twistsum/errors.hpp"

using namespace twistsum;

namespace {

PiSeries det_expand(const DworkParams& P, const std::vector<PiSeries>& m, unsigned n) {
    if (n == 0) return ps_one(P);
    if (n == 1) return m[0];
    PiSeries acc = ps_zero(P);
    for (unsigned c = 0; c < n; ++c) {
        std::vector<PiSeries> sub;
        for (unsigned r = 1; r < n; ++r)
            for (unsigned cc = 0; cc < n; ++cc)
                if (cc != c) sub.push_back(m[r * n + cc]);
        PiSeries t = ps_mul(P, m[c], det_expand(P, sub, n - 1));
        acc = (c % 2 == 0) ? ps_add(P, acc, t) : ps_sub(P, acc, t);
    }
    return acc;
}

// Sum of principal n x n minors, directly over all subsets.
PiSeries minors_oracle(const DworkMatrix& M, unsigned n) {
    PiSeries acc = ps_zero(M.params);
    std::vector<unsigned> idx(n);
    auto rec = [&](auto&& self, unsigned start, unsigned depth) -> void {
        if (depth == n) {
            std::vector<PiSeries> sub;
            for (unsigned r : idx)
                for (unsigned c : idx) sub.push_back(M.at(r, c));
            acc = ps_add(M.params, acc, det_expand(M.params, sub, n));
            return;
        }
        for (unsigned i = start; i < M.J; ++i) {
            idx[depth] = i;
            self(self, i + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
    return acc;
}

}  // namespace

TEST_CASE("truncation defaults") {
    DworkTruncation t = default_truncation(make_context(5, 1, 2, 0));
    CHECK(t.J == 6);
    CHECK(t.E == 4);
    CHECK(t.N == 8);
    t = default_truncation(make_context(11, 1, 3, 7));
    CHECK(t.J == 33);
    CHECK(t.E == 13);
    CHECK(t.N == 9);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((void)make_dwork_params(make_context(5, 2, 2, 0), 1, 6, 6, 30),
                    validation_error);  // a = 1 only
    CHECK_THROWS_AS((void)make_dwork_params(make_context(5, 1, 2, 0), 0, 6, 6, 30),
                    validation_error);  // lambda = 0
    CHECK_THROWS_AS((void)make_dwork_params(make_context(5, 1, 2, 0), 1, 6, 30, 30),
                    validation_error);  // p^N overflow
}

TEST_CASE("series arithmetic and order") {
    DworkParams P = make_dwork_params(make_context(5, 1, 2, 0), 1, 6, 4, 30);
    PiSeries x = ps_zero(P);
    x.c[2] = 50;  // 2 * 5^2 pi^2: candidate order 2 + 2(p-1) = 10, beyond the cutoff E = 6
    PiOrder o = ps_order(P, x);
    CHECK(!o.exact);
    CHECK(o.value == 6);
    x.c[1] = 5;  // pi 5: order 1 + (p-1) = 5 < E, exact
    o = ps_order(P, x);
    CHECK(o.exact);
    CHECK(o.value == 5);
    PiSeries z = ps_zero(P);
    PiOrder zo = ps_order(P, z);
    CHECK(!zo.exact);
    CHECK(zo.value == 6);  // bound = min(E, 0 + (p-1)N)
    CHECK(ps_mul(P, ps_one(P), x) == x);
    CHECK(ps_add(P, x, ps_neg(P, x)) == ps_zero(P));
}

TEST_CASE("gamma series, frozen values") {
    TwistContext ctx = make_context(5, 1, 2, 0);
    DworkParams P = make_dwork_params(ctx, 1, 8, 8, 30);
    // gamma_2 = pi lambda_1 lambda_0 + pi^2 lambda_0 lambda_2 = pi + pi^2/2
    PiSeries g2 = gamma_series(P, 2);
    CHECK(g2.c[0] == 0);
    CHECK(g2.c[1] == 1);
    CHECK(g2.c[2] == rational_mod(make_rational(1, 2), P.pN));
    // gamma_5 leading term pi^3 lambda_2 lambda_1 = pi^3 / 2
    PiSeries g5 = gamma_series(P, 5);
    CHECK(g5.c[3] == rational_mod(make_rational(1, 2), P.pN));
    PiOrder o = ps_order(P, g5);
    CHECK(o.exact);
    CHECK(o.value == 3);
    GammaLeading gl = gamma_leading(ctx, 5);
    CHECK(gl.order == 3);
    CHECK(gl.lambda_index_i == 2);
    CHECK(gl.lambda_index_j == 1);
}

TEST_CASE("fredholm coefficients equal brute-force principal minors") {
    for (std::uint64_t u : {0ull, 1ull, 3ull}) {
        TwistContext ctx = make_context(5, 1, 2, u);
        DworkMatrix M = build_matrix(ctx, 2, 6, 5, 6);
        auto C = fredholm_coefficients(M, 3);
        REQUIRE(C[0] == ps_one(M.params));
        for (unsigned n = 1; n <= 3; ++n) REQUIRE(C[n] == minors_oracle(M, n));
    }
    TwistContext ctx = make_context(11, 1, 3, 4);
    DworkMatrix M = build_matrix(ctx, 7, 8, 7, 7);
    auto C = fredholm_coefficients(M, 3);
    for (unsigned n = 1; n <= 3; ++n) REQUIRE(C[n] == minors_oracle(M, n));
}

TEST_CASE("fredholm order verdict, frozen cases") {
    {
        TwistContext ctx = make_context(5, 1, 2, 3);
        DworkTruncation t = default_truncation(ctx);
        DworkVerdict v = verify_fredholm_orders(ctx, 4, t.J, t.E, t.N);
        REQUIRE(v.rows.size() == 1);
        CHECK(v.rows[0].expected_order == 2);
        CHECK(v.rows[0].order_matches);
        CHECK(v.rows[0].leading_mod_p == 4);
        CHECK(v.rows[0].hasse_matches);
        CHECK(v.all_orders_match);
    }
    {
        TwistContext ctx = make_context(11, 1, 3, 1);
        DworkTruncation t = default_truncation(ctx);
        DworkVerdict v = verify_fredholm_orders(ctx, 2, t.J, t.E, t.N);
        REQUIRE(v.rows.size() == 2);
        CHECK(v.rows[0].expected_order == 1);
        CHECK(v.rows[0].leading_mod_p == 2);
        CHECK(v.rows[1].expected_order == 4);
        CHECK(v.rows[1].leading_mod_p == 5);
        CHECK(v.all_orders_match);
        CHECK(v.all_hasse_match);

        NewtonPolygon hull = c_function_polygon(ctx, 2, 2, t.J, t.E, t.N);
        CHECK(hull.value_at(Rational(1)) == 1);
        CHECK(hull.value_at(Rational(2)) == 4);
    }
}

TEST_CASE("undersized truncation raises precision errors") {
    TwistContext ctx = make_context(11, 1, 3, 7);
    CHECK_THROWS_AS((void)verify_fredholm_orders(ctx, 1, 33, 3, 9), precision_error);  // E < P(2)
}
