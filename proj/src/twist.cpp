#include "twistsum/twist.hpp"

#include <algorithm>

#include "twistsum/errors.hpp"

namespace twistsum {

std::uint64_t TwistContext::digit_sum_b() const {
    std::uint64_t t = 0;
    for (unsigned i = 0; i < b; ++i) t += digits[i];
    return t;
}

TwistContext make_context(std::uint64_t p, unsigned a, std::uint64_t d, std::uint64_t u) {
    if (!is_prime(p)) throw validation_error("make_context: p must be prime");
    if (a < 1) throw validation_error("make_context: a must be >= 1");
    if (d < 2) throw validation_error("make_context: d must be >= 2");
    if (d % p == 0) throw validation_error("make_context: p must not divide d");

    TwistContext ctx;
    ctx.p = p;
    ctx.a = a;
    ctx.d = d;
    ctx.q = 1;
    for (unsigned i = 0; i < a; ++i) {
        if (ctx.q > (std::uint64_t(1) << 40) / p)
            throw validation_error("make_context: q = p^a too large for desk scale");
        ctx.q *= p;
    }
    if (u > ctx.q - 2)
        throw validation_error("make_context: u out of range (require 0 <= u <= q-2)");
    ctx.u = u;

    std::uint64_t rem = u;
    for (unsigned i = 0; i < a; ++i) {
        ctx.digits.push_back(static_cast<std::uint32_t>(rem % p));
        rem /= p;
    }

    const std::uint64_t mod = ctx.q - 1;
    std::uint64_t s = u % mod;
    ctx.s.push_back(s);
    unsigned b = 1;
    while (true) {
        s = mul_mod(s, p, mod);
        if (s == u % mod) break;
        ctx.s.push_back(s);
        ++b;
    }
    ctx.b = b;
    return ctx;
}

Rational arith_slope(const TwistContext& ctx, std::uint64_t n) {
    const long p = static_cast<long>(ctx.p);
    const long d = static_cast<long>(ctx.d);
    const long b = static_cast<long>(ctx.b);
    Rational usum(static_cast<long>(ctx.digit_sum_b()), b);
    usum.canonicalize();
    Rational lin = (Rational((p - 1) * static_cast<long>(n)) + usum) / Rational(d);
    lin.canonicalize();

    Rational fsum(0);
    Rational nd = make_rational(static_cast<long>(n), d);
    for (unsigned i = 0; i < ctx.b; ++i) {
        Rational t = make_rational(p * static_cast<long>(n) + ctx.digits[i], d);
        fsum += frac_part(t) - frac_part(nd);
    }
    Rational out = lin + Rational(d - 1) * fsum / Rational(b);
    out.canonicalize();
    return out;
}

NewtonPolygon arith_polygon(const TwistContext& ctx, std::uint64_t n_max) {
    if (n_max < 1) throw validation_error("arith_polygon: n_max must be >= 1");
    std::vector<Rational> slopes;
    slopes.reserve(n_max);
    for (std::uint64_t n = 0; n < n_max; ++n) slopes.push_back(arith_slope(ctx, n));
    return polygon_from_slopes(slopes);
}

NewtonPolygon hodge_polygon(const TwistContext& ctx, std::uint64_t n_max) {
    if (n_max < 1) throw validation_error("hodge_polygon: n_max must be >= 1");
    const long d = static_cast<long>(ctx.d);
    Rational base = make_rational(static_cast<long>(ctx.digit_sum_b()),
                                  static_cast<long>(ctx.b) * d * (static_cast<long>(ctx.p) - 1));
    std::vector<Rational> slopes;
    for (std::uint64_t l = 0; l < n_max; ++l) {
        Rational m = base + make_rational(static_cast<long>(l), d);
        m.canonicalize();
        slopes.push_back(m);
    }
    return polygon_from_slopes(slopes);
}

std::vector<Rational> level_slopes(const TwistContext& ctx, unsigned m, std::size_t count) {
    if (m < 1) throw validation_error("level_slopes: m must be >= 1");
    if (count < 1) throw validation_error("level_slopes: count must be >= 1");
    std::uint64_t block = ctx.d;
    std::uint64_t step = ctx.p - 1;  // p^m - p^{m-1}
    for (unsigned i = 1; i < m; ++i) {
        block *= ctx.p;
        step *= ctx.p;
        if (block > 1'000'000) throw validation_error("level_slopes: p^{m-1} d too large");
    }
    std::vector<Rational> out;
    std::uint64_t j_max = count / block + 1;
    for (std::uint64_t j = 0; j <= j_max; ++j)
        for (std::uint64_t i = 0; i < block; ++i) {
            Rational v = Rational(static_cast<long>(j * step)) + arith_slope(ctx, i);
            v.canonicalize();
            out.push_back(v);
        }
    std::sort(out.begin(), out.end());
    out.resize(count);
    return out;
}

}  // namespace twistsum
