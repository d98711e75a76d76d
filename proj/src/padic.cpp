#include "twistsum/padic.hpp"

#include <map>
#include <mutex>
#include <utility>

#include "twistsum/errors.hpp"

namespace twistsum {

namespace {

// Reduce a raw product (length <= 2a-1, entries mod p^N) by the monic
// lifted modulus.
void reduce_unramified(const ZqContext& ctx, std::vector<std::uint64_t>& c) {
    const unsigned a = ctx.a;
    const std::uint64_t pN = ctx.pN;
    for (std::size_t i = c.size(); i-- > a;) {
        std::uint64_t top = c[i];
        if (!top) continue;
        for (unsigned k = 0; k < a; ++k) {
            std::uint64_t sub = mul_mod(top, ctx.modulus[k], pN);
            std::uint64_t idx = i - a + k;
            c[idx] = (c[idx] + pN - sub) % pN;
        }
        c[i] = 0;
    }
    c.resize(a);
}

std::vector<std::vector<std::uint64_t>> build_pi_reduction(std::uint64_t p, std::uint64_t pN) {
    // pi^{p-1} = -sum_{j<p-1} binom(p, j+1) pi^j, from Phi_p(1+pi) = 0.
    const unsigned deg = static_cast<unsigned>(p - 1);
    std::vector<std::uint64_t> binom(p + 1, 0);
    binom[0] = 1;
    for (std::uint64_t row = 1; row <= p; ++row) {
        binom[row] = 1;
        for (std::uint64_t j = row; j-- > 1;) binom[j] = (binom[j] + binom[j - 1]) % pN;
    }
    // after the loop binom[j] = C(p, j) mod p^N
    std::vector<std::vector<std::uint64_t>> table;
    std::vector<std::uint64_t> cur(deg, 0);
    for (unsigned j = 0; j < deg; ++j) cur[j] = (pN - binom[j + 1] % pN) % pN;
    table.push_back(cur);
    for (unsigned k = 1; k + deg <= 2 * deg - 2; ++k) {
        // multiply by pi: shift up, fold the overflowing top term
        std::vector<std::uint64_t> nxt(deg, 0);
        std::uint64_t top = cur[deg - 1];
        for (unsigned j = deg - 1; j >= 1; --j) nxt[j] = cur[j - 1];
        nxt[0] = 0;
        if (top) {
            const auto& rel = table[0];
            for (unsigned j = 0; j < deg; ++j)
                nxt[j] = (nxt[j] + mul_mod(top, rel[j], pN)) % pN;
        }
        cur = nxt;
        table.push_back(cur);
    }
    return table;
}

}  // namespace

// Reduction rows for pi^{p-1} .. pi^{2p-4}, keyed by (p, pN).
static const std::vector<std::vector<std::uint64_t>>& pi_reduction(const ZqContext& ctx) {
    static std::map<std::pair<std::uint64_t, std::uint64_t>,
                    std::vector<std::vector<std::uint64_t>>>
        cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(ctx.p, ctx.pN);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, build_pi_reduction(ctx.p, ctx.pN)).first;
    return it->second;
}

ZqContext make_zq_context(const FieldDesc& F, unsigned N) {
    if (N < 1) throw validation_error("make_zq_context: N must be >= 1");
    ZqContext ctx;
    ctx.p = F.p;
    ctx.a = F.n;
    ctx.N = N;
    ctx.pN = 1;
    for (unsigned i = 0; i < N; ++i) {
        if (ctx.pN > (std::uint64_t(1) << 62) / F.p)
            throw validation_error("make_zq_context: p^N exceeds 62 bits");
        ctx.pN *= F.p;
    }
    ctx.field = F;
    ctx.modulus.assign(F.modulus.begin(), F.modulus.end());
    return ctx;
}

ZqElement zq_zero(const ZqContext& ctx) { return ZqElement{std::vector<std::uint64_t>(ctx.a, 0)}; }

ZqElement zq_one(const ZqContext& ctx) {
    ZqElement x = zq_zero(ctx);
    x.c[0] = 1 % ctx.pN;
    return x;
}

ZqElement zq_from_int(const ZqContext& ctx, std::uint64_t v) {
    ZqElement x = zq_zero(ctx);
    x.c[0] = v % ctx.pN;
    return x;
}

ZqElement zq_lift(const ZqContext& ctx, const FieldElement& x) {
    ZqElement z = zq_zero(ctx);
    for (unsigned i = 0; i < ctx.a; ++i) z.c[i] = x[i];
    return z;
}

FieldElement zq_reduce_mod_p(const ZqContext& ctx, const ZqElement& x) {
    FieldElement f(ctx.a);
    for (unsigned i = 0; i < ctx.a; ++i) f[i] = static_cast<std::uint32_t>(x.c[i] % ctx.p);
    return f;
}

bool zq_is_zero(const ZqElement& x) {
    for (auto v : x.c)
        if (v) return false;
    return true;
}

ZqElement zq_add(const ZqContext& ctx, const ZqElement& x, const ZqElement& y) {
    ZqElement z = x;
    for (unsigned i = 0; i < ctx.a; ++i) z.c[i] = (z.c[i] + y.c[i]) % ctx.pN;
    return z;
}

ZqElement zq_sub(const ZqContext& ctx, const ZqElement& x, const ZqElement& y) {
    ZqElement z = x;
    for (unsigned i = 0; i < ctx.a; ++i) z.c[i] = (z.c[i] + ctx.pN - y.c[i]) % ctx.pN;
    return z;
}

ZqElement zq_neg(const ZqContext& ctx, const ZqElement& x) { return zq_sub(ctx, zq_zero(ctx), x); }

ZqElement zq_mul(const ZqContext& ctx, const ZqElement& x, const ZqElement& y) {
    std::vector<std::uint64_t> c(2 * ctx.a - 1, 0);
    for (unsigned i = 0; i < ctx.a; ++i) {
        if (!x.c[i]) continue;
        for (unsigned j = 0; j < ctx.a; ++j)
            c[i + j] = (c[i + j] + mul_mod(x.c[i], y.c[j], ctx.pN)) % ctx.pN;
    }
    reduce_unramified(ctx, c);
    return ZqElement{std::move(c)};
}

ZqElement zq_scalar_mul(const ZqContext& ctx, std::uint64_t s, const ZqElement& x) {
    ZqElement z = x;
    s %= ctx.pN;
    for (unsigned i = 0; i < ctx.a; ++i) z.c[i] = mul_mod(z.c[i], s, ctx.pN);
    return z;
}

ZqElement zq_pow(const ZqContext& ctx, ZqElement x, std::uint64_t e) {
    ZqElement r = zq_one(ctx);
    while (e) {
        if (e & 1) r = zq_mul(ctx, r, x);
        x = zq_mul(ctx, x, x);
        e >>= 1;
    }
    return r;
}

unsigned zq_ord_p(const ZqContext& ctx, const ZqElement& x) {
    unsigned best = ctx.N;
    for (auto v : x.c) {
        if (!v) continue;
        unsigned k = 0;
        while (v % ctx.p == 0) {
            v /= ctx.p;
            ++k;
        }
        if (k < best) best = k;
    }
    return best;
}

ZqElement zq_inverse(const ZqContext& ctx, const ZqElement& x) {
    if (zq_ord_p(ctx, x) != 0) throw validation_error("zq_inverse: not a unit");
    FieldElement x0 = zq_reduce_mod_p(ctx, x);
    ZqElement y = zq_lift(ctx, fe_inv(ctx.field, x0));
    // Newton: y <- y (2 - x y), doubling p-adic accuracy each step.
    for (unsigned prec = 1; prec < ctx.N; prec *= 2) {
        ZqElement t = zq_sub(ctx, zq_from_int(ctx, 2), zq_mul(ctx, x, y));
        y = zq_mul(ctx, y, t);
    }
    if (!(zq_mul(ctx, x, y) == zq_one(ctx)))
        throw internal_check_error("zq_inverse: iteration failed to converge");
    return y;
}

ZqElement teichmuller(const ZqContext& ctx, const FieldElement& c) {
    ZqElement t = zq_lift(ctx, c);
    for (unsigned i = 0; i < ctx.N; ++i) {
        ZqElement next = zq_pow(ctx, t, ctx.q());
        if (next == t) break;
        t = next;
    }
    return t;
}

RamifiedElement ram_zero(const ZqContext& ctx) {
    return RamifiedElement{std::vector<ZqElement>(ctx.p - 1, zq_zero(ctx))};
}

RamifiedElement ram_one(const ZqContext& ctx) {
    RamifiedElement x = ram_zero(ctx);
    x.c[0] = zq_one(ctx);
    return x;
}

RamifiedElement ram_pi(const ZqContext& ctx) {
    RamifiedElement x = ram_zero(ctx);
    x.c[1] = zq_one(ctx);
    return x;
}

RamifiedElement ram_from_zq(const ZqContext& ctx, const ZqElement& v) {
    RamifiedElement x = ram_zero(ctx);
    x.c[0] = v;
    return x;
}

bool ram_is_zero(const RamifiedElement& x) {
    for (const auto& v : x.c)
        if (!zq_is_zero(v)) return false;
    return true;
}

RamifiedElement ram_add(const ZqContext& ctx, const RamifiedElement& x, const RamifiedElement& y) {
    RamifiedElement z = x;
    for (std::size_t i = 0; i < z.c.size(); ++i) z.c[i] = zq_add(ctx, z.c[i], y.c[i]);
    return z;
}

RamifiedElement ram_sub(const ZqContext& ctx, const RamifiedElement& x, const RamifiedElement& y) {
    RamifiedElement z = x;
    for (std::size_t i = 0; i < z.c.size(); ++i) z.c[i] = zq_sub(ctx, z.c[i], y.c[i]);
    return z;
}

RamifiedElement ram_mul(const ZqContext& ctx, const RamifiedElement& x, const RamifiedElement& y) {
    const unsigned deg = static_cast<unsigned>(ctx.p - 1);
    std::vector<ZqElement> raw(2 * deg - 1, zq_zero(ctx));
    for (unsigned i = 0; i < deg; ++i) {
        if (zq_is_zero(x.c[i])) continue;
        for (unsigned j = 0; j < deg; ++j) {
            if (zq_is_zero(y.c[j])) continue;
            raw[i + j] = zq_add(ctx, raw[i + j], zq_mul(ctx, x.c[i], y.c[j]));
        }
    }
    const auto& red = pi_reduction(ctx);
    RamifiedElement z = ram_zero(ctx);
    for (unsigned j = 0; j < deg; ++j) z.c[j] = raw[j];
    for (unsigned k = deg; k < 2 * deg - 1; ++k) {
        if (zq_is_zero(raw[k])) continue;
        const auto& rel = red[k - deg];
        for (unsigned j = 0; j < deg; ++j) {
            if (!rel[j]) continue;
            z.c[j] = zq_add(ctx, z.c[j], zq_scalar_mul(ctx, rel[j], raw[k]));
        }
    }
    return z;
}

RamifiedElement ram_scalar_mul(const ZqContext& ctx, const ZqElement& s,
                               const RamifiedElement& x) {
    RamifiedElement z = x;
    for (auto& v : z.c) v = zq_mul(ctx, s, v);
    return z;
}

RamifiedElement ram_int_mul(const ZqContext& ctx, std::uint64_t s, const RamifiedElement& x) {
    RamifiedElement z = x;
    for (auto& v : z.c) v = zq_scalar_mul(ctx, s, v);
    return z;
}

RamifiedElement zeta_p_power(const ZqContext& ctx, std::uint32_t e) {
    if (e >= ctx.p) throw validation_error("zeta_p_power: exponent must satisfy 0 <= e < p");
    // (1 + pi)^e, e < p, expanded binomially; only the top term of the
    // e = p-1 case reaches degree p-1 and needs the Phi_p reduction.
    RamifiedElement z = ram_zero(ctx);
    std::uint64_t binom = 1;
    for (std::uint32_t j = 0; j <= e; ++j) {
        if (j < ctx.p - 1)
            z.c[j] = zq_from_int(ctx, binom % ctx.pN);
        else {
            const auto& rel = pi_reduction(ctx)[0];  // pi^{p-1} row
            for (std::uint32_t i = 0; i + 1 < ctx.p; ++i)
                z.c[i] = zq_add(ctx, z.c[i],
                                zq_from_int(ctx, mul_mod(binom % ctx.pN, rel[i], ctx.pN)));
        }
        if (j < e) binom = binom * (e - j) / (j + 1);
    }
    return z;
}

PiValuation pi_valuation(const ZqContext& ctx, const RamifiedElement& x) {
    const long pm1 = static_cast<long>(ctx.p) - 1;
    long best = -1;
    for (std::size_t i = 0; i < x.c.size(); ++i) {
        if (zq_is_zero(x.c[i])) continue;
        long v = pm1 * static_cast<long>(zq_ord_p(ctx, x.c[i])) + static_cast<long>(i);
        if (best < 0 || v < best) best = v;
    }
    if (best < 0) return PiValuation{false, Rational(pm1 * static_cast<long>(ctx.N))};
    return PiValuation{true, Rational(best)};
}

RamifiedElement invert_unit(const ZqContext& ctx, const RamifiedElement& x) {
    PiValuation v = pi_valuation(ctx, x);
    if (!v.exact || v.value != 0) throw validation_error("invert_unit: not a unit");
    RamifiedElement y = ram_from_zq(ctx, zq_inverse(ctx, x.c[0]));
    RamifiedElement one = ram_one(ctx);
    unsigned cap = 2;
    while ((1u << cap) < (ctx.p - 1) * ctx.N + 1) ++cap;
    for (unsigned i = 0; i <= cap; ++i) {
        RamifiedElement err = ram_sub(ctx, one, ram_mul(ctx, x, y));
        if (ram_is_zero(err)) return y;
        y = ram_add(ctx, y, ram_mul(ctx, y, err));
    }
    if (!(ram_mul(ctx, x, y) == one))
        throw internal_check_error("invert_unit: iteration failed to converge");
    return y;
}

}  // namespace twistsum
