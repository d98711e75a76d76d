#pragma once

#include <cstdint>
#include <vector>

#include "twistsum/field.hpp"
#include "twistsum/rational.hpp"

namespace twistsum {

// The unramified ring Z_q mod p^N, built on the same modulus as the
// finite-field layer. Elements are coordinate vectors in the power basis
// with entries in Z/p^N.
struct ZqContext {
    std::uint64_t p = 0;
    unsigned a = 0;
    unsigned N = 0;
    std::uint64_t pN = 0;                 // p^N, must fit 62 bits
    std::vector<std::uint64_t> modulus;   // lift of the field modulus, size a+1
    FieldDesc field;
    std::uint64_t q() const { return field.size; }
};

// Constructing the two layers independently is not offered: the context is
// always derived from a FieldDesc so the moduli can never drift apart.
ZqContext make_zq_context(const FieldDesc& F, unsigned N);

struct ZqElement {
    std::vector<std::uint64_t> c;  // length a, entries mod p^N
    bool operator==(const ZqElement&) const = default;
};

ZqElement zq_zero(const ZqContext& ctx);
ZqElement zq_one(const ZqContext& ctx);
ZqElement zq_from_int(const ZqContext& ctx, std::uint64_t v);
ZqElement zq_lift(const ZqContext& ctx, const FieldElement& x);
FieldElement zq_reduce_mod_p(const ZqContext& ctx, const ZqElement& x);
bool zq_is_zero(const ZqElement& x);

ZqElement zq_add(const ZqContext& ctx, const ZqElement& x, const ZqElement& y);
ZqElement zq_sub(const ZqContext& ctx, const ZqElement& x, const ZqElement& y);
ZqElement zq_neg(const ZqContext& ctx, const ZqElement& x);
ZqElement zq_mul(const ZqContext& ctx, const ZqElement& x, const ZqElement& y);
ZqElement zq_scalar_mul(const ZqContext& ctx, std::uint64_t s, const ZqElement& x);
ZqElement zq_pow(const ZqContext& ctx, ZqElement x, std::uint64_t e);

// Largest k <= N with p^k dividing every coordinate.
unsigned zq_ord_p(const ZqContext& ctx, const ZqElement& x);

// Hensel-lifted inverse of a unit.
ZqElement zq_inverse(const ZqContext& ctx, const ZqElement& x);

// The unique lift t of c with t^q = t, by Frobenius iteration.
ZqElement teichmuller(const ZqContext& ctx, const FieldElement& c);

// Z_q[pi] with pi = zeta_p - 1: coefficient vectors of length p-1,
// multiplication reduced modulo Phi_p(1 + pi).
struct RamifiedElement {
    std::vector<ZqElement> c;  // size p-1
    bool operator==(const RamifiedElement&) const = default;
};

RamifiedElement ram_zero(const ZqContext& ctx);
RamifiedElement ram_one(const ZqContext& ctx);
RamifiedElement ram_pi(const ZqContext& ctx);
RamifiedElement ram_from_zq(const ZqContext& ctx, const ZqElement& x);
bool ram_is_zero(const RamifiedElement& x);

RamifiedElement ram_add(const ZqContext& ctx, const RamifiedElement& x, const RamifiedElement& y);
RamifiedElement ram_sub(const ZqContext& ctx, const RamifiedElement& x, const RamifiedElement& y);
RamifiedElement ram_mul(const ZqContext& ctx, const RamifiedElement& x, const RamifiedElement& y);
RamifiedElement ram_scalar_mul(const ZqContext& ctx, const ZqElement& s, const RamifiedElement& x);
RamifiedElement ram_int_mul(const ZqContext& ctx, std::uint64_t s, const RamifiedElement& x);

// (1 + pi)^e, i.e. zeta_p^e, for 0 <= e < p.
RamifiedElement zeta_p_power(const ZqContext& ctx, std::uint32_t e);

// pi-adic valuation normalized so ord(pi) = 1, ord(p) = p-1. When the
// element vanishes mod p^N the value is only a lower bound (exact=false,
// value = (p-1)N).
struct PiValuation {
    bool exact = true;
    Rational value;
};

PiValuation pi_valuation(const ZqContext& ctx, const RamifiedElement& x);

// Inverse of an element of valuation 0.
RamifiedElement invert_unit(const ZqContext& ctx, const RamifiedElement& x);

}  // namespace twistsum
