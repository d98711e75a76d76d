#pragma once

#include <cstdint>
#include <vector>

#include "twistsum/rational.hpp"

namespace twistsum {

// F_{p^n} as F_p[t]/(modulus), modulus the deterministic first monic
// irreducible of degree n (coefficient vectors compared from the t^{n-1}
// coefficient down to the constant term).
struct FieldDesc {
    std::uint64_t p = 0;
    unsigned n = 0;
    std::vector<std::uint32_t> modulus;  // size n+1, monic, low-degree first
    std::uint64_t size = 0;              // p^n
};

// Coordinates in the power basis 1, t, ..., t^{n-1}; length exactly n.
using FieldElement = std::vector<std::uint32_t>;

FieldDesc build_field(std::uint64_t p, unsigned n);

FieldElement fe_zero(const FieldDesc& F);
FieldElement fe_one(const FieldDesc& F);
FieldElement fe_from_int(const FieldDesc& F, std::uint64_t c);
bool fe_is_zero(const FieldElement& x);

FieldElement fe_add(const FieldDesc& F, const FieldElement& x, const FieldElement& y);
FieldElement fe_sub(const FieldDesc& F, const FieldElement& x, const FieldElement& y);
FieldElement fe_mul(const FieldDesc& F, const FieldElement& x, const FieldElement& y);
FieldElement fe_pow(const FieldDesc& F, FieldElement x, std::uint64_t e);
FieldElement fe_inv(const FieldDesc& F, const FieldElement& x);

// Base-p counter encoding: sum coeffs[i] p^i. Enumeration order everywhere.
std::uint64_t fe_encode(const FieldDesc& F, const FieldElement& x);
FieldElement fe_decode(const FieldDesc& F, std::uint64_t code);

// First element in enumeration order of multiplicative order p^n - 1.
FieldElement generator(const FieldDesc& F);

// Absolute trace sum_{i<n} x^{p^i}, landing in F_p.
std::uint32_t trace_to_prime(const FieldDesc& F, const FieldElement& x);

// Precomputed power/dlog tables for the whole unit group (desk scale only).
struct FieldData {
    FieldDesc desc;
    FieldElement g;                       // canonical generator
    std::vector<std::uint32_t> powers;    // flattened: powers[e*n..] = g^e, e in [0, size-1)
    std::vector<std::int64_t> dlog;       // by encoding; -1 for 0
    std::vector<std::uint32_t> basis_traces;  // trace of t^i, i < n

    FieldElement power(std::uint64_t e) const;
};

// Shared cache; guard p^n <= 10^7.
const FieldData& get_field_data(std::uint64_t p, unsigned n);

// dlog of x with respect to g; throws on x = 0.
std::uint64_t dlog(const FieldData& D, const FieldElement& x);

// dlog of Norm_{F_{q^k}/F_q}(x) with respect to g := G^{(q^k-1)/(q-1)},
// given e = dlog of x with respect to G. Equals e mod (q-1).
std::uint64_t norm_exponent(std::uint64_t q, unsigned k, std::uint64_t e);

// Image of the power-basis root of `sub` under the first-root embedding of
// sub into big (requires sub.n | big.n, same p).
FieldElement embed_root(const FieldDesc& sub, const FieldDesc& big);

// Apply the embedding determined by `root` to an element of sub.
FieldElement embed(const FieldDesc& sub, const FieldDesc& big, const FieldElement& root,
                   const FieldElement& x);

// All nonzero elements in enumeration order.
std::vector<FieldElement> enumerate_units(const FieldDesc& F);

}  // namespace twistsum
