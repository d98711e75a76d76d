#pragma once

#include <cstdint>
#include <vector>

#include "twistsum/padic.hpp"
#include "twistsum/polygon.hpp"
#include "twistsum/twist.hpp"

namespace twistsum {

// One L-function instance: f(x) = x^d + lambda x over F_q, character
// omega^{-u} on F_q^x, sums needed for k = 1..k_max.
struct SumSpec {
    TwistContext ctx;
    FieldElement lambda;   // element of F_q, nonzero
    unsigned k_max = 0;    // = d + 1 (d coefficients plus the degree check)
    unsigned N = 0;        // coefficient precision, default d + 6
};

SumSpec make_sum_spec(const TwistContext& ctx, const FieldElement& lambda, unsigned N = 0);

// S(k) = sum over x in F_{q^k}^x of omega(Norm x)^{-u} zeta_p^{Tr(x^d + lambda x)},
// an element of Z_q[pi]. Brute force over the unit group.
RamifiedElement exp_sum(const ZqContext& zq, const SumSpec& spec, unsigned k);

struct LFunction {
    std::vector<RamifiedElement> coeffs;  // c_0 .. c_d, c_0 = 1
    RamifiedElement overflow_check;       // c_{d+1}: should vanish mod p^N
};

// exp(sum_k S_k s^k / k) truncated at degree d+1 via the recurrence
// n c_n = sum_{k<=n} S_k c_{n-k}.
LFunction lfun_from_sums(const ZqContext& zq, const SumSpec& spec,
                         const std::vector<RamifiedElement>& sums);

// Lower hull of (n, ord_pi c_n) for n = 0..d. Inexact valuations are
// tolerated only strictly above the hull.
NewtonPolygon lfun_newton_polygon(const ZqContext& zq, const SumSpec& spec, const LFunction& L);

struct VerdictReport {
    bool hypothesis_ok = false;     // p > 2(d-1)^2 + 1
    bool polygons_equal = false;    // NP(L) == a * arithmetic polygon on [0, d]
    bool degree_certified = false;  // c_{d+1} vanishes mod p^N
    bool hodge_contact_ok = false;  // P >= (p-1)H with contact at 0 and d
    bool mass_ok = false;           // sum of slopes = a P(d)
    NewtonPolygon actual;
    NewtonPolygon expected;
    std::vector<long> mismatches;   // integer n where the polygons differ
};

// Full check that NP(L) = a * P for one (p, a, d, u, lambda).
VerdictReport verify_polygon_identity(const SumSpec& spec);

}  // namespace twistsum
