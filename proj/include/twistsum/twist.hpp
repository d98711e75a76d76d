#pragma once

#include <cstdint>
#include <vector>

#include "twistsum/polygon.hpp"
#include "twistsum/rational.hpp"

namespace twistsum {

// The tuple (p, a, q, d, u) together with the derived base-p digits of u,
// the digit period b and the residues s_i = p^i u mod (q-1).
struct TwistContext {
    std::uint64_t p = 0;
    unsigned a = 0;
    std::uint64_t q = 0;  // p^a
    std::uint64_t d = 0;
    std::uint64_t u = 0;
    std::vector<std::uint32_t> digits;  // u_0..u_{a-1}, base-p, low first
    unsigned b = 0;                     // least b > 0 with p^b u = u mod (q-1)
    std::vector<std::uint64_t> s;       // s_0..s_{b-1}

    // Sum of the first b digits, used all over the polygon formulas.
    std::uint64_t digit_sum_b() const;
    bool hypothesis_ok() const { return p > 2 * (d - 1) * (d - 1) + 1; }
};

TwistContext make_context(std::uint64_t p, unsigned a, std::uint64_t d, std::uint64_t u);

// The slope function of the arithmetic polygon:
//   omega(n) = [(p-1)n + (1/b) sum u_i]/d
//              + (d-1) (1/b) sum_i ({(pn+u_i)/d} - {n/d}).
Rational arith_slope(const TwistContext& ctx, std::uint64_t n);

// Arithmetic polygon: vertices at 0..n_max, slope omega(n) on [n, n+1].
NewtonPolygon arith_polygon(const TwistContext& ctx, std::uint64_t n_max);

// Infinite twisted Hodge polygon of [0, d]: slope
// (sum_{i<b} u_i)/(b d (p-1)) + l/d on [l, l+1].
NewtonPolygon hodge_polygon(const TwistContext& ctx, std::uint64_t n_max);

// First `count` slopes of the arithmetic polygon extended to level m:
// the multiset {j(p^m - p^{m-1}) + omega(i) : 0 <= i < p^{m-1} d, j >= 0},
// sorted nondecreasing.
std::vector<Rational> level_slopes(const TwistContext& ctx, unsigned m, std::size_t count);

}  // namespace twistsum
