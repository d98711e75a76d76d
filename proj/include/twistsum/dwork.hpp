#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "twistsum/hasse.hpp"
#include "twistsum/polygon.hpp"
#include "twistsum/twist.hpp"

namespace twistsum {

// Truncated element of Z_p[[pi]]: coefficients mod p^N for pi^0..pi^{E-1}.
// Integer pi-powers suffice here; the fractional normalization of the
// operator's natural basis is a diagonal conjugation and cannot change any
// principal minor.
struct PiSeries {
    std::vector<std::uint64_t> c;  // length E
    bool operator==(const PiSeries&) const = default;
};

// Shared truncation parameters for a q = p Dwork computation.
struct DworkParams {
    std::uint64_t p = 0;
    std::uint64_t d = 0;
    std::uint64_t u = 0;
    unsigned E = 0;  // pi-exponent cutoff
    unsigned N = 0;  // coefficient precision
    std::uint64_t pN = 0;
    std::uint64_t lambda_hat = 0;            // Teichmueller lift of lambda mod p^N
    std::vector<std::uint64_t> lambda_mod;   // Artin-Hasse coefficients mod p^N
};

// Defaults from the arithmetic polygon:
//   J = max(3d, ceil(pd/(p-1) (P(d-1)+2))), E = P(d-1)+d+2, N = d+6.
struct DworkTruncation {
    unsigned J = 0;
    unsigned E = 0;
    unsigned N = 0;
};
DworkTruncation default_truncation(const TwistContext& ctx);

// table_degree: highest Artin-Hasse index needed (p(J-1)+u for a J x J matrix).
DworkParams make_dwork_params(const TwistContext& ctx, std::uint64_t lambda, unsigned E,
                              unsigned N, std::size_t table_degree);

PiSeries ps_zero(const DworkParams& P);
PiSeries ps_one(const DworkParams& P);
PiSeries ps_add(const DworkParams& P, const PiSeries& x, const PiSeries& y);
PiSeries ps_sub(const DworkParams& P, const PiSeries& x, const PiSeries& y);
PiSeries ps_mul(const DworkParams& P, const PiSeries& x, const PiSeries& y);
PiSeries ps_neg(const DworkParams& P, const PiSeries& x);

// ord_pi with ord(pi) = 1, ord(p) = p-1; a marker (exact=false) when the
// truncations hide the leading term.
struct PiOrder {
    bool exact = true;
    long value = 0;  // lower bound when !exact
};
PiOrder ps_order(const DworkParams& P, const PiSeries& x);

// gamma_m = sum_{di+j=m} pi^{i+j} lambda_i lambda_j lambdahat^j.
PiSeries gamma_series(const DworkParams& P, std::uint64_t m);

// Expected leading order floor(m/d) + (m mod d) and the lambda-indices of
// the leading product (index bookkeeping only, no series needed).
struct GammaLeading {
    long order = 0;
    std::uint64_t lambda_index_i = 0;  // floor(m/d)
    std::uint64_t lambda_index_j = 0;  // m mod d, also the lambdahat power
};
GammaLeading gamma_leading(const TwistContext& ctx, std::uint64_t m);

// J x J truncation of the operator matrix, entry(l, j) = gamma_{pl+u-j}.
struct DworkMatrix {
    unsigned J = 0;
    DworkParams params;
    std::vector<PiSeries> entries;  // row-major
    const PiSeries& at(unsigned l, unsigned j) const { return entries[l * J + j]; }
};

DworkMatrix build_matrix(const TwistContext& ctx, std::uint64_t lambda, unsigned J, unsigned E,
                         unsigned N);

// C_0..C_{n_max}: sums of principal n x n minors of M, i.e. the
// coefficients of det(1 - M s) up to sign, via the division-free Berkowitz
// recursion truncated at degree n_max.
std::vector<PiSeries> fredholm_coefficients(const DworkMatrix& M, unsigned n_max);

struct DworkRow {
    unsigned n = 0;
    long expected_order = 0;          // P(n)
    PiOrder order;                    // ord_pi(C_n)
    bool order_matches = false;
    bool stable = false;              // unchanged under (J+5, E+5, N+2)
    std::uint64_t leading_mod_p = 0;  // coefficient of pi^{P(n)} mod p
    std::uint64_t hasse_mod_p = 0;    // H_{n,u}(lambdahat) mod p
    bool hasse_matches = false;       // up to sign
};

struct DworkVerdict {
    bool hypothesis_ok = false;
    bool all_orders_match = false;
    bool all_hasse_match = false;
    std::vector<DworkRow> rows;  // n = 1..d-1
};

// Checks ord_pi(C_n) = P(n) and leading coefficient = +-H_{n,u} mod p for
// n = 1..d-1, with an enlargement-stability certificate.
DworkVerdict verify_fredholm_orders(const TwistContext& ctx, std::uint64_t lambda, unsigned J,
                                    unsigned E, unsigned N);

// Lower hull of (n, ord_pi(C_n)) for n <= n_max (n = d included only when
// its order is exact and enlargement-stable).
NewtonPolygon c_function_polygon(const TwistContext& ctx, std::uint64_t lambda, unsigned n_max,
                                 unsigned J, unsigned E, unsigned N);

}  // namespace twistsum
