#pragma once

#include <cstdint>
#include <vector>

#include "twistsum/field.hpp"
#include "twistsum/rational.hpp"
#include "twistsum/twist.hpp"

namespace twistsum {

// Coefficients of exp(sum_{i} x^{p^i}/p^i) as exact rationals. Every
// coefficient is p-integral and equals 1/n! below degree p.
struct ArtinHasseTable {
    std::uint64_t p = 0;
    std::vector<Rational> coeffs;  // lambda_0 .. lambda_M
};

ArtinHasseTable artin_hasse(std::uint64_t p, std::size_t M);

// All permutations tau of {0..n-1} with tau(l) <= alpha_l where
// alpha_l = (p l + u_{b-i}) mod d.
std::vector<std::vector<unsigned>> s_ni_permutations(const TwistContext& ctx, unsigned i,
                                                     unsigned n);

// One factor of the twisted Hasse polynomial: a monomial
// coefficient * y^exponent. Computed by both the permutation-sum form and
// the closed monomial form, which must agree.
struct HasseComponent {
    unsigned n = 0;
    unsigned i = 0;
    long exponent = 0;          // = sum_l (alpha_l - l)
    Rational coefficient;       // f^{(i)}_{n,p}, p-integral
    std::vector<long> alpha;    // alpha_0 .. alpha_{n-1}
};

HasseComponent hasse_component(const TwistContext& ctx, const ArtinHasseTable& table,
                               unsigned i, unsigned n);

// Vandermonde certificate prod_{l<j}(alpha_l - alpha_j) mod p. Asserts the
// product is nonzero mod p and that u_{n,i} f^{(i)}_{n,p} matches it up to
// the global sign (-1)^{n(n-1)/2}.
std::uint64_t vandermonde_certificate(const TwistContext& ctx, const ArtinHasseTable& table,
                                      unsigned i, unsigned n);

// Product of the b components, reduced mod p. A single monomial; asserts
// the coefficient is nonzero mod p.
struct HasseMonomial {
    long exponent = 0;
    std::uint64_t coefficient = 0;  // mod p, nonzero
};

HasseMonomial hasse_polynomial(const TwistContext& ctx, const ArtinHasseTable& table, unsigned n);

// H_{n,u} evaluated at the Teichmueller lift of lambda, reduced mod p,
// i.e. coefficient * lambda^exponent in F_q.
FieldElement hasse_value_at_lambda(const TwistContext& ctx, const ArtinHasseTable& table,
                                   unsigned n, const FieldDesc& F, const FieldElement& lambda);

}  // namespace twistsum
