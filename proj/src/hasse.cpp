#include "twistsum/hasse.hpp"

#include <map>

#include "twistsum/errors.hpp"

namespace twistsum {

namespace {

constexpr std::size_t kTableBound = 5000;

int permutation_sign(const std::vector<unsigned>& tau) {
    int inv = 0;
    for (std::size_t i = 0; i < tau.size(); ++i)
        for (std::size_t j = i + 1; j < tau.size(); ++j)
            if (tau[i] > tau[j]) ++inv;
    return (inv % 2 == 0) ? 1 : -1;
}

std::vector<long> alphas(const TwistContext& ctx, unsigned i, unsigned n) {
    if (i < 1 || i > ctx.b) throw validation_error("hasse: i must satisfy 1 <= i <= b");
    if (n < 1 || n > ctx.d - 1) throw validation_error("hasse: n must satisfy 1 <= n <= d-1");
    std::vector<long> a(n);
    const long u = ctx.digits[ctx.b - i];
    for (unsigned l = 0; l < n; ++l)
        a[l] = static_cast<long>((static_cast<std::uint64_t>(ctx.p) * l + u) % ctx.d);
    return a;
}

const Rational& table_at(const ArtinHasseTable& table, long idx) {
    if (idx < 0) throw internal_check_error("hasse: negative series index");
    if (static_cast<std::size_t>(idx) >= table.coeffs.size())
        throw validation_error("hasse: Artin-Hasse table too short");
    return table.coeffs[static_cast<std::size_t>(idx)];
}

}  // namespace

ArtinHasseTable artin_hasse(std::uint64_t p, std::size_t M) {
    if (!is_prime(p)) throw validation_error("artin_hasse: p must be prime");
    if (M > kTableBound) throw validation_error("artin_hasse: M exceeds desk bound");
    ArtinHasseTable t;
    t.p = p;
    t.coeffs.assign(M + 1, Rational(0));
    t.coeffs[0] = 1;
    // From E' = (sum_i x^{p^i - 1}) E: n lambda_n = sum_{p^i <= n} lambda_{n - p^i}.
    for (std::size_t n = 1; n <= M; ++n) {
        Rational s(0);
        for (std::uint64_t pi = 1; pi <= n; pi *= p) s += t.coeffs[n - pi];
        Rational lam = s / Rational(static_cast<long>(n));
        lam.canonicalize();
        t.coeffs[n] = lam;
    }
    return t;
}

std::vector<std::vector<unsigned>> s_ni_permutations(const TwistContext& ctx, unsigned i,
                                                     unsigned n) {
    auto alpha = alphas(ctx, i, n);
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> tau(n);
    std::vector<bool> used(n, false);
    auto rec = [&](auto&& self, unsigned l) -> void {
        if (l == n) {
            out.push_back(tau);
            return;
        }
        for (unsigned v = 0; v < n; ++v) {
            if (used[v] || static_cast<long>(v) > alpha[l]) continue;
            used[v] = true;
            tau[l] = v;
            self(self, l + 1);
            used[v] = false;
        }
    };
    rec(rec, 0);
    return out;
}

HasseComponent hasse_component(const TwistContext& ctx, const ArtinHasseTable& table,
                               unsigned i, unsigned n) {
    auto alpha = alphas(ctx, i, n);
    const long u = ctx.digits[ctx.b - i];
    const long p = static_cast<long>(ctx.p);
    const long d = static_cast<long>(ctx.d);

    // Permutation-sum form: collect the polynomial in y term by term.
    std::map<long, Rational> poly;
    for (const auto& tau : s_ni_permutations(ctx, i, n)) {
        Rational term(permutation_sign(tau));
        long exponent = 0;
        for (unsigned l = 0; l < n; ++l) {
            long m = p * static_cast<long>(l) + u - static_cast<long>(tau[l]);
            if (m < 0) throw internal_check_error("hasse_component: negative monomial index");
            term *= table_at(table, m / d) * table_at(table, m % d);
            exponent += m % d;
        }
        term.canonicalize();
        poly[exponent] += term;
    }
    for (auto it = poly.begin(); it != poly.end();)
        it = (it->second == 0) ? poly.erase(it) : std::next(it);
    if (poly.size() != 1)
        throw internal_check_error("hasse_component: permutation sum is not a monomial");

    // Closed monomial form.
    long exponent = 0;
    for (unsigned l = 0; l < n; ++l) exponent += alpha[l] - static_cast<long>(l);
    Rational coeff(0);
    for (const auto& tau : s_ni_permutations(ctx, i, n)) {
        Rational term(permutation_sign(tau));
        for (unsigned l = 0; l < n; ++l) {
            long m = p * static_cast<long>(l) + u;
            term *= table_at(table, m / d) * table_at(table, alpha[l] - static_cast<long>(tau[l]));
        }
        coeff += term;
    }
    coeff.canonicalize();

    if (poly.begin()->first != exponent || poly.begin()->second != coeff)
        throw internal_check_error("hasse_component: the two forms disagree");

    HasseComponent out;
    out.n = n;
    out.i = i;
    out.exponent = exponent;
    out.coefficient = coeff;
    out.alpha = alpha;
    return out;
}

std::uint64_t vandermonde_certificate(const TwistContext& ctx, const ArtinHasseTable& table,
                                      unsigned i, unsigned n) {
    auto comp = hasse_component(ctx, table, i, n);
    const auto& alpha = comp.alpha;
    const std::uint64_t p = ctx.p;

    std::uint64_t prod = 1;  // prod_{l<j} (alpha_l - alpha_j) mod p
    for (unsigned l = 0; l < n; ++l)
        for (unsigned j = l + 1; j < n; ++j) {
            long dlt = alpha[l] - alpha[j];
            std::uint64_t r = static_cast<std::uint64_t>(((dlt % static_cast<long>(p)) +
                                                          static_cast<long>(p)) %
                                                         static_cast<long>(p));
            prod = mul_mod(prod, r, p);
        }
    if (prod == 0)
        throw internal_check_error("vandermonde_certificate: alphas collide mod p");

    // u_{n,i} = prod_l floor((pl+u)/d)! alpha_l! mod p.
    const long u = ctx.digits[ctx.b - i];
    std::uint64_t uni = 1;
    auto fact_mod = [&](long m) {
        std::uint64_t f = 1;
        for (long k = 2; k <= m; ++k) f = mul_mod(f, static_cast<std::uint64_t>(k) % p, p);
        return f;
    };
    for (unsigned l = 0; l < n; ++l) {
        long m = static_cast<long>(p) * static_cast<long>(l) + u;
        uni = mul_mod(uni, fact_mod(m / static_cast<long>(ctx.d)), p);
        uni = mul_mod(uni, fact_mod(alpha[l]), p);
    }

    std::uint64_t f_mod = rational_mod(comp.coefficient, p);
    std::uint64_t lhs = mul_mod(uni, f_mod, p);
    // u_{n,i} f equals the Vandermonde determinant det(alpha_l^k), i.e. the
    // product with factors (alpha_j - alpha_l); flip the global sign.
    std::uint64_t expected = ((n * (n - 1) / 2) % 2 == 0) ? prod : (p - prod) % p;
    if (lhs != expected)
        throw internal_check_error("vandermonde_certificate: certificate mismatch");
    return prod;
}

HasseMonomial hasse_polynomial(const TwistContext& ctx, const ArtinHasseTable& table, unsigned n) {
    HasseMonomial mono;
    mono.exponent = 0;
    mono.coefficient = 1;
    for (unsigned i = 1; i <= ctx.b; ++i) {
        auto comp = hasse_component(ctx, table, i, n);
        mono.exponent += comp.exponent;
        mono.coefficient = mul_mod(mono.coefficient, rational_mod(comp.coefficient, ctx.p), ctx.p);
    }
    if (mono.coefficient == 0)
        throw internal_check_error(
            "hasse_polynomial: H_{n,u} vanishes mod p (counterexample finding)");
    return mono;
}

FieldElement hasse_value_at_lambda(const TwistContext& ctx, const ArtinHasseTable& table,
                                   unsigned n, const FieldDesc& F, const FieldElement& lambda) {
    if (fe_is_zero(lambda)) throw validation_error("hasse_value_at_lambda: lambda must be nonzero");
    auto mono = hasse_polynomial(ctx, table, n);
    FieldElement val = fe_pow(F, lambda, static_cast<std::uint64_t>(mono.exponent));
    return fe_mul(F, val, fe_from_int(F, mono.coefficient));
}

}  // namespace twistsum
