#include "twistsum/dwork.hpp"

#include <algorithm>

#include "twistsum/errors.hpp"

namespace twistsum {

namespace {

long integer_polygon_value(const TwistContext& ctx, const NewtonPolygon& P, std::uint64_t n) {
    Rational v = P.value_at(Rational(static_cast<long>(n)));
    if (v.get_den() != 1)
        throw internal_check_error("dwork: arithmetic polygon value not an integer at a = 1");
    (void)ctx;
    return static_cast<long>(v.get_num().get_si());
}

std::uint64_t teichmuller_scalar(std::uint64_t lambda, std::uint64_t p, std::uint64_t pN,
                                 unsigned N) {
    std::uint64_t t = lambda % pN;
    for (unsigned i = 0; i < N + 1; ++i) {
        std::uint64_t next = pow_mod(t, p, pN);
        if (next == t) break;
        t = next;
    }
    return t;
}

}  // namespace

DworkTruncation default_truncation(const TwistContext& ctx) {
    NewtonPolygon P = arith_polygon(ctx, ctx.d);
    long pd1 = integer_polygon_value(ctx, P, ctx.d - 1);
    DworkTruncation t;
    // ceil(pd/(p-1) * (P(d-1)+2))
    Rational j = Rational(static_cast<long>(ctx.p * ctx.d), static_cast<long>(ctx.p - 1)) *
                 Rational(pd1 + 2);
    j.canonicalize();
    long jc = static_cast<long>(floor_rational(j).get_si());
    if (Rational(jc) != j) ++jc;
    t.J = static_cast<unsigned>(std::max<long>(3 * static_cast<long>(ctx.d), jc));
    t.E = static_cast<unsigned>(pd1 + static_cast<long>(ctx.d) + 2);
    t.N = static_cast<unsigned>(ctx.d + 6);
    return t;
}

DworkParams make_dwork_params(const TwistContext& ctx, std::uint64_t lambda, unsigned E,
                              unsigned N, std::size_t table_degree) {
    if (ctx.a != 1)
        throw validation_error("dwork: only q = p (a = 1) is supported by the operator module");
    if (lambda == 0 || lambda >= ctx.p)
        throw validation_error("dwork: lambda must be a nonzero residue mod p");
    if (E < 1 || N < 1) throw validation_error("dwork: E and N must be positive");
    DworkParams P;
    P.p = ctx.p;
    P.d = ctx.d;
    P.u = ctx.u;
    P.E = E;
    P.N = N;
    P.pN = 1;
    for (unsigned i = 0; i < N; ++i) {
        if (P.pN > (std::uint64_t(1) << 62) / ctx.p)
            throw validation_error("dwork: p^N exceeds 62 bits");
        P.pN *= ctx.p;
    }
    P.lambda_hat = teichmuller_scalar(lambda, ctx.p, P.pN, N);
    ArtinHasseTable table = artin_hasse(ctx.p, table_degree);
    P.lambda_mod.reserve(table.coeffs.size());
    for (const auto& r : table.coeffs) P.lambda_mod.push_back(rational_mod(r, P.pN));
    return P;
}

PiSeries ps_zero(const DworkParams& P) { return PiSeries{std::vector<std::uint64_t>(P.E, 0)}; }

PiSeries ps_one(const DworkParams& P) {
    PiSeries x = ps_zero(P);
    x.c[0] = 1 % P.pN;
    return x;
}

PiSeries ps_add(const DworkParams& P, const PiSeries& x, const PiSeries& y) {
    PiSeries z = x;
    for (unsigned e = 0; e < P.E; ++e) z.c[e] = (z.c[e] + y.c[e]) % P.pN;
    return z;
}

PiSeries ps_sub(const DworkParams& P, const PiSeries& x, const PiSeries& y) {
    PiSeries z = x;
    for (unsigned e = 0; e < P.E; ++e) z.c[e] = (z.c[e] + P.pN - y.c[e]) % P.pN;
    return z;
}

PiSeries ps_neg(const DworkParams& P, const PiSeries& x) { return ps_sub(P, ps_zero(P), x); }

PiSeries ps_mul(const DworkParams& P, const PiSeries& x, const PiSeries& y) {
    PiSeries z = ps_zero(P);
    for (unsigned i = 0; i < P.E; ++i) {
        if (!x.c[i]) continue;
        for (unsigned j = 0; j + i < P.E; ++j) {
            if (!y.c[j]) continue;
            z.c[i + j] = (z.c[i + j] + mul_mod(x.c[i], y.c[j], P.pN)) % P.pN;
        }
    }
    return z;
}

PiOrder ps_order(const DworkParams& P, const PiSeries& x) {
    const long pm1 = static_cast<long>(P.p) - 1;
    long bound = P.E;
    long best = -1;
    for (unsigned e = 0; e < P.E; ++e) {
        if (!x.c[e]) {
            bound = std::min(bound, static_cast<long>(e) + pm1 * static_cast<long>(P.N));
            continue;
        }
        std::uint64_t v = x.c[e];
        long k = 0;
        while (v % P.p == 0) {
            v /= P.p;
            ++k;
        }
        long ord = static_cast<long>(e) + pm1 * k;
        if (best < 0 || ord < best) best = ord;
    }
    if (best >= 0 && best < bound) return PiOrder{true, best};
    return PiOrder{false, bound};
}

PiSeries gamma_series(const DworkParams& P, std::uint64_t m) {
    PiSeries g = ps_zero(P);
    for (std::uint64_t i = 0; i * P.d <= m; ++i) {
        std::uint64_t j = m - i * P.d;
        std::uint64_t e = i + j;
        if (e >= P.E) continue;
        if (std::max(i, j) >= P.lambda_mod.size())
            throw validation_error("gamma_series: Artin-Hasse table too short");
        std::uint64_t coeff = mul_mod(P.lambda_mod[i], P.lambda_mod[j], P.pN);
        coeff = mul_mod(coeff, pow_mod(P.lambda_hat, j, P.pN), P.pN);
        g.c[e] = (g.c[e] + coeff) % P.pN;
    }
    return g;
}

GammaLeading gamma_leading(const TwistContext& ctx, std::uint64_t m) {
    GammaLeading g;
    g.lambda_index_i = m / ctx.d;
    g.lambda_index_j = m % ctx.d;
    g.order = static_cast<long>(g.lambda_index_i + g.lambda_index_j);
    return g;
}

DworkMatrix build_matrix(const TwistContext& ctx, std::uint64_t lambda, unsigned J, unsigned E,
                         unsigned N) {
    if (J < 1) throw validation_error("build_matrix: J must be positive");
    DworkMatrix M;
    M.J = J;
    M.params = make_dwork_params(ctx, lambda, E, N,
                                 static_cast<std::size_t>(ctx.p) * (J - 1) + ctx.u + 1);
    M.entries.assign(static_cast<std::size_t>(J) * J, ps_zero(M.params));
    for (unsigned l = 0; l < J; ++l)
        for (unsigned j = 0; j < J; ++j) {
            long m = static_cast<long>(ctx.p) * l + static_cast<long>(ctx.u) - static_cast<long>(j);
            if (m < 0) continue;  // gamma of negative index is 0
            M.entries[static_cast<std::size_t>(l) * J + j] =
                gamma_series(M.params, static_cast<std::uint64_t>(m));
        }
    return M;
}

namespace {

// v <- A_m v, where A_m is the leading m x m submatrix.
std::vector<PiSeries> leading_matvec(const DworkMatrix& M, unsigned m,
                                     const std::vector<PiSeries>& v) {
    std::vector<PiSeries> out(m, ps_zero(M.params));
    for (unsigned r = 0; r < m; ++r)
        for (unsigned c = 0; c < m; ++c) {
            out[r] = ps_add(M.params, out[r], ps_mul(M.params, M.at(r, c), v[c]));
        }
    return out;
}

}  // namespace

std::vector<PiSeries> fredholm_coefficients(const DworkMatrix& M, unsigned n_max) {
    if (n_max > M.J) throw validation_error("fredholm_coefficients: n_max exceeds J");
    const DworkParams& P = M.params;
    // Berkowitz recursion on leading principal submatrices, with the
    // characteristic polynomial truncated to its top n_max+1 coefficients.
    // pol[k] = coefficient of s^{i-k} in det(sI - A_i).
    std::vector<PiSeries> pol{ps_one(P)};
    for (unsigned i = 1; i <= M.J; ++i) {
        const unsigned m = i - 1;
        const unsigned K = std::min(i, n_max);  // highest Toeplitz index used
        std::vector<PiSeries> t(K + 1, ps_zero(P));
        t[0] = ps_one(P);
        if (K >= 1) t[1] = ps_neg(P, M.at(i - 1, i - 1));
        if (K >= 2) {
            std::vector<PiSeries> v(m, ps_zero(P));
            for (unsigned r = 0; r < m; ++r) v[r] = M.at(r, i - 1);  // column
            for (unsigned k = 2; k <= K; ++k) {
                if (k > 2) v = leading_matvec(M, m, v);
                PiSeries dot = ps_zero(P);
                for (unsigned c = 0; c < m; ++c)
                    dot = ps_add(P, dot, ps_mul(P, M.at(i - 1, c), v[c]));
                t[k] = ps_neg(P, dot);
            }
        }
        const unsigned len = std::min(i, n_max) + 1;
        std::vector<PiSeries> next(len, ps_zero(P));
        for (unsigned j = 0; j < len; ++j)
            for (unsigned k = 0; k <= std::min<unsigned>(j, K); ++k) {
                if (j - k >= pol.size()) continue;
                next[j] = ps_add(P, next[j], ps_mul(P, t[k], pol[j - k]));
            }
        pol = std::move(next);
    }
    // det(sI - A) = sum_k pol[k] s^{J-k} with pol[k] = (-1)^k E_k, and
    // C_n = E_n = sum of principal n x n minors.
    std::vector<PiSeries> C(n_max + 1, ps_zero(P));
    for (unsigned n = 0; n <= n_max && n < pol.size(); ++n)
        C[n] = (n % 2 == 0) ? pol[n] : ps_neg(P, pol[n]);
    return C;
}

namespace {

struct RunResult {
    std::vector<PiSeries> C;
    DworkParams params;
};

RunResult run_fredholm(const TwistContext& ctx, std::uint64_t lambda, unsigned J, unsigned E,
                       unsigned N, unsigned n_max) {
    DworkMatrix M = build_matrix(ctx, lambda, J, E, N);
    return RunResult{fredholm_coefficients(M, n_max), M.params};
}

}  // namespace

DworkVerdict verify_fredholm_orders(const TwistContext& ctx, std::uint64_t lambda, unsigned J, unsigned E,
                            unsigned N) {
    const unsigned n_max = static_cast<unsigned>(ctx.d - 1);
    RunResult base = run_fredholm(ctx, lambda, J, E, N, n_max);
    RunResult big = run_fredholm(ctx, lambda, J + 5, E + 5, N + 2, n_max);
    NewtonPolygon P = arith_polygon(ctx, ctx.d);

    ArtinHasseTable table = artin_hasse(ctx.p, ctx.p);
    const FieldData& Fp = get_field_data(ctx.p, 1);

    DworkVerdict verdict;
    verdict.hypothesis_ok = ctx.hypothesis_ok();
    verdict.all_orders_match = true;
    verdict.all_hasse_match = true;
    for (unsigned n = 1; n <= n_max; ++n) {
        DworkRow row;
        row.n = n;
        row.expected_order = integer_polygon_value(ctx, P, n);
        row.order = ps_order(base.params, base.C[n]);
        PiOrder big_order = ps_order(big.params, big.C[n]);
        row.stable = (row.order.exact == big_order.exact) &&
                     (!row.order.exact || row.order.value == big_order.value);
        if (!row.stable)
            throw precision_error("verify_fredholm_orders: orders unstable; increase J/E/N");
        row.order_matches = row.order.exact && row.order.value == row.expected_order;

        if (row.expected_order >= static_cast<long>(E))
            throw precision_error("verify_fredholm_orders: E too small to read the leading coefficient");
        row.leading_mod_p =
            base.C[n].c[static_cast<std::size_t>(row.expected_order)] % ctx.p;
        FieldElement h = hasse_value_at_lambda(ctx, table, n, Fp.desc,
                                               fe_from_int(Fp.desc, lambda));
        row.hasse_mod_p = h[0];
        row.hasse_matches = (row.leading_mod_p == row.hasse_mod_p) ||
                            ((row.leading_mod_p + row.hasse_mod_p) % ctx.p == 0);
        verdict.all_orders_match = verdict.all_orders_match && row.order_matches;
        verdict.all_hasse_match = verdict.all_hasse_match && row.hasse_matches;
        verdict.rows.push_back(row);
    }
    return verdict;
}

NewtonPolygon c_function_polygon(const TwistContext& ctx, std::uint64_t lambda, unsigned n_max,
                                 unsigned J, unsigned E, unsigned N) {
    if (n_max > ctx.d) throw validation_error("c_function_polygon: n_max must be <= d");
    RunResult base = run_fredholm(ctx, lambda, J, E, N, n_max);
    RunResult big = run_fredholm(ctx, lambda, J + 5, E + 5, N + 2, n_max);

    std::vector<std::pair<Rational, Rational>> pts;
    pts.emplace_back(Rational(0), Rational(0));
    for (unsigned n = 1; n <= n_max; ++n) {
        PiOrder o = ps_order(base.params, base.C[n]);
        PiOrder ob = ps_order(big.params, big.C[n]);
        bool stable = (o.exact == ob.exact) && (!o.exact || o.value == ob.value);
        if (n == ctx.d) {
            if (o.exact && stable) pts.emplace_back(Rational(static_cast<long>(n)),
                                                    Rational(o.value));
            continue;
        }
        if (!o.exact || !stable)
            throw precision_error("c_function_polygon: order undecided; increase J/E/N");
        pts.emplace_back(Rational(static_cast<long>(n)), Rational(o.value));
    }
    return lower_hull(std::move(pts));
}

}  // namespace twistsum
