#include "twistsum/expsum.hpp"

#include <unordered_map>

#include "twistsum/errors.hpp"

namespace twistsum {

SumSpec make_sum_spec(const TwistContext& ctx, const FieldElement& lambda, unsigned N) {
    if (lambda.size() != ctx.a) throw validation_error("sum_spec: lambda has the wrong degree");
    if (fe_is_zero(lambda)) throw validation_error("sum_spec: lambda must be nonzero");
    SumSpec s;
    s.ctx = ctx;
    s.lambda = lambda;
    s.k_max = static_cast<unsigned>(ctx.d) + 1;
    s.N = (N == 0) ? static_cast<unsigned>(ctx.d) + 6 : N;
    if (ctx.d + 1 >= ctx.p)
        throw validation_error("sum_spec: need d + 1 < p so the exp recurrence can divide");
    return s;
}

RamifiedElement exp_sum(const ZqContext& zq, const SumSpec& spec, unsigned k) {
    const TwistContext& ctx = spec.ctx;
    if (k < 1 || k > spec.k_max) throw validation_error("exp_sum: k out of range");
    const FieldData& big = get_field_data(ctx.p, ctx.a * k);
    const FieldDesc& B = big.desc;
    const FieldDesc& F = zq.field;  // base field F_q
    const std::uint64_t Q = B.size, q = ctx.q;

    FieldElement root = embed_root(F, B);
    FieldElement lam = embed(F, B, root, spec.lambda);

    // Norm(G^w) = h^(w mod q-1) where h in F_q maps to G^((Q-1)/(q-1)).
    std::uint64_t h_sub_enc;
    {
        FieldElement h = big.power((Q - 1) / (q - 1));
        std::unordered_map<std::uint64_t, std::uint64_t> pre;
        FieldElement y = fe_one(F);
        const FieldData& base = get_field_data(ctx.p, ctx.a);
        for (std::uint64_t e = 0; e + 1 < q; ++e) {
            pre.emplace(fe_encode(B, embed(F, B, root, base.power(e))), e);
        }
        auto it = pre.find(fe_encode(B, h));
        if (it == pre.end())
            throw internal_check_error("exp_sum: norm subgroup escapes the embedded base field");
        h_sub_enc = it->second;
        y = base.power(h_sub_enc);
        h_sub_enc = fe_encode(F, y);
    }

    // counts[r][t] = #{w : w = r mod q-1, Tr(f(G^w)) = t}.
    std::vector<std::vector<std::uint64_t>> counts(
        q - 1, std::vector<std::uint64_t>(ctx.p, 0));
    for (std::uint64_t w = 0; w + 1 < Q; ++w) {
        FieldElement x = big.power(w);
        FieldElement fx = fe_add(B, big.power((w * ctx.d) % (Q - 1)), fe_mul(B, lam, x));
        std::uint32_t tr = 0;
        for (unsigned i = 0; i < B.n; ++i)
            tr = static_cast<std::uint32_t>(
                (tr + static_cast<std::uint64_t>(fx[i]) * big.basis_traces[i]) % ctx.p);
        ++counts[w % (q - 1)][tr];
    }

    // chi(Norm G^w) = T(h)^(-u w mod q-1) with T the Teichmueller lift.
    ZqElement th = teichmuller(zq, fe_decode(F, h_sub_enc));
    std::vector<RamifiedElement> zeta(ctx.p, ram_zero(zq));
    for (std::uint32_t t = 0; t < ctx.p; ++t) zeta[t] = zeta_p_power(zq, t);

    RamifiedElement S = ram_zero(zq);
    const std::uint64_t mu = (q - 1 - ctx.u % (q - 1)) % (q - 1);  // -u mod q-1
    for (std::uint64_t r = 0; r + 1 < q; ++r) {
        RamifiedElement inner = ram_zero(zq);
        for (std::uint32_t t = 0; t < ctx.p; ++t) {
            std::uint64_t c = counts[r][t] % zq.pN;
            if (c) inner = ram_add(zq, inner, ram_int_mul(zq, c, zeta[t]));
        }
        if (ram_is_zero(inner)) continue;
        ZqElement chi = zq_pow(zq, th, mul_mod(mu, r, q - 1));
        S = ram_add(zq, S, ram_scalar_mul(zq, chi, inner));
    }
    return S;
}

LFunction lfun_from_sums(const ZqContext& zq, const SumSpec& spec,
                         const std::vector<RamifiedElement>& sums) {
    const std::uint64_t d = spec.ctx.d;
    if (sums.size() < d + 1) throw validation_error("lfun_from_sums: need S_1..S_{d+1}");
    std::vector<RamifiedElement> c(d + 2, ram_zero(zq));
    c[0] = ram_one(zq);
    for (std::uint64_t n = 1; n <= d + 1; ++n) {
        if (n % spec.ctx.p == 0)
            throw validation_error("lfun_from_sums: recurrence divides by a multiple of p");
        RamifiedElement acc = ram_zero(zq);
        for (std::uint64_t k = 1; k <= n; ++k)
            acc = ram_add(zq, acc, ram_mul(zq, sums[k - 1], c[n - k]));
        c[n] = ram_int_mul(zq, inv_mod(n % zq.pN, zq.pN), acc);
    }
    LFunction L;
    L.overflow_check = c[d + 1];
    c.pop_back();
    L.coeffs = std::move(c);
    return L;
}

NewtonPolygon lfun_newton_polygon(const ZqContext& zq, const SumSpec& spec, const LFunction& L) {
    const std::uint64_t d = spec.ctx.d;
    std::vector<std::pair<Rational, Rational>> pts;
    std::vector<std::pair<long, Rational>> markers;
    for (std::uint64_t n = 0; n <= d; ++n) {
        PiValuation v = pi_valuation(zq, L.coeffs[n]);
        if (v.exact)
            pts.emplace_back(Rational(static_cast<long>(n)), v.value);
        else if (n == 0 || n == d)
            throw precision_error("lfun_newton_polygon: endpoint coefficient below precision");
        else
            markers.emplace_back(static_cast<long>(n), v.value);
    }
    NewtonPolygon hull = lower_hull(std::move(pts));
    for (const auto& [n, bound] : markers)
        if (bound <= hull.value_at(Rational(n)))
            throw precision_error("lfun_newton_polygon: undecided coefficient could cut the hull");
    return hull;
}

VerdictReport verify_polygon_identity(const SumSpec& spec) {
    const TwistContext& ctx = spec.ctx;
    const FieldDesc F = build_field(ctx.p, ctx.a);
    ZqContext zq = make_zq_context(F, spec.N);

    std::vector<RamifiedElement> sums;
    for (unsigned k = 1; k <= spec.k_max; ++k) sums.push_back(exp_sum(zq, spec, k));
    LFunction L = lfun_from_sums(zq, spec, sums);

    VerdictReport r;
    r.hypothesis_ok = ctx.hypothesis_ok();
    r.actual = lfun_newton_polygon(zq, spec, L);
    r.expected = scale_polygon(arith_polygon(ctx, ctx.d), Rational(static_cast<long>(ctx.a)));
    r.polygons_equal = true;
    for (long n = 0; n <= static_cast<long>(ctx.d); ++n)
        if (r.actual.value_at(Rational(n)) != r.expected.value_at(Rational(n))) {
            r.polygons_equal = false;
            r.mismatches.push_back(n);
        }
    r.degree_certified = !pi_valuation(zq, L.overflow_check).exact;

    NewtonPolygon P = arith_polygon(ctx, ctx.d);
    NewtonPolygon H = scale_polygon(hodge_polygon(ctx, ctx.d),
                                    Rational(static_cast<long>(ctx.p) - 1));
    ComparisonReport cmp = compare_polygons(P, H, static_cast<long>(ctx.d));
    bool c0 = false, cd = false;
    for (long n : cmp.contact_points) {
        if (n == 0) c0 = true;
        if (n == static_cast<long>(ctx.d)) cd = true;
    }
    r.hodge_contact_ok = cmp.dominated && c0 && cd;

    // Total slope mass = hull height at d (hull starts at (0,0)).
    Rational mass = r.actual.value_at(Rational(static_cast<long>(ctx.d)));
    r.mass_ok = (mass == r.expected.value_at(Rational(static_cast<long>(ctx.d))));
    return r;
}

}  // namespace twistsum
