#include "twistsum/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "twistsum/errors.hpp"

namespace twistsum {

namespace {

constexpr std::uint64_t kUnitGuard = 10'000'000;

// Reduce a raw product (length <= 2n-1) by the monic modulus.
void reduce(const FieldDesc& F, std::vector<std::uint64_t>& c) {
    const std::uint64_t p = F.p;
    const unsigned n = F.n;
    for (std::size_t i = c.size(); i-- > n;) {
        std::uint64_t top = c[i] % p;
        if (top == 0) continue;
        // t^i = -sum_k modulus[k] t^{i-n+k}
        for (unsigned k = 0; k < n; ++k) {
            std::uint64_t sub = (top * F.modulus[k]) % p;
            std::uint64_t idx = i - n + k;
            c[idx] = (c[idx] + p - sub) % p;
        }
        c[i] = 0;
    }
    c.resize(n);
}

// Polynomial gcd over F_p, inputs low-degree-first, not necessarily monic.
std::vector<std::uint32_t> poly_gcd(std::uint64_t p, std::vector<std::uint32_t> a,
                                    std::vector<std::uint32_t> b) {
    auto deg = [](const std::vector<std::uint32_t>& f) -> int {
        for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
            if (f[i]) return i;
        return -1;
    };
    while (deg(b) >= 0) {
        int db = deg(b);
        std::uint64_t lead_inv = inv_mod(b[db], p);
        // a mod b
        for (int da = deg(a); da >= db; da = deg(a)) {
            std::uint64_t c = (a[da] * lead_inv) % p;
            for (int i = 0; i <= db; ++i) {
                std::uint64_t sub = (c * b[i]) % p;
                a[da - db + i] =
                    static_cast<std::uint32_t>((a[da - db + i] + p - sub) % p);
            }
        }
        std::swap(a, b);
    }
    return a;
}

// Rabin's test: m of degree n is irreducible over F_p iff t^{p^n} = t mod m
// and gcd(t^{p^{n/r}} - t, m) = 1 for every prime r | n.
bool is_irreducible(std::uint64_t p, unsigned n, const std::vector<std::uint32_t>& mod) {
    if (n == 1) return true;
    FieldDesc F{p, n, mod, 0};  // quotient ring arithmetic; irreducibility not assumed
    FieldElement t = fe_zero(F);
    t[1] = 1;
    std::vector<std::uint64_t> nfactors;
    {
        std::uint64_t m = n;
        for (std::uint64_t f = 2; f * f <= m; ++f)
            if (m % f == 0) {
                nfactors.push_back(f);
                while (m % f == 0) m /= f;
            }
        if (m > 1) nfactors.push_back(m);
    }
    FieldElement fr = t;
    unsigned step = 0;
    auto frob_to = [&](unsigned target) {
        for (; step < target; ++step) fr = fe_pow(F, fr, p);
    };
    std::vector<unsigned> targets;
    for (auto r : nfactors) targets.push_back(n / static_cast<unsigned>(r));
    std::sort(targets.begin(), targets.end());
    for (auto i : targets) {
        frob_to(i);
        std::vector<std::uint32_t> diff(n, 0);
        for (unsigned k = 0; k < n; ++k) diff[k] = fr[k];
        diff[1] = static_cast<std::uint32_t>((diff[1] + p - 1) % p);
        auto g = poly_gcd(p, diff, mod);
        int dg = -1;
        for (int k = static_cast<int>(g.size()) - 1; k >= 0; --k)
            if (g[k]) {
                dg = k;
                break;
            }
        if (dg != 0) return false;
    }
    frob_to(n);
    return fr == t;
}

}  // namespace

FieldDesc build_field(std::uint64_t p, unsigned n) {
    if (!is_prime(p)) throw validation_error("build_field: p must be prime");
    if (n < 1) throw validation_error("build_field: n must be >= 1");
    FieldDesc F;
    F.p = p;
    F.n = n;
    F.size = 1;
    for (unsigned i = 0; i < n; ++i) {
        if (F.size > (std::uint64_t(1) << 62) / p)
            throw validation_error("build_field: p^n overflows");
        F.size *= p;
    }
    // Scan monic polynomials ordered by (c_{n-1}, ..., c_1, c_0).
    std::vector<std::uint32_t> mod(n + 1, 0);
    mod[n] = 1;
    std::uint64_t total = F.size;  // p^n candidates
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t rem = code;
        for (unsigned i = 0; i < n; ++i) {
            mod[i] = static_cast<std::uint32_t>(rem % p);
            rem /= p;
        }
        if (is_irreducible(p, n, mod)) {
            F.modulus = mod;
            return F;
        }
    }
    throw internal_check_error("build_field: no irreducible polynomial found");
}

FieldElement fe_zero(const FieldDesc& F) { return FieldElement(F.n, 0); }

FieldElement fe_one(const FieldDesc& F) {
    FieldElement x(F.n, 0);
    x[0] = 1 % static_cast<std::uint32_t>(F.p);
    return x;
}

FieldElement fe_from_int(const FieldDesc& F, std::uint64_t c) {
    FieldElement x(F.n, 0);
    x[0] = static_cast<std::uint32_t>(c % F.p);
    return x;
}

bool fe_is_zero(const FieldElement& x) {
    for (auto c : x)
        if (c) return false;
    return true;
}

FieldElement fe_add(const FieldDesc& F, const FieldElement& x, const FieldElement& y) {
    FieldElement z(F.n);
    for (unsigned i = 0; i < F.n; ++i) z[i] = (x[i] + y[i]) % F.p;
    return z;
}

FieldElement fe_sub(const FieldDesc& F, const FieldElement& x, const FieldElement& y) {
    FieldElement z(F.n);
    for (unsigned i = 0; i < F.n; ++i)
        z[i] = static_cast<std::uint32_t>((x[i] + F.p - y[i]) % F.p);
    return z;
}

FieldElement fe_mul(const FieldDesc& F, const FieldElement& x, const FieldElement& y) {
    std::vector<std::uint64_t> c(2 * F.n - 1, 0);
    for (unsigned i = 0; i < F.n; ++i) {
        if (!x[i]) continue;
        for (unsigned j = 0; j < F.n; ++j)
            c[i + j] += static_cast<std::uint64_t>(x[i]) * y[j];
    }
    for (auto& v : c) v %= F.p;
    reduce(F, c);
    FieldElement z(F.n);
    for (unsigned i = 0; i < F.n; ++i) z[i] = static_cast<std::uint32_t>(c[i]);
    return z;
}

FieldElement fe_pow(const FieldDesc& F, FieldElement x, std::uint64_t e) {
    FieldElement r = fe_one(F);
    while (e) {
        if (e & 1) r = fe_mul(F, r, x);
        x = fe_mul(F, x, x);
        e >>= 1;
    }
    return r;
}

FieldElement fe_inv(const FieldDesc& F, const FieldElement& x) {
    if (fe_is_zero(x)) throw validation_error("fe_inv: zero is not invertible");
    return fe_pow(F, x, F.size - 2);
}

std::uint64_t fe_encode(const FieldDesc& F, const FieldElement& x) {
    std::uint64_t code = 0;
    for (unsigned i = F.n; i-- > 0;) code = code * F.p + x[i];
    return code;
}

FieldElement fe_decode(const FieldDesc& F, std::uint64_t code) {
    FieldElement x(F.n);
    for (unsigned i = 0; i < F.n; ++i) {
        x[i] = static_cast<std::uint32_t>(code % F.p);
        code /= F.p;
    }
    return x;
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> fs;
    for (std::uint64_t f = 2; f * f <= n; ++f) {
        if (n % f == 0) {
            fs.push_back(f);
            while (n % f == 0) n /= f;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

}  // namespace

FieldElement generator(const FieldDesc& F) {
    const std::uint64_t ord = F.size - 1;
    if (ord == 1) return fe_one(F);
    auto factors = prime_factors(ord);
    for (std::uint64_t code = 1; code < F.size; ++code) {
        FieldElement x = fe_decode(F, code);
        bool primitive = true;
        for (auto f : factors) {
            if (fe_pow(F, x, ord / f) == fe_one(F)) {
                primitive = false;
                break;
            }
        }
        if (primitive) return x;
    }
    throw internal_check_error("generator: none found");
}

std::uint32_t trace_to_prime(const FieldDesc& F, const FieldElement& x) {
    FieldElement acc = x;
    FieldElement fr = x;
    for (unsigned i = 1; i < F.n; ++i) {
        fr = fe_pow(F, fr, F.p);
        acc = fe_add(F, acc, fr);
    }
    for (unsigned i = 1; i < F.n; ++i)
        if (acc[i] != 0) throw internal_check_error("trace_to_prime: trace not in F_p");
    return acc[0];
}

FieldElement FieldData::power(std::uint64_t e) const {
    FieldElement x(desc.n);
    for (unsigned i = 0; i < desc.n; ++i) x[i] = powers[e * desc.n + i];
    return x;
}

const FieldData& get_field_data(std::uint64_t p, unsigned n) {
    static std::map<std::pair<std::uint64_t, unsigned>, FieldData> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    FieldData D;
    D.desc = build_field(p, n);
    if (D.desc.size > kUnitGuard)
        throw validation_error("get_field_data: p^n exceeds the enumeration guard");
    D.g = generator(D.desc);
    const std::uint64_t ord = D.desc.size - 1;
    D.powers.resize(ord * n);
    D.dlog.assign(D.desc.size, -1);
    FieldElement cur = fe_one(D.desc);
    for (std::uint64_t e = 0; e < ord; ++e) {
        for (unsigned i = 0; i < n; ++i) D.powers[e * n + i] = cur[i];
        D.dlog[fe_encode(D.desc, cur)] = static_cast<std::int64_t>(e);
        cur = fe_mul(D.desc, cur, D.g);
    }
    for (unsigned i = 0; i < n; ++i) {
        FieldElement ti(n, 0);
        ti[i] = 1;
        D.basis_traces.push_back(trace_to_prime(D.desc, ti));
    }
    return cache.emplace(key, std::move(D)).first->second;
}

std::uint64_t dlog(const FieldData& D, const FieldElement& x) {
    if (fe_is_zero(x)) throw validation_error("dlog: zero has no discrete logarithm");
    std::int64_t e = D.dlog[fe_encode(D.desc, x)];
    if (e < 0) throw internal_check_error("dlog: table miss");
    return static_cast<std::uint64_t>(e);
}

std::uint64_t norm_exponent(std::uint64_t q, unsigned k, std::uint64_t e) {
    (void)k;
    return e % (q - 1);
}

FieldElement embed_root(const FieldDesc& sub, const FieldDesc& big) {
    if (sub.p != big.p || sub.n == 0 || big.n % sub.n != 0)
        throw validation_error("embed_root: not a subfield");
    for (std::uint64_t code = 0; code < big.size; ++code) {
        FieldElement x = fe_decode(big, code);
        // Horner evaluation of sub.modulus at x.
        FieldElement acc = fe_from_int(big, sub.modulus[sub.n]);
        for (unsigned i = sub.n; i-- > 0;) {
            acc = fe_mul(big, acc, x);
            acc = fe_add(big, acc, fe_from_int(big, sub.modulus[i]));
        }
        if (fe_is_zero(acc)) return x;
    }
    throw internal_check_error("embed_root: no root of subfield modulus");
}

FieldElement embed(const FieldDesc& sub, const FieldDesc& big, const FieldElement& root,
                   const FieldElement& x) {
    FieldElement acc = fe_zero(big);
    for (unsigned i = sub.n; i-- > 0;) {
        acc = fe_mul(big, acc, root);
        acc = fe_add(big, acc, fe_from_int(big, x[i]));
    }
    return acc;
}

std::vector<FieldElement> enumerate_units(const FieldDesc& F) {
    if (F.size > kUnitGuard)
        throw validation_error("enumerate_units: field exceeds the enumeration guard");
    std::vector<FieldElement> out;
    out.reserve(F.size - 1);
    for (std::uint64_t code = 1; code < F.size; ++code) out.push_back(fe_decode(F, code));
    return out;
}

}  // namespace twistsum
