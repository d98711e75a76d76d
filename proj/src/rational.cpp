#include "twistsum/rational.hpp"

#include "twistsum/errors.hpp"

namespace twistsum {

Int floor_rational(const Rational& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

Rational frac_part(const Rational& x) {
    Rational f = x - Rational(floor_rational(x));
    f.canonicalize();
    return f;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t f = 2; f * f <= n; ++f)
        if (n % f == 0) return false;
    return true;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
    std::int64_t t = 0, newt = 1;
    std::int64_t r = static_cast<std::int64_t>(m), newr = static_cast<std::int64_t>(a % m);
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::int64_t tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) throw validation_error("inv_mod: argument not invertible");
    if (t < 0) t += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(t);
}

std::uint64_t rational_mod(const Rational& x, std::uint64_t m) {
    Int mm(static_cast<unsigned long>(m));
    Int num = x.get_num() % mm;
    if (num < 0) num += mm;
    Int deninv;
    if (mpz_invert(deninv.get_mpz_t(), x.get_den().get_mpz_t(), mm.get_mpz_t()) == 0)
        throw validation_error("rational_mod: denominator not coprime to modulus");
    Int r = (num * deninv) % mm;
    return static_cast<std::uint64_t>(r.get_ui());
}

long ord_p(const Rational& x, std::uint64_t p) {
    if (x == 0) throw validation_error("ord_p of zero");
    Int pp(static_cast<unsigned long>(p));
    long v = 0;
    Int n = x.get_num();
    while (mpz_divisible_p(n.get_mpz_t(), pp.get_mpz_t())) {
        n /= pp;
        ++v;
    }
    Int d = x.get_den();
    while (mpz_divisible_p(d.get_mpz_t(), pp.get_mpz_t())) {
        d /= pp;
        --v;
    }
    return v;
}

std::string rational_str(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

}  // namespace twistsum
