#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rational.hpp"
#include "rng.hpp"

namespace polykeller {

/// Fixed table of the primes in [10007, 32749]; all modular arithmetic in the
/// project draws from it (deterministically, given a seed or a fixed cursor).
inline const std::vector<std::uint32_t>& prime_table() {
    static const std::vector<std::uint32_t> primes = [] {
        const int limit = 32750;
        std::vector<bool> sieve(static_cast<std::size_t>(limit) + 1, true);
        sieve[0] = sieve[1] = false;
        for (int i = 2; i * i <= limit; ++i)
            if (sieve[static_cast<std::size_t>(i)])
                for (int j = i * i; j <= limit; j += i)
                    sieve[static_cast<std::size_t>(j)] = false;
        std::vector<std::uint32_t> out;
        for (int i = 10007; i <= 32749; ++i)
            if (sieve[static_cast<std::size_t>(i)])
                out.push_back(static_cast<std::uint32_t>(i));
        return out;
    }();
    return primes;
}

namespace fp {

inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;
    return s >= p ? s - p : s;
}

inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + p - b;
}

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return (a * b) % p; // p < 2^32, products fit in 64 bits
}

inline std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1)
            r = mul(r, a, p);
        a = mul(a, a, p);
        e >>= 1;
    }
    return r;
}

inline std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
    if (a % p == 0)
        throw std::domain_error("inverse of zero mod p");
    return pow(a, p - 2, p);
}

inline std::uint64_t from_integer(const Integer& z, std::uint64_t p) {
    Integer r;
    mpz_mod_ui(r.get_mpz_t(), z.get_mpz_t(), static_cast<unsigned long>(p));
    return r.get_ui();
}

} // namespace fp

/// Dense univariate polynomial over F_p, coefficients ascending, normalized
/// (no trailing zeros; empty vector is the zero polynomial).
using FpVec = std::vector<std::uint64_t>;

inline void fpv_normalize(FpVec& f) {
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

inline int fpv_deg(const FpVec& f) { return static_cast<int>(f.size()) - 1; }

inline FpVec fpv_add(const FpVec& a, const FpVec& b, std::uint64_t p) {
    FpVec r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::uint64_t x = i < a.size() ? a[i] : 0;
        std::uint64_t y = i < b.size() ? b[i] : 0;
        r[i] = fp::add(x, y, p);
    }
    fpv_normalize(r);
    return r;
}

inline FpVec fpv_sub(const FpVec& a, const FpVec& b, std::uint64_t p) {
    FpVec r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::uint64_t x = i < a.size() ? a[i] : 0;
        std::uint64_t y = i < b.size() ? b[i] : 0;
        r[i] = fp::sub(x, y, p);
    }
    fpv_normalize(r);
    return r;
}

inline FpVec fpv_mul(const FpVec& a, const FpVec& b, std::uint64_t p) {
    if (a.empty() || b.empty())
        return {};
    FpVec r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    fpv_normalize(r);
    return r;
}

inline FpVec fpv_scale(const FpVec& a, std::uint64_t c, std::uint64_t p) {
    FpVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = fp::mul(a[i], c, p);
    fpv_normalize(r);
    return r;
}

/// Division with remainder; g must be nonzero.
inline void fpv_divmod(const FpVec& f, const FpVec& g, std::uint64_t p, FpVec& q, FpVec& r) {
    if (g.empty())
        throw std::domain_error("division by zero polynomial");
    r = f;
    q.assign(f.size() >= g.size() ? f.size() - g.size() + 1 : 0, 0);
    std::uint64_t lg_inv = fp::inv(g.back(), p);
    while (r.size() >= g.size()) {
        std::uint64_t c = fp::mul(r.back(), lg_inv, p);
        std::size_t shift = r.size() - g.size();
        q[shift] = c;
        for (std::size_t i = 0; i < g.size(); ++i)
            r[shift + i] = fp::sub(r[shift + i], fp::mul(c, g[i], p), p);
        fpv_normalize(r);
        if (r.empty())
            break;
    }
    fpv_normalize(q);
}

inline FpVec fpv_mod(const FpVec& f, const FpVec& g, std::uint64_t p) {
    FpVec q, r;
    fpv_divmod(f, g, p, q, r);
    return r;
}

inline FpVec fpv_monic(const FpVec& f, std::uint64_t p) {
    if (f.empty())
        return f;
    return fpv_scale(f, fp::inv(f.back(), p), p);
}

inline FpVec fpv_gcd(FpVec a, FpVec b, std::uint64_t p) {
    while (!b.empty()) {
        FpVec r = fpv_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return fpv_monic(a, p);
}

/// Extended Euclid: s*a + t*b = gcd (monic).
inline void fpv_ext_gcd(const FpVec& a, const FpVec& b, std::uint64_t p, FpVec& g, FpVec& s, FpVec& t) {
    FpVec r0 = a, r1 = b;
    FpVec s0 = {1}, s1 = {};
    FpVec t0 = {}, t1 = {1};
    while (!r1.empty()) {
        FpVec q, r;
        fpv_divmod(r0, r1, p, q, r);
        FpVec s2 = fpv_sub(s0, fpv_mul(q, s1, p), p);
        FpVec t2 = fpv_sub(t0, fpv_mul(q, t1, p), p);
        r0 = std::move(r1); r1 = std::move(r);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (r0.empty()) {
        g = {}; s = {}; t = {};
        return;
    }
    std::uint64_t c = fp::inv(r0.back(), p);
    g = fpv_scale(r0, c, p);
    s = fpv_scale(s0, c, p);
    t = fpv_scale(t0, c, p);
}

inline FpVec fpv_derivative(const FpVec& f, std::uint64_t p) {
    if (f.size() <= 1)
        return {};
    FpVec r(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i)
        r[i - 1] = fp::mul(f[i], i % p, p);
    fpv_normalize(r);
    return r;
}

inline FpVec fpv_powmod(FpVec base, Integer e, const FpVec& mod, std::uint64_t p) {
    FpVec r = {1};
    base = fpv_mod(base, mod, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t()))
            r = fpv_mod(fpv_mul(r, base, p), mod, p);
        base = fpv_mod(fpv_mul(base, base, p), mod, p);
        e >>= 1;
    }
    return r;
}

inline bool fpv_is_squarefree(const FpVec& f, std::uint64_t p) {
    if (f.empty())
        return false;
    return fpv_deg(fpv_gcd(f, fpv_derivative(f, p), p)) == 0;
}

} // namespace polykeller
