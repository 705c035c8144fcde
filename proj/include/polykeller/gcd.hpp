#pragma once

#include <vector>

#include "intpoly.hpp"
#include "modp.hpp"
#include "polynomial.hpp"
#include "rng.hpp"

namespace polykeller {

Polynomial gcd(const Polynomial& f, const Polynomial& g);

namespace detail {

inline std::vector<int> essential_vars(const Polynomial& f) {
    std::vector<int> out;
    for (int i = 0; i < f.arity(); ++i)
        if (f.depends_on(i))
            out.push_back(i);
    return out;
}

// value of the top homogeneous form at the direction vector a, mod p
inline std::uint64_t leadform_eval_mod(const Polynomial& f, const std::vector<std::uint64_t>& a,
                                       std::uint64_t p) {
    int d = f.degree();
    std::uint64_t acc = 0;
    for (const auto& [m, c] : f.terms()) {
        if (m.degree() != d)
            continue;
        std::uint64_t t = fp::from_integer(c.get_num(), p);
        for (int i = 0; i < f.arity(); ++i)
            for (int e = 0; e < m.exponent(i); ++e)
                t = fp::mul(t, a[static_cast<std::size_t>(i)], p);
        acc = fp::add(acc, t, p);
    }
    return acc;
}

// univariate image of f under x_i -> a_i t + b_i, over F_p
// (f must have integer coefficients)
inline FpVec specialize_line_mod(const Polynomial& f, const std::vector<std::uint64_t>& a,
                                 const std::vector<std::uint64_t>& b, std::uint64_t p) {
    std::vector<std::vector<FpVec>> powers(static_cast<std::size_t>(f.arity()));
    auto power = [&](int i, int e) -> const FpVec& {
        auto& cache = powers[static_cast<std::size_t>(i)];
        if (cache.empty())
            cache.push_back({1});
        while (static_cast<int>(cache.size()) <= e) {
            FpVec lin = {b[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(i)]};
            fpv_normalize(lin);
            cache.push_back(fpv_mul(cache.back(), lin, p));
        }
        return cache[static_cast<std::size_t>(e)];
    };
    FpVec acc;
    for (const auto& [m, c] : f.terms()) {
        FpVec t = {fp::from_integer(c.get_num(), p)};
        fpv_normalize(t);
        for (int i = 0; i < f.arity() && !t.empty(); ++i)
            if (m.exponent(i) > 0)
                t = fpv_mul(t, power(i, m.exponent(i)), p);
        acc = fpv_add(acc, t, p);
    }
    return acc;
}

// Sound one-sided test that gcd(f, g) is constant. A nonconstant common
// divisor survives any substitution x_i -> a_i t + b_i that preserves the
// leading forms of both inputs, so a coprime pair of univariate images mod p
// certifies coprimality over Q. Returns false when no certificate was found
// (which proves nothing).
inline bool coprime_certificate(const Polynomial& f, const Polynomial& g) {
    if (f.arity() == 0)
        return true;
    Rng rng(0xc0bb1e5ULL);
    const auto& primes = prime_table();
    for (int pi = 0; pi < 3; ++pi) {
        std::uint64_t p = primes[static_cast<std::size_t>(11 + 101 * pi)];
        for (int trial = 0; trial < 4; ++trial) {
            std::vector<std::uint64_t> a(static_cast<std::size_t>(f.arity()));
            std::vector<std::uint64_t> b(static_cast<std::size_t>(f.arity()));
            for (auto& x : a)
                x = static_cast<std::uint64_t>(rng.uniform(1, static_cast<long>(p - 1)));
            for (auto& x : b)
                x = static_cast<std::uint64_t>(rng.uniform(0, static_cast<long>(p - 1)));
            if (leadform_eval_mod(f, a, p) == 0 || leadform_eval_mod(g, a, p) == 0)
                continue;
            FpVec fh = specialize_line_mod(f, a, b, p);
            FpVec gh = specialize_line_mod(g, a, b, p);
            if (fpv_deg(fh) != f.degree() || fpv_deg(gh) != g.degree())
                continue;
            if (fpv_deg(fpv_gcd(fh, gh, p)) == 0)
                return true;
        }
    }
    return false;
}

inline Polynomial mul_by_var_power(const Polynomial& f, int var, int k) {
    Polynomial r(f.arity());
    for (const auto& [m, c] : f.terms()) {
        std::vector<int> e = m.exponents();
        e[static_cast<std::size_t>(var)] += k;
        r.add_term(Monomial(std::move(e)), c);
    }
    return r;
}

inline Polynomial lc_in(const Polynomial& f, int var) {
    return f.coeff_in(var, f.degree_in(var));
}

// pseudo-remainder of a by b in the main variable: lc(b)^(delta+1) a mod b
inline Polynomial pseudo_rem(const Polynomial& a, const Polynomial& b, int var) {
    int db = b.degree_in(var);
    int delta = a.degree_in(var) - db;
    Polynomial lb = lc_in(b, var);
    Polynomial r = a;
    int steps = 0;
    while (!r.is_zero() && r.degree_in(var) >= db) {
        int dr = r.degree_in(var);
        Polynomial lr = r.coeff_in(var, dr);
        r = lb * r - mul_by_var_power(lr, var, dr - db) * b;
        ++steps;
    }
    for (; steps < delta + 1; ++steps)
        r = lb * r;
    return r;
}

// content of f with respect to x_var: gcd of the coefficient polynomials
inline Polynomial content_in(const Polynomial& f, int var) {
    Polynomial c(f.arity());
    for (int k = 0; k <= f.degree_in(var); ++k) {
        Polynomial ck = f.coeff_in(var, k);
        if (ck.is_zero())
            continue;
        c = gcd(c, ck);
        if (!c.is_zero() && c.is_constant())
            break;
    }
    return c;
}

// both inputs depend on exactly the same single variable
inline Polynomial gcd_univariate(const Polynomial& f, const Polynomial& g, int var) {
    auto to_zv = [&](const Polynomial& h) {
        ZVec v(static_cast<std::size_t>(h.degree_in(var)) + 1);
        for (const auto& [m, c] : h.terms())
            v[static_cast<std::size_t>(m.exponent(var))] = c.get_num();
        zv_normalize(v);
        return v;
    };
    ZVec r = zv_gcd(to_zv(f), to_zv(g));
    Polynomial out(f.arity());
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] == 0)
            continue;
        std::vector<int> e(static_cast<std::size_t>(f.arity()), 0);
        e[static_cast<std::size_t>(var)] = static_cast<int>(i);
        out.add_term(Monomial(std::move(e)), Rational(r[i]));
    }
    return out;
}

} // namespace detail

/// Greatest common divisor over Q[x1..xn]; the result is integer-primitive
/// with positive leading (graded-lex) coefficient. gcd(f, 0) = normalized f.
/// Primitive-part recursion with a subresultant remainder sequence; a mod-p
/// specialization certificate short-circuits coprime pairs.
inline Polynomial gcd(const Polynomial& f, const Polynomial& g) {
    if (f.arity() != g.arity())
        throw std::invalid_argument("gcd: arity mismatch");
    if (f.is_zero())
        return normalize_primitive(g);
    if (g.is_zero())
        return normalize_primitive(f);
    if (f.is_constant() || g.is_constant())
        return Polynomial::one(f.arity());

    Polynomial a = normalize_primitive(f);
    Polynomial b = normalize_primitive(g);
    if (a == b)
        return a;

    auto va = detail::essential_vars(a);
    auto vb = detail::essential_vars(b);
    std::vector<int> shared;
    for (int v : va)
        if (b.depends_on(v))
            shared.push_back(v);
    if (shared.empty())
        return Polynomial::one(f.arity());

    if (va.size() == 1 && vb.size() == 1 && va == vb)
        return detail::gcd_univariate(a, b, va[0]);

    if (detail::coprime_certificate(a, b))
        return Polynomial::one(f.arity());

    // main variable: minimize the larger of the two degrees
    int var = shared[0];
    int best = 1 << 30;
    for (int v : shared) {
        int m = std::max(a.degree_in(v), b.degree_in(v));
        if (m < best) {
            best = m;
            var = v;
        }
    }

    Polynomial ca = detail::content_in(a, var);
    Polynomial cb = detail::content_in(b, var);
    Polynomial pa = *divide_exact(a, ca);
    Polynomial pb = *divide_exact(b, cb);
    Polynomial cc = gcd(ca, cb);

    // subresultant PRS on the primitive parts
    Polynomial P = pa, Q = pb;
    if (P.degree_in(var) < Q.degree_in(var))
        std::swap(P, Q);
    Polynomial gprev = Polynomial::one(f.arity());
    Polynomial h = Polynomial::one(f.arity());
    Polynomial result_pp(f.arity());
    while (true) {
        int delta = P.degree_in(var) - Q.degree_in(var);
        Polynomial R = detail::pseudo_rem(P, Q, var);
        if (R.is_zero()) {
            Polynomial qc = detail::content_in(Q, var);
            result_pp = *divide_exact(Q, qc);
            break;
        }
        if (R.degree_in(var) == 0) {
            result_pp = Polynomial::one(f.arity());
            break;
        }
        Polynomial divisor = gprev * pow(h, delta);
        auto next = divide_exact(R, divisor);
        if (!next)
            throw std::logic_error("subresultant PRS: inexact division");
        P = Q;
        Q = *next;
        gprev = detail::lc_in(P, var);
        if (delta > 0) {
            auto hn = divide_exact(pow(gprev, delta), pow(h, delta - 1));
            if (!hn)
                throw std::logic_error("subresultant PRS: inexact h update");
            h = *hn;
        }
    }

    Polynomial result = normalize_primitive(cc * result_pp);
    if (!divide_exact(a, result) || !divide_exact(b, result))
        throw std::logic_error("gcd postcondition violated");
    return result;
}

inline Polynomial gcd_many(const std::vector<Polynomial>& polys) {
    if (polys.empty())
        throw std::invalid_argument("gcd_many: empty list");
    Polynomial r = Polynomial::zero(polys[0].arity());
    for (const auto& f : polys) {
        r = gcd(r, f);
        if (!r.is_zero() && r.is_constant())
            break;
    }
    return r;
}

/// f = content * primitive, with content free of x_var and primitive the
/// normalized (integer-primitive, positive-leading) cofactor.
inline std::pair<Polynomial, Polynomial> content_primitive(const Polynomial& f, int var) {
    if (var < 0 || var >= f.arity())
        throw std::out_of_range("content_primitive: variable index");
    if (f.is_zero())
        return {Polynomial::zero(f.arity()), Polynomial::one(f.arity())};
    Polynomial c0 = detail::content_in(f, var);
    Polynomial prim = normalize_primitive(*divide_exact(f, c0));
    Polynomial content = *divide_exact(f, prim);
    return {content, prim};
}

} // namespace polykeller
