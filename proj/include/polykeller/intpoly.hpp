#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "modp.hpp"
#include "rational.hpp"
#include "rng.hpp"

namespace polykeller {

/// Dense univariate polynomial over Z, coefficients ascending, no trailing
/// zeros (empty = zero). The engine behind univariate factorization.
using ZVec = std::vector<Integer>;

inline void zv_normalize(ZVec& f) {
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

inline int zv_deg(const ZVec& f) { return static_cast<int>(f.size()) - 1; }

inline ZVec zv_add(const ZVec& a, const ZVec& b) {
    ZVec r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size())
            r[i] += a[i];
        if (i < b.size())
            r[i] += b[i];
    }
    zv_normalize(r);
    return r;
}

inline ZVec zv_sub(const ZVec& a, const ZVec& b) {
    ZVec r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size())
            r[i] += a[i];
        if (i < b.size())
            r[i] -= b[i];
    }
    zv_normalize(r);
    return r;
}

inline ZVec zv_mul(const ZVec& a, const ZVec& b) {
    if (a.empty() || b.empty())
        return {};
    ZVec r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    }
    zv_normalize(r);
    return r;
}

inline ZVec zv_scale(const ZVec& a, const Integer& c) {
    if (c == 0)
        return {};
    ZVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] * c;
    return r;
}

inline ZVec zv_derivative(const ZVec& f) {
    if (f.size() <= 1)
        return {};
    ZVec r(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i)
        r[i - 1] = f[i] * static_cast<long>(i);
    zv_normalize(r);
    return r;
}

inline Integer zv_content(const ZVec& f) {
    Integer g(0);
    for (const auto& c : f)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

/// Primitive part with positive leading coefficient.
inline ZVec zv_primitive(const ZVec& f) {
    if (f.empty())
        return f;
    Integer c = zv_content(f);
    if (f.back() < 0)
        c = -c;
    ZVec r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        r[i] = f[i] / c;
    return r;
}

/// Exact integer division; nullopt when g does not divide f over Z.
inline std::optional<ZVec> zv_divide_exact(const ZVec& f, const ZVec& g) {
    if (g.empty())
        return f.empty() ? std::optional<ZVec>(ZVec{}) : std::nullopt;
    ZVec r = f;
    if (r.size() < g.size() && !r.empty())
        return std::nullopt;
    ZVec q(r.empty() ? 0 : r.size() - g.size() + 1);
    while (r.size() >= g.size() && !r.empty()) {
        Integer c, rem;
        mpz_tdiv_qr(c.get_mpz_t(), rem.get_mpz_t(), r.back().get_mpz_t(), g.back().get_mpz_t());
        if (rem != 0)
            return std::nullopt;
        std::size_t shift = r.size() - g.size();
        q[shift] = c;
        for (std::size_t i = 0; i < g.size(); ++i)
            r[shift + i] -= c * g[i];
        zv_normalize(r);
    }
    if (!r.empty())
        return std::nullopt;
    return q;
}

inline ZVec zv_pseudo_rem(const ZVec& a, const ZVec& b) {
    if (b.empty())
        throw std::domain_error("pseudo-remainder by zero");
    int delta = zv_deg(a) - zv_deg(b);
    if (delta < 0)
        return a;
    const Integer& lb = b.back();
    ZVec r = a;
    int steps = 0;
    while (!r.empty() && r.size() >= b.size()) {
        Integer lr = r.back();
        std::size_t shift = r.size() - b.size();
        for (auto& c : r)
            c *= lb;
        for (std::size_t i = 0; i < b.size(); ++i)
            r[shift + i] -= lr * b[i];
        zv_normalize(r);
        ++steps;
    }
    // pad to the exact l^(delta+1) multiplier the subresultant theory expects
    for (; steps < delta + 1; ++steps)
        for (auto& c : r)
            c *= lb;
    return r;
}

/// gcd via primitive polynomial remainder sequence; result primitive with
/// positive leading coefficient.
inline ZVec zv_gcd(const ZVec& fa, const ZVec& fb) {
    if (fa.empty())
        return zv_primitive(fb);
    if (fb.empty())
        return zv_primitive(fa);
    ZVec a = zv_primitive(fa);
    ZVec b = zv_primitive(fb);
    if (zv_deg(a) < zv_deg(b))
        std::swap(a, b);
    while (!b.empty()) {
        if (zv_deg(b) == 0)
            return {Integer(1)};
        ZVec r = zv_primitive(zv_pseudo_rem(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline FpVec zv_mod_p(const ZVec& f, std::uint64_t p) {
    FpVec r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        r[i] = fp::from_integer(f[i], p);
    fpv_normalize(r);
    return r;
}

// ---------------------------------------------------------------------------
// Yun square-free decomposition over Z (char 0), f primitive.
// ---------------------------------------------------------------------------

inline std::vector<std::pair<ZVec, int>> zv_yun(const ZVec& f) {
    std::vector<std::pair<ZVec, int>> out;
    if (zv_deg(f) < 1)
        return out;
    ZVec fp = zv_derivative(f);
    ZVec g = zv_gcd(f, fp);
    if (zv_deg(g) == 0) {
        out.emplace_back(zv_primitive(f), 1);
        return out;
    }
    ZVec c = *zv_divide_exact(f, g);
    ZVec d = zv_sub(*zv_divide_exact(fp, g), zv_derivative(c));
    int i = 1;
    while (true) {
        ZVec a = zv_gcd(c, d);
        if (zv_deg(a) >= 1)
            out.emplace_back(a, i);
        ZVec c2 = *zv_divide_exact(c, a);
        if (zv_deg(c2) == 0)
            break;
        d = zv_sub(*zv_divide_exact(d, a), zv_derivative(c2));
        c = std::move(c2);
        ++i;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Berlekamp factorization over F_p (f monic square-free).
// ---------------------------------------------------------------------------

namespace detail {

struct FpNullspace {
    int nullity = 0;
    std::vector<FpVec> basis; // coefficient vectors, length deg f
};

inline FpNullspace berlekamp_nullspace(const FpVec& f, std::uint64_t p, bool want_basis) {
    int d = fpv_deg(f);
    FpVec xp = fpv_powmod({0, 1}, Integer(static_cast<unsigned long>(p)), f, p);
    // columns of Q: x^(jp) mod f
    std::vector<std::vector<std::uint64_t>> a(static_cast<std::size_t>(d),
                                              std::vector<std::uint64_t>(static_cast<std::size_t>(d), 0));
    FpVec cur = {1};
    for (int j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < cur.size(); ++i)
            a[i][static_cast<std::size_t>(j)] = cur[i];
        if (j + 1 < d)
            cur = fpv_mod(fpv_mul(cur, xp, p), f, p);
    }
    for (int i = 0; i < d; ++i) // Q - I
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] =
            fp::sub(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)], 1, p);

    // row echelon, tracking pivot columns
    std::vector<int> pivot_col(static_cast<std::size_t>(d), -1);
    int rank = 0;
    for (int col = 0; col < d && rank < d; ++col) {
        int sel = -1;
        for (int row = rank; row < d; ++row)
            if (a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] != 0) {
                sel = row;
                break;
            }
        if (sel < 0)
            continue;
        std::swap(a[static_cast<std::size_t>(sel)], a[static_cast<std::size_t>(rank)]);
        auto& prow = a[static_cast<std::size_t>(rank)];
        std::uint64_t inv = fp::inv(prow[static_cast<std::size_t>(col)], p);
        for (int j = col; j < d; ++j)
            prow[static_cast<std::size_t>(j)] = fp::mul(prow[static_cast<std::size_t>(j)], inv, p);
        for (int row = 0; row < d; ++row) {
            if (row == rank)
                continue;
            std::uint64_t m = a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
            if (m == 0)
                continue;
            for (int j = col; j < d; ++j)
                a[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] =
                    fp::sub(a[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)],
                            fp::mul(m, prow[static_cast<std::size_t>(j)], p), p);
        }
        pivot_col[static_cast<std::size_t>(rank)] = col;
        ++rank;
    }

    FpNullspace ns;
    ns.nullity = d - rank;
    if (!want_basis)
        return ns;
    std::vector<bool> is_pivot(static_cast<std::size_t>(d), false);
    for (int r = 0; r < rank; ++r)
        is_pivot[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(r)])] = true;
    for (int free_col = 0; free_col < d; ++free_col) {
        if (is_pivot[static_cast<std::size_t>(free_col)])
            continue;
        FpVec v(static_cast<std::size_t>(d), 0);
        v[static_cast<std::size_t>(free_col)] = 1;
        for (int r = 0; r < rank; ++r) {
            int pc = pivot_col[static_cast<std::size_t>(r)];
            std::uint64_t val = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(free_col)];
            v[static_cast<std::size_t>(pc)] = val == 0 ? 0 : p - val;
        }
        fpv_normalize(v);
        ns.basis.push_back(std::move(v));
    }
    return ns;
}

} // namespace detail

inline int berlekamp_factor_count(const FpVec& f, std::uint64_t p) {
    return detail::berlekamp_nullspace(f, p, false).nullity;
}

/// Monic irreducible factors of a monic square-free f over F_p (random
/// splitting, deterministic given the supplied generator).
inline std::vector<FpVec> berlekamp_split(const FpVec& f, std::uint64_t p, Rng& rng) {
    auto ns = detail::berlekamp_nullspace(f, p, true);
    int r = ns.nullity;
    std::vector<FpVec> factors = {fpv_monic(f, p)};
    if (r <= 1)
        return factors;
    const Integer half(static_cast<unsigned long>((p - 1) / 2));
    int guard = 0;
    while (static_cast<int>(factors.size()) < r) {
        if (++guard > 4096)
            throw std::logic_error("berlekamp splitting failed to converge");
        FpVec v;
        for (const auto& b : ns.basis) {
            std::uint64_t c = static_cast<std::uint64_t>(rng.uniform(0, static_cast<long>(p - 1)));
            if (c)
                v = fpv_add(v, fpv_scale(b, c, p), p);
        }
        if (fpv_deg(v) < 1)
            continue;
        std::vector<FpVec> next;
        for (auto& u : factors) {
            if (fpv_deg(u) <= 1) {
                next.push_back(std::move(u));
                continue;
            }
            FpVec w = fpv_mod(v, u, p);
            if (fpv_deg(w) < 1) {
                next.push_back(std::move(u));
                continue;
            }
            FpVec g0 = fpv_gcd(u, w, p);
            FpVec rest = u;
            if (fpv_deg(g0) >= 1 && fpv_deg(g0) < fpv_deg(u)) {
                next.push_back(g0);
                FpVec q, rr;
                fpv_divmod(rest, g0, p, q, rr);
                rest = fpv_monic(q, p);
            }
            if (fpv_deg(rest) >= 1) {
                FpVec a = fpv_powmod(w, half, rest, p);
                FpVec am1 = fpv_sub(a, {1}, p);
                FpVec g1 = fpv_gcd(rest, am1, p);
                if (fpv_deg(g1) >= 1 && fpv_deg(g1) < fpv_deg(rest)) {
                    next.push_back(g1);
                    FpVec q, rr;
                    fpv_divmod(rest, g1, p, q, rr);
                    next.push_back(fpv_monic(q, p));
                } else {
                    next.push_back(rest);
                }
            }
        }
        factors = std::move(next);
    }
    return factors;
}

// ---------------------------------------------------------------------------
// Hensel lifting (quadratic, pairwise over a balanced factor split).
// ---------------------------------------------------------------------------

namespace detail {

inline ZVec zm_norm(const ZVec& f, const Integer& m) {
    ZVec r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        mpz_mod(r[i].get_mpz_t(), f[i].get_mpz_t(), m.get_mpz_t());
    zv_normalize(r);
    return r;
}

inline ZVec zm_symmetric(const ZVec& f, const Integer& m) {
    Integer half = m / 2;
    ZVec r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        Integer c;
        mpz_mod(c.get_mpz_t(), f[i].get_mpz_t(), m.get_mpz_t());
        if (c > half)
            c -= m;
        r[i] = c;
    }
    zv_normalize(r);
    return r;
}

inline ZVec zm_mul(const ZVec& a, const ZVec& b, const Integer& m) {
    return zm_norm(zv_mul(a, b), m);
}

inline ZVec zm_sub(const ZVec& a, const ZVec& b, const Integer& m) {
    return zm_norm(zv_sub(a, b), m);
}

inline ZVec zm_add(const ZVec& a, const ZVec& b, const Integer& m) {
    return zm_norm(zv_add(a, b), m);
}

// division by monic g over Z/m
inline void zm_divmod_monic(const ZVec& f, const ZVec& g, const Integer& m, ZVec& q, ZVec& r) {
    if (g.empty() || g.back() != 1)
        throw std::logic_error("zm_divmod_monic: divisor must be monic");
    r = zm_norm(f, m);
    q.assign(r.size() >= g.size() ? r.size() - g.size() + 1 : 0, Integer(0));
    while (r.size() >= g.size() && !r.empty()) {
        Integer c = r.back();
        std::size_t shift = r.size() - g.size();
        q[shift] = c;
        for (std::size_t i = 0; i < g.size(); ++i) {
            Integer t = r[shift + i] - c * g[i];
            mpz_mod(r[shift + i].get_mpz_t(), t.get_mpz_t(), m.get_mpz_t());
        }
        zv_normalize(r);
    }
    zv_normalize(q);
}

// One quadratic Hensel step: from f = g*h (mod m), s*g + t*h = 1 (mod m),
// h monic, deg f = deg g + deg h, to the same data mod m^2.
inline void hensel_step(const Integer& m, const ZVec& f, ZVec& g, ZVec& h, ZVec& s, ZVec& t) {
    Integer m2 = m * m;
    ZVec e = zm_sub(f, zv_mul(g, h), m2);
    ZVec q, r;
    zm_divmod_monic(zv_mul(s, e), h, m2, q, r);
    ZVec g2 = zm_add(g, zm_add(zm_mul(t, e, m2), zm_mul(q, g, m2), m2), m2);
    ZVec h2 = zm_add(h, r, m2);
    ZVec b = zm_sub(zm_add(zm_mul(s, g2, m2), zm_mul(t, h2, m2), m2), {Integer(1)}, m2);
    ZVec c, d;
    zm_divmod_monic(zv_mul(s, b), h2, m2, c, d);
    ZVec s2 = zm_sub(s, d, m2);
    ZVec t2 = zm_sub(t, zm_add(zm_mul(t, b, m2), zm_mul(c, g2, m2), m2), m2);
    g = std::move(g2);
    h = std::move(h2);
    s = std::move(s2);
    t = std::move(t2);
}

inline ZVec fpv_to_zv(const FpVec& f) {
    ZVec r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        r[i] = Integer(static_cast<unsigned long>(f[i]));
    return r;
}

// Lift f = l * (product of monic leaves) from mod p to mod `target` (a power
// p^(2^j)); returns the lifted factors, monic mod target, leaf order kept.
inline std::vector<ZVec> hensel_lift_tree(const ZVec& f, std::uint64_t p, const Integer& target,
                                          const std::vector<FpVec>& leaves) {
    if (leaves.size() == 1) {
        ZVec fm = zm_norm(f, target);
        if (fm.empty())
            throw std::logic_error("hensel: zero image");
        Integer lead_inv;
        if (mpz_invert(lead_inv.get_mpz_t(), fm.back().get_mpz_t(), target.get_mpz_t()) == 0)
            throw std::logic_error("hensel: leading coefficient not invertible");
        return {zm_norm(zv_scale(fm, lead_inv), target)};
    }
    std::size_t half = (leaves.size() + 1) / 2;
    std::vector<FpVec> left(leaves.begin(), leaves.begin() + static_cast<long>(half));
    std::vector<FpVec> right(leaves.begin() + static_cast<long>(half), leaves.end());

    Integer pz(static_cast<unsigned long>(p));
    ZVec f_mod_p = zm_norm(f, pz);
    int leaf_deg_sum = 0;
    for (const auto& leaf : leaves)
        leaf_deg_sum += fpv_deg(leaf);
    if (zv_deg(f_mod_p) != leaf_deg_sum)
        throw std::logic_error("hensel: degree lost mod p");
    std::uint64_t l_mod_p = fp::from_integer(f_mod_p.back(), p);
    FpVec g0 = {l_mod_p};
    for (const auto& leaf : left)
        g0 = fpv_mul(g0, leaf, p);
    FpVec h0 = {1};
    for (const auto& leaf : right)
        h0 = fpv_mul(h0, leaf, p);
    FpVec gg, ss, tt;
    fpv_ext_gcd(g0, h0, p, gg, ss, tt);
    if (fpv_deg(gg) != 0)
        throw std::logic_error("hensel: factors not coprime mod p");

    ZVec g = fpv_to_zv(g0), h = fpv_to_zv(h0), s = fpv_to_zv(ss), t = fpv_to_zv(tt);
    Integer m = pz;
    while (m < target) {
        hensel_step(m, zm_norm(f, m * m), g, h, s, t);
        m *= m;
    }
    if (m != target)
        throw std::logic_error("hensel: modulus is not the expected power");

    auto out_left = hensel_lift_tree(g, p, target, left);
    auto out_right = hensel_lift_tree(h, p, target, right);
    out_left.insert(out_left.end(), out_right.begin(), out_right.end());
    return out_left;
}

inline Integer zv_l2_norm_ceil(const ZVec& f) {
    Integer s(0);
    for (const auto& c : f)
        s += c * c;
    Integer r;
    mpz_sqrt(r.get_mpz_t(), s.get_mpz_t());
    if (r * r < s)
        r += 1;
    return r;
}

// Bound on |coefficients| of l(f) * (any monic-normalized factor of f).
inline Integer zassenhaus_coeff_bound(const ZVec& f) {
    int d = zv_deg(f);
    Integer binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(d / 2));
    Integer lead = abs(f.back());
    return binom * zv_l2_norm_ceil(f) * lead;
}

} // namespace detail

/// Irreducible factors (primitive, positive leading coefficient) of a
/// primitive square-free f with deg >= 1. Classical Zassenhaus.
inline std::vector<ZVec> zassenhaus_squarefree(const ZVec& f, Rng& rng) {
    int d = zv_deg(f);
    if (d < 1)
        throw std::invalid_argument("zassenhaus: expected positive degree");
    if (d == 1)
        return {zv_primitive(f)};

    const auto& primes = prime_table();
    std::uint64_t best_p = 0;
    int best_count = d + 1;
    int examined = 0;
    for (std::size_t idx = 0; idx < primes.size() && examined < 3; idx += 23) {
        std::uint64_t p = primes[idx];
        if (fp::from_integer(f.back(), p) == 0)
            continue;
        FpVec fbar = fpv_monic(zv_mod_p(f, p), p);
        if (!fpv_is_squarefree(fbar, p))
            continue;
        ++examined;
        int count = berlekamp_factor_count(fbar, p);
        if (count < best_count) {
            best_count = count;
            best_p = p;
        }
        if (best_count == 1)
            break;
    }
    if (best_p == 0) {
        // bad-prime set is finite; a linear scan must find one
        for (std::uint64_t p : primes) {
            if (fp::from_integer(f.back(), p) == 0)
                continue;
            FpVec fbar = fpv_monic(zv_mod_p(f, p), p);
            if (!fpv_is_squarefree(fbar, p))
                continue;
            best_p = p;
            best_count = berlekamp_factor_count(fbar, p);
            break;
        }
        if (best_p == 0)
            throw std::logic_error("zassenhaus: no usable prime found");
    }
    if (best_count == 1)
        return {zv_primitive(f)};

    std::uint64_t p = best_p;
    FpVec fbar = fpv_monic(zv_mod_p(f, p), p);
    std::vector<FpVec> modular = berlekamp_split(fbar, p, rng);
    std::sort(modular.begin(), modular.end());

    Integer bound = 2 * detail::zassenhaus_coeff_bound(f) + 1;
    Integer target(static_cast<unsigned long>(p));
    while (target < bound)
        target *= target;
    std::vector<ZVec> pool = detail::hensel_lift_tree(f, p, target, modular);

    std::vector<ZVec> out;
    ZVec remaining = f;
    bool progress = true;
    while (progress && !pool.empty()) {
        progress = false;
        std::size_t n = pool.size();
        for (std::size_t card = 1; 2 * card <= n && !progress; ++card) {
            std::vector<std::size_t> idx(card);
            for (std::size_t i = 0; i < card; ++i)
                idx[i] = i;
            while (true) {
                ZVec prod = {remaining.back()};
                for (std::size_t i : idx)
                    prod = detail::zm_mul(prod, pool[i], target);
                ZVec cand = zv_primitive(detail::zm_symmetric(prod, target));
                if (zv_deg(cand) >= 1) {
                    if (auto q = zv_divide_exact(remaining, cand)) {
                        out.push_back(cand);
                        remaining = *q;
                        std::vector<ZVec> next_pool;
                        for (std::size_t i = 0, k = 0; i < pool.size(); ++i) {
                            if (k < idx.size() && idx[k] == i) {
                                ++k;
                                continue;
                            }
                            next_pool.push_back(std::move(pool[i]));
                        }
                        pool = std::move(next_pool);
                        progress = true;
                        break;
                    }
                }
                // next combination
                long pos = static_cast<long>(card) - 1;
                while (pos >= 0 && idx[static_cast<std::size_t>(pos)] ==
                                       n - card + static_cast<std::size_t>(pos))
                    --pos;
                if (pos < 0)
                    break;
                ++idx[static_cast<std::size_t>(pos)];
                for (std::size_t j = static_cast<std::size_t>(pos) + 1; j < card; ++j)
                    idx[j] = idx[j - 1] + 1;
            }
        }
    }
    if (zv_deg(remaining) >= 1)
        out.push_back(zv_primitive(remaining));
    return out;
}

/// Complete factorization over Z: f = unit_content * prod parts^mult with
/// primitive positive-leading irreducible parts.
struct ZFactorization {
    Integer content;
    std::vector<std::pair<ZVec, int>> parts;
};

inline ZFactorization zv_factor(const ZVec& f) {
    if (f.empty())
        throw std::invalid_argument("factor of zero polynomial");
    ZFactorization out;
    Integer c = zv_content(f);
    if (f.back() < 0)
        c = -c;
    out.content = c;
    ZVec prim(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        prim[i] = f[i] / c;
    if (zv_deg(prim) < 1)
        return out;
    Rng rng(0x5eedfac7u);
    for (auto& [part, mult] : zv_yun(prim)) {
        for (auto& irr : zassenhaus_squarefree(part, rng))
            out.parts.emplace_back(std::move(irr), mult);
    }
    std::sort(out.parts.begin(), out.parts.end());
    return out;
}

} // namespace polykeller
