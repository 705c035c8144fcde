#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "gcd.hpp"
#include "intpoly.hpp"
#include "rng.hpp"
#include "ruppert.hpp"

namespace polykeller {

/// unit * prod(factors^multiplicity) = input, exactly; factors are primitive,
/// irreducible over Q, positive-leading in graded-lex, canonically sorted.
struct Factorization {
    Rational unit = 1;
    std::vector<std::pair<Polynomial, int>> factors;

    Polynomial reassemble(int arity) const {
        Polynomial p = Polynomial::constant(arity, unit);
        for (const auto& [g, m] : factors)
            p = p * pow(g, m);
        return p;
    }

    int total_multiplicity() const {
        int t = 0;
        for (const auto& [g, m] : factors)
            t += m;
        return t;
    }
};

struct DivisionVerdict {
    bool ok = false;
    Polynomial quotient;
};

/// Exact division test: does g divide f?
inline DivisionVerdict divides(const Polynomial& g, const Polynomial& f) {
    auto q = divide_exact(f, g);
    if (!q)
        return {false, Polynomial::zero(f.arity())};
    return {true, *q};
}

namespace detail {

// Sound fast path: a mod-p line specialization with surviving leading form
// whose image is square-free certifies square-freeness over Q.
inline bool squarefree_certificate(const Polynomial& f) {
    if (f.arity() == 0 || f.degree() < 2)
        return f.degree() >= 0;
    Rng rng(0x5afef2eeULL);
    const auto& primes = prime_table();
    for (int pi = 0; pi < 3; ++pi) {
        std::uint64_t p = primes[static_cast<std::size_t>(29 + 97 * pi)];
        for (int trial = 0; trial < 4; ++trial) {
            std::vector<std::uint64_t> a(static_cast<std::size_t>(f.arity()));
            std::vector<std::uint64_t> b(static_cast<std::size_t>(f.arity()));
            for (auto& x : a)
                x = static_cast<std::uint64_t>(rng.uniform(1, static_cast<long>(p - 1)));
            for (auto& x : b)
                x = static_cast<std::uint64_t>(rng.uniform(0, static_cast<long>(p - 1)));
            if (leadform_eval_mod(f, a, p) == 0)
                continue;
            FpVec fh = specialize_line_mod(f, a, b, p);
            if (fpv_deg(fh) != f.degree())
                continue;
            if (fpv_is_squarefree(fh, p))
                return true;
        }
    }
    return false;
}

} // namespace detail

struct SquarefreeVerdict {
    bool ok = false;
    Polynomial witness; // the offending gcd with the partials when false
};

/// f is square-free iff gcd(f, df/dx1, ..., df/dxn) is a nonzero constant.
inline SquarefreeVerdict is_squarefree(const Polynomial& f) {
    if (f.is_zero())
        return {false, f};
    Polynomial g = normalize_primitive(f);
    if (g.is_constant())
        return {true, Polynomial::one(f.arity())};
    if (detail::squarefree_certificate(g))
        return {true, Polynomial::one(f.arity())};
    Polynomial acc = g;
    for (int i = 0; i < f.arity(); ++i) {
        Polynomial d = differentiate(g, i);
        if (d.is_zero())
            continue;
        acc = gcd(acc, d);
        if (acc.is_constant())
            return {true, acc};
    }
    return {acc.is_constant(), acc};
}

/// Product of the distinct irreducible factors: f / gcd(f, partials).
inline Polynomial squarefree_part(const Polynomial& f) {
    if (f.is_zero())
        throw std::invalid_argument("squarefree_part of zero");
    Polynomial g = normalize_primitive(f);
    if (g.is_constant())
        return Polynomial::one(f.arity());
    if (detail::squarefree_certificate(g))
        return g;
    Polynomial acc = g;
    for (int i = 0; i < f.arity(); ++i) {
        Polynomial d = differentiate(g, i);
        if (d.is_zero())
            continue;
        acc = gcd(acc, d);
        if (acc.is_constant())
            break;
    }
    if (acc.is_constant())
        return g;
    return normalize_primitive(*divide_exact(g, acc));
}

/// gcd of all first partials; 0 for constants by convention, so a constant
/// result is never produced vacuously.
inline Polynomial gcd_of_partials(const Polynomial& f) {
    if (f.is_constant())
        return Polynomial::zero(f.arity());
    Polynomial acc = Polynomial::zero(f.arity());
    for (int i = 0; i < f.arity(); ++i) {
        acc = gcd(acc, differentiate(f, i));
        if (!acc.is_zero() && acc.is_constant())
            break;
    }
    return acc;
}

namespace detail {

struct KroneckerBox {
    std::vector<int> vars; // essential variables, ascending
    std::vector<long long> weights;
    long long image_degree = 0;
};

inline KroneckerBox kronecker_box(const Polynomial& f, const std::vector<int>& vars) {
    KroneckerBox box;
    box.vars = vars;
    long long w = 1;
    for (int v : vars) {
        box.weights.push_back(w);
        long long radix = static_cast<long long>(f.degree_in(v)) + 1;
        box.image_degree += w * (radix - 1);
        w *= radix;
        if (w > 2'000'000LL)
            throw std::runtime_error("kronecker image too large for this toolkit");
    }
    return box;
}

inline ZVec kronecker_image(const Polynomial& f, const KroneckerBox& box) {
    ZVec img(static_cast<std::size_t>(box.image_degree) + 1);
    for (const auto& [m, c] : f.terms()) {
        long long idx = 0;
        for (std::size_t k = 0; k < box.vars.size(); ++k)
            idx += box.weights[k] * m.exponent(box.vars[k]);
        img[static_cast<std::size_t>(idx)] = c.get_num();
    }
    zv_normalize(img);
    return img;
}

inline Polynomial kronecker_decode(const ZVec& g, const KroneckerBox& box, int arity) {
    Polynomial out(arity);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i] == 0)
            continue;
        long long idx = static_cast<long long>(i);
        std::vector<int> e(static_cast<std::size_t>(arity), 0);
        for (std::size_t k = box.vars.size(); k-- > 0;) {
            e[static_cast<std::size_t>(box.vars[k])] = static_cast<int>(idx / box.weights[k]);
            idx %= box.weights[k];
        }
        out.add_term(Monomial(std::move(e)), Rational(g[i]));
    }
    return out;
}

inline Polynomial zvec_to_poly(const ZVec& g, int arity, int var) {
    Polynomial out(arity);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i] == 0)
            continue;
        std::vector<int> e(static_cast<std::size_t>(arity), 0);
        e[static_cast<std::size_t>(var)] = static_cast<int>(i);
        out.add_term(Monomial(std::move(e)), Rational(g[i]));
    }
    return out;
}

// Degree-preserving random plane section x_i -> a_i s + b_i t + c_i.
inline std::optional<Polynomial> plane_section(const Polynomial& f, Rng& rng) {
    int n = f.arity();
    for (int attempt = 0; attempt < 12; ++attempt) {
        std::vector<Polynomial> images;
        std::vector<Polynomial> directions;
        images.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            Rational a = rational_of(rng.uniform(-3, 3));
            Rational b = rational_of(rng.uniform(-3, 3));
            Rational c = rational_of(rng.uniform(-2, 2));
            Polynomial dir = a * Polynomial::variable(2, 0) + b * Polynomial::variable(2, 1);
            directions.push_back(dir);
            images.push_back(dir + Polynomial::constant(2, c));
        }
        Polynomial top = homogeneous_part(f, f.degree());
        if (substitute(top, directions).is_zero())
            continue;
        return substitute(f, images);
    }
    return std::nullopt;
}

// One-sided certificate for >= 3 essential variables: a degree-preserving
// plane section that is irreducible over Q forces f to be irreducible over Q.
inline bool plane_section_irreducible(const Polynomial& f);

// strips per-variable monomial content into `out`
inline Polynomial strip_monomial_content(Polynomial f, std::vector<std::pair<Polynomial, int>>& out) {
    for (int v = 0; v < f.arity(); ++v) {
        int mn = 1 << 30;
        for (const auto& [m, c] : f.terms())
            mn = std::min(mn, m.exponent(v));
        if (mn <= 0 || f.is_zero())
            continue;
        Polynomial shifted(f.arity());
        for (const auto& [m, c] : f.terms()) {
            std::vector<int> e = m.exponents();
            e[static_cast<std::size_t>(v)] -= mn;
            shifted.add_term(Monomial(std::move(e)), c);
        }
        out.emplace_back(Polynomial::variable(f.arity(), v), mn);
        f = std::move(shifted);
    }
    return f;
}

// factor a primitive, positive-leading, nonconstant polynomial; appends
// (irreducible factor, multiplicity) pairs to out
inline void factor_core(Polynomial f, std::vector<std::pair<Polynomial, int>>& out) {
    while (true) {
        f = strip_monomial_content(f, out);
        std::vector<int> vars = essential_vars(f);
        if (vars.empty())
            return;
        if (f.degree() == 1) {
            out.emplace_back(normalize_primitive(f), 1);
            return;
        }
        if (vars.size() == 1) {
            ZVec zf(static_cast<std::size_t>(f.degree_in(vars[0])) + 1);
            for (const auto& [m, c] : f.terms())
                zf[static_cast<std::size_t>(m.exponent(vars[0]))] = c.get_num();
            zv_normalize(zf);
            for (const auto& [part, mult] : zv_factor(zf).parts)
                out.emplace_back(zvec_to_poly(part, f.arity(), vars[0]), mult);
            return;
        }

        // linear in some variable: f = A x_v + B factors as gcd(A, B) times
        // an irreducible polynomial that is linear in x_v with coprime parts
        int lin_var = -1;
        for (int v : vars)
            if (f.degree_in(v) == 1) {
                lin_var = v;
                break;
            }
        if (lin_var >= 0) {
            Polynomial a = f.coeff_in(lin_var, 1);
            Polynomial b = f.coeff_in(lin_var, 0);
            Polynomial d = gcd(a, b);
            Polynomial core = normalize_primitive(*divide_exact(f, d));
            out.emplace_back(core, 1);
            if (d.is_constant())
                return;
            f = d;
            continue;
        }

        if (vars.size() >= 3 && plane_section_irreducible(f)) {
            out.emplace_back(normalize_primitive(f), 1);
            return;
        }

        // Kronecker substitution: mixed radix over the per-variable degrees
        KroneckerBox box = kronecker_box(f, vars);
        ZFactorization zfac = zv_factor(kronecker_image(f, box));
        std::vector<ZVec> pool;
        for (const auto& [part, mult] : zfac.parts)
            for (int i = 0; i < mult; ++i)
                pool.push_back(part);

        // a minimal true factor uses at most half the pool: the complement of
        // any larger factor multiset is itself a factor multiset
        bool found = false;
        for (std::size_t card = 1; 2 * card <= pool.size() && !found; ++card) {
            std::vector<std::size_t> idx(card);
            for (std::size_t i = 0; i < card; ++i)
                idx[i] = i;
            while (!found) {
                ZVec prod = {Integer(1)};
                for (std::size_t i : idx)
                    prod = zv_mul(prod, pool[i]);
                Polynomial cand = normalize_primitive(kronecker_decode(prod, box, f.arity()));
                if (cand.degree() >= 1 && cand.degree() < f.degree()) {
                    auto q = divide_exact(f, cand);
                    if (q) {
                        int mult = 1;
                        Polynomial rest = *q;
                        while (auto q2 = divide_exact(rest, cand)) {
                            ++mult;
                            rest = *q2;
                        }
                        out.emplace_back(cand, mult);
                        f = normalize_primitive(rest);
                        found = true;
                        break;
                    }
                }
                long pos = static_cast<long>(card) - 1;
                while (pos >= 0 &&
                       idx[static_cast<std::size_t>(pos)] ==
                           pool.size() - card + static_cast<std::size_t>(pos))
                    --pos;
                if (pos < 0)
                    break;
                ++idx[static_cast<std::size_t>(pos)];
                for (std::size_t j = static_cast<std::size_t>(pos) + 1; j < card; ++j)
                    idx[j] = idx[j - 1] + 1;
            }
        }
        if (found) {
            if (f.is_constant())
                return;
            continue;
        }
        out.emplace_back(normalize_primitive(f), 1);
        return;
    }
}

} // namespace detail

/// Complete irreducible factorization over Q. The product identity is
/// re-checked exactly before returning.
inline Factorization factor_multivariate(const Polynomial& f) {
    if (f.is_zero())
        throw std::invalid_argument("factorization of the zero polynomial");
    auto [unit, prim] = integer_normalized(f);
    std::vector<std::pair<Polynomial, int>> raw;
    if (!prim.is_constant())
        detail::factor_core(prim, raw);

    std::map<Polynomial, int> agg;
    for (auto& [g, m] : raw)
        agg[g] += m;
    Factorization out;
    for (auto& [g, m] : agg)
        out.factors.emplace_back(g, m);

    Polynomial prod = Polynomial::one(f.arity());
    for (const auto& [g, m] : out.factors)
        prod = prod * pow(g, m);
    auto u = divide_exact(f, prod);
    if (!u || !u->is_constant() || u->is_zero())
        throw std::logic_error("factorization product check failed");
    out.unit = u->constant_value();
    return out;
}

/// Classical Zassenhaus pipeline for arity-1 input.
inline Factorization factor_univariate(const Polynomial& f) {
    if (f.arity() != 1)
        throw std::invalid_argument("factor_univariate expects an arity-1 polynomial");
    if (f.is_zero())
        throw std::invalid_argument("factorization of the zero polynomial");
    return factor_multivariate(f);
}

namespace detail {

inline bool plane_section_irreducible(const Polynomial& f) {
    Rng rng(0xb1ec3705ULL);
    for (int trial = 0; trial < 3; ++trial) {
        auto section = plane_section(f, rng);
        if (!section)
            return false;
        Factorization fac = factor_multivariate(*section);
        if (fac.total_multiplicity() == 1)
            return true;
    }
    return false;
}

} // namespace detail

/// >= 2 irreducible pieces counted with multiplicity. Units and constants are
/// not reducible (they are not products of two non-units).
inline bool is_reducible(const Polynomial& f) {
    if (f.is_zero() || f.is_constant())
        return false;
    return factor_multivariate(f).total_multiplicity() >= 2;
}

struct ShiftScanResult {
    int count = 0;
    std::vector<std::pair<Rational, Factorization>> witnesses;
};

/// Number of c in `shifts` with f - c reducible over Q, with the found
/// factorizations as witnesses.
inline ShiftScanResult count_reducible_shifts(const Polynomial& f, const std::vector<Rational>& shifts) {
    ShiftScanResult out;
    for (const auto& c : shifts) {
        Polynomial g = f - c;
        if (g.is_zero() || g.is_constant())
            continue;
        Factorization fac = factor_multivariate(g);
        if (fac.total_multiplicity() >= 2) {
            ++out.count;
            out.witnesses.emplace_back(c, std::move(fac));
        }
    }
    return out;
}

enum class AbsoluteVerdict { Irreducible, Reducible, Undetermined };

struct IrreducibilityVerdict {
    bool rational_irreducible = false;
    std::vector<Polynomial> rational_witnesses; // factors, expanded, when reducible
    AbsoluteVerdict absolute = AbsoluteVerdict::Undetermined;
    std::string certificate_rational;
    std::string certificate_absolute;
};

/// Rational irreducibility decided exactly by factorization; absolute
/// irreducibility by Ruppert's criterion, directly for bivariate input and
/// through degree-preserving plane sections (3 unanimous trials) otherwise.
inline IrreducibilityVerdict irreducibility(const Polynomial& f) {
    if (f.is_zero())
        throw std::invalid_argument("irreducibility of the zero polynomial");
    IrreducibilityVerdict v;

    if (f.is_constant()) {
        v.rational_irreducible = false;
        v.certificate_rational = "unit (degree 0)";
        v.absolute = AbsoluteVerdict::Reducible;
        v.certificate_absolute = "unit (degree 0)";
        v.rational_witnesses.push_back(f);
        return v;
    }

    Factorization fac = factor_multivariate(f);
    v.rational_irreducible = fac.total_multiplicity() == 1;
    v.certificate_rational = "kronecker factorization";
    if (!v.rational_irreducible)
        for (const auto& [g, m] : fac.factors)
            for (int i = 0; i < m; ++i)
                v.rational_witnesses.push_back(g);

    if (f.degree() == 1) {
        v.absolute = AbsoluteVerdict::Irreducible;
        v.certificate_absolute = "degree 1";
        return v;
    }
    if (!v.rational_irreducible) {
        v.absolute = AbsoluteVerdict::Reducible;
        v.certificate_absolute = "rational factorization";
        return v;
    }

    auto vars = detail::essential_vars(f);
    if (vars.size() <= 1) {
        v.absolute = AbsoluteVerdict::Reducible;
        v.certificate_absolute = "univariate of degree >= 2 splits over the closure";
        return v;
    }
    if (vars.size() == 2) {
        RuppertResult r = ruppert_test(f);
        if (r == RuppertResult::AbsolutelyIrreducible) {
            v.absolute = AbsoluteVerdict::Irreducible;
            v.certificate_absolute = "ruppert dimension 0";
        } else if (r == RuppertResult::NotAbsolutelyIrreducible) {
            v.absolute = AbsoluteVerdict::Reducible;
            v.certificate_absolute = "ruppert dimension >= 1";
        } else {
            v.absolute = AbsoluteVerdict::Undetermined;
            v.certificate_absolute = "ruppert inapplicable";
        }
        return v;
    }

    // n >= 3: unanimous Ruppert-irreducible plane sections certify; anything
    // else stays undetermined (a reducible section proves nothing over Q-bar)
    Rng rng(0xab50107eULL);
    int irreducible_trials = 0;
    int applicable = 0;
    for (int t = 0; t < 3; ++t) {
        auto section = detail::plane_section(f, rng);
        if (!section)
            continue;
        RuppertResult r = ruppert_test(*section);
        if (r == RuppertResult::Inapplicable)
            continue;
        ++applicable;
        if (r == RuppertResult::AbsolutelyIrreducible)
            ++irreducible_trials;
    }
    if (applicable == 3 && irreducible_trials == 3) {
        v.absolute = AbsoluteVerdict::Irreducible;
        v.certificate_absolute = "3/3 degree-preserving plane sections ruppert-irreducible";
    } else {
        v.absolute = AbsoluteVerdict::Undetermined;
        v.certificate_absolute = "plane-section trials inconclusive";
    }
    return v;
}

} // namespace polykeller
