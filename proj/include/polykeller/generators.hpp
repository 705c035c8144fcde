#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "constructions.hpp"
#include "factor.hpp"
#include "matrix.hpp"
#include "rng.hpp"

namespace polykeller {

enum class GenKind { TameKeller, SymmetricKeller, NilpotentCubic, Druzkowski, RandomPoly, RandomSquarefree };

inline std::string gen_kind_name(GenKind k) {
    switch (k) {
    case GenKind::TameKeller: return "tame-keller";
    case GenKind::SymmetricKeller: return "symmetric-keller";
    case GenKind::NilpotentCubic: return "nilpotent-cubic";
    case GenKind::Druzkowski: return "druzkowski";
    case GenKind::RandomPoly: return "random-poly";
    case GenKind::RandomSquarefree: return "random-squarefree";
    }
    return "?";
}

inline std::optional<GenKind> gen_kind_from_name(const std::string& s) {
    for (GenKind k : {GenKind::TameKeller, GenKind::SymmetricKeller, GenKind::NilpotentCubic,
                      GenKind::Druzkowski, GenKind::RandomPoly, GenKind::RandomSquarefree})
        if (gen_kind_name(k) == s)
            return k;
    return std::nullopt;
}

/// Identical spec => identical instance; `steps` doubles as the term count
/// for the polynomial kinds.
struct GeneratorSpec {
    GenKind kind = GenKind::TameKeller;
    int arity = 2;
    int degree_bound = 3;
    int steps = 3;
    std::uint64_t seed = 0;
};

inline std::string describe(const GeneratorSpec& s) {
    std::ostringstream out;
    out << gen_kind_name(s.kind) << "(n=" << s.arity << ",deg=" << s.degree_bound
        << ",steps=" << s.steps << ",seed=" << s.seed << ")";
    return out.str();
}

using Instance = std::variant<Polynomial, PolyMap>;

namespace gendetail {

inline Monomial random_monomial(Rng& rng, int arity, int degree, const std::vector<int>& allowed) {
    std::vector<int> e(static_cast<std::size_t>(arity), 0);
    for (int k = 0; k < degree; ++k) {
        int v = allowed[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(allowed.size()) - 1))];
        ++e[static_cast<std::size_t>(v)];
    }
    return Monomial(std::move(e));
}

inline Rational random_coeff(Rng& rng, bool allow_fraction) {
    long num = 0;
    while (num == 0)
        num = rng.uniform(-3, 3);
    long den = 1;
    if (allow_fraction && rng.chance(1, 4))
        den = rng.uniform(2, 3);
    return rational_of(num, den);
}

inline Polynomial random_poly(Rng& rng, int arity, int degree_bound, int terms, bool allow_fraction) {
    std::vector<int> allowed;
    for (int i = 0; i < arity; ++i)
        allowed.push_back(i);
    Polynomial f(arity);
    while (f.is_zero()) {
        for (int t = 0; t < terms; ++t) {
            int d = static_cast<int>(rng.uniform(0, degree_bound));
            f.add_term(random_monomial(rng, arity, d, allowed), random_coeff(rng, allow_fraction));
        }
    }
    return f;
}

/// Homogeneous of exact degree `degree` in the allowed variables (nonzero).
inline Polynomial random_form(Rng& rng, int arity, int degree, const std::vector<int>& allowed,
                              int terms) {
    Polynomial f(arity);
    while (f.is_zero())
        for (int t = 0; t < terms; ++t) {
            long num = 0;
            while (num == 0)
                num = rng.uniform(-2, 2);
            f.add_term(random_monomial(rng, arity, degree, allowed), rational_of(num));
        }
    return f;
}

/// Unimodular-ish invertible matrix built from shears, swaps and sign flips.
inline ScalarMatrix random_invertible(Rng& rng, int n) {
    ScalarMatrix t = ScalarMatrix::identity(n);
    if (n == 1) {
        t.at(0, 0) = rational_of(rng.chance(1, 2) ? 1 : -1);
        return t;
    }
    int ops = static_cast<int>(rng.uniform(1, n + 1));
    for (int k = 0; k < ops; ++k) {
        int i = static_cast<int>(rng.uniform(0, n - 1));
        int j = static_cast<int>(rng.uniform(0, n - 1));
        if (i == j)
            j = (j + 1) % n;
        long c = 0;
        while (c == 0)
            c = rng.uniform(-2, 2);
        for (int col = 0; col < n; ++col)
            t.at(i, col) += rational_of(c) * t.at(j, col);
    }
    if (rng.chance(1, 3)) {
        int i = static_cast<int>(rng.uniform(0, n - 1));
        int j = static_cast<int>(rng.uniform(0, n - 1));
        if (i != j)
            for (int col = 0; col < n; ++col)
                std::swap(t.at(i, col), t.at(j, col));
    }
    return t;
}

inline TameSequence random_tame_sequence(Rng& rng, int n, int degree_bound, int steps) {
    TameSequence seq{n, {}};
    VariableFrame frame = default_frame(n);
    PolyMap current = PolyMap::identity(frame);
    for (int s = 0; s < steps; ++s) {
        TameStep step;
        bool affine = n == 1 || rng.chance(1, 3);
        if (affine) {
            std::vector<Rational> b(static_cast<std::size_t>(n), Rational(0));
            for (auto& x : b)
                x = rational_of(rng.uniform(-2, 2));
            step = make_affine_step(random_invertible(rng, n), std::move(b));
        } else {
            int idx = static_cast<int>(rng.uniform(0, n - 1));
            std::vector<int> others;
            for (int i = 0; i < n; ++i)
                if (i != idx)
                    others.push_back(i);
            int d = static_cast<int>(rng.uniform(1, std::min(3, std::max(1, degree_bound))));
            Polynomial p(n);
            int terms = static_cast<int>(rng.uniform(1, 2));
            for (int t = 0; t < terms; ++t) {
                long c = 0;
                while (c == 0)
                    c = rng.uniform(-2, 2);
                p.add_term(random_monomial(rng, n, static_cast<int>(rng.uniform(1, d)), others),
                           rational_of(c));
            }
            if (p.is_zero())
                continue;
            step = ElementaryStep{idx, p};
        }
        PolyMap candidate = compose(detail::step_map(step, frame), current);
        if (candidate.degree() > degree_bound)
            continue;
        current = std::move(candidate);
        seq.steps.push_back(std::move(step));
    }
    return seq;
}

} // namespace gendetail

inline PolyMap gen_tame_keller(int n, int degree_bound, int steps, std::uint64_t seed) {
    if (n < 1)
        throw std::invalid_argument("gen: arity must be positive");
    Rng rng(derive_seed(seed, 0x7a3eU));
    TameSequence seq = gendetail::random_tame_sequence(rng, n, degree_bound, steps);
    PolyMap f = tame_compose(seq).first;
    if (!is_keller(f).ok)
        throw std::logic_error("tame-keller generator emitted a non-Keller map");
    return f;
}

inline PolyMap gen_nilpotent_cubic(int n, std::uint64_t seed) {
    if (n < 1)
        throw std::invalid_argument("gen: arity must be positive");
    Rng rng(derive_seed(seed, 0x417cU));
    VariableFrame frame = default_frame(n);
    std::vector<Polynomial> comps(static_cast<std::size_t>(n), Polynomial::zero(n));
    bool any = false;
    for (int i = 0; i + 1 < n; ++i) {
        if (rng.chance(1, 4))
            continue; // some components stay zero
        std::vector<int> allowed;
        for (int j = i + 1; j < n; ++j)
            allowed.push_back(j);
        comps[static_cast<std::size_t>(i)] =
            gendetail::random_form(rng, n, 3, allowed, static_cast<int>(rng.uniform(1, 2)));
        any = true;
    }
    if (!any && n >= 2) {
        long c = rng.chance(1, 2) ? 1 : -1;
        comps[0] = rational_of(c) * pow(Polynomial::variable(n, n - 1), 3);
    }
    PolyMap h(frame, std::move(comps));
    if (!is_nilpotent(jacobian(h)).ok)
        throw std::logic_error("nilpotent-cubic generator emitted a non-nilpotent Jacobian");
    return h;
}

inline PolyMap gen_symmetric_keller(int n, int degree_bound, int steps, std::uint64_t seed) {
    Rng rng(derive_seed(seed, 0x59a7U));
    Polynomial f = gendetail::random_poly(rng, n, std::min(3, std::max(1, degree_bound)), 3, false);
    PolyMap base = gen_tame_keller(n, std::max(2, degree_bound / 2), steps, derive_seed(seed, 0x59a8U));
    PolyMap g = grad_reduction(f, base);
    if (!is_symmetric(jacobian(g)))
        throw std::logic_error("symmetric-keller generator emitted an asymmetric Jacobian");
    Polynomial lhs = determinant(jacobian(g));
    Polynomial rhs = detail::lift_to_arity(determinant(jacobian(base)), 2 * n);
    rhs = rhs * rhs;
    if (n % 2 == 1)
        rhs = -rhs;
    if (lhs != rhs)
        throw std::logic_error("symmetric-keller generator violated the determinant identity");
    return g;
}

inline PolyMap gen_druzkowski(int n, std::uint64_t seed) {
    if (n < 1)
        throw std::invalid_argument("gen: arity must be positive");
    Rng rng(derive_seed(seed, 0xd72aU));
    VariableFrame frame = default_frame(n);
    std::vector<Polynomial> comps;
    comps.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Polynomial h(n);
        if (i + 1 < n && rng.chance(3, 4)) {
            Polynomial lin(n);
            for (int j = i + 1; j < n; ++j)
                lin += rational_of(rng.uniform(-2, 2)) * Polynomial::variable(n, j);
            if (!lin.is_zero())
                h = pow(lin, 3);
        }
        comps.push_back(Polynomial::variable(n, i) + h);
    }
    PolyMap f(frame, std::move(comps));
    if (!is_druzkowski(f, 3).ok)
        throw std::logic_error("druzkowski generator emitted a non-power-linear map");
    if (!is_keller(f).ok)
        throw std::logic_error("druzkowski generator emitted a non-Keller map");
    return f;
}

inline Polynomial gen_random_poly(int arity, int degree_bound, int terms, std::uint64_t seed) {
    if (arity < 1)
        throw std::invalid_argument("gen: arity must be positive");
    Rng rng(derive_seed(seed, 0x90c4U));
    return gendetail::random_poly(rng, arity, std::max(0, degree_bound), terms > 0 ? terms : 4, true);
}

inline Polynomial gen_random_squarefree(int arity, int degree_bound, int terms, std::uint64_t seed) {
    if (arity < 1)
        throw std::invalid_argument("gen: arity must be positive");
    Rng rng(derive_seed(seed, 0x5fedU));
    for (int attempt = 0;; ++attempt) {
        Polynomial f = gendetail::random_poly(rng, arity, std::max(1, degree_bound), terms > 0 ? terms : 4,
                                              false);
        Polynomial part = squarefree_part(f);
        if (part.is_constant())
            continue;
        if (!is_squarefree(part).ok)
            throw std::logic_error("random-squarefree generator emitted a non-square-free part");
        return part;
    }
}

/// Seeded instance generation; identical spec gives an identical instance.
inline Instance gen(const GeneratorSpec& s) {
    switch (s.kind) {
    case GenKind::TameKeller:
        return gen_tame_keller(s.arity, s.degree_bound, s.steps, s.seed);
    case GenKind::SymmetricKeller:
        return gen_symmetric_keller(s.arity, s.degree_bound, s.steps, s.seed);
    case GenKind::NilpotentCubic:
        return gen_nilpotent_cubic(s.arity, s.seed);
    case GenKind::Druzkowski:
        return gen_druzkowski(s.arity, s.seed);
    case GenKind::RandomPoly:
        return gen_random_poly(s.arity, s.degree_bound, s.steps, s.seed);
    case GenKind::RandomSquarefree:
        return gen_random_squarefree(s.arity, s.degree_bound, s.steps, s.seed);
    }
    throw std::logic_error("unknown generator kind");
}

} // namespace polykeller
