#pragma once

#include <atomic>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "constructions.hpp"
#include "factor.hpp"
#include "generators.hpp"
#include "matrix.hpp"
#include "parse.hpp"

namespace polykeller {

enum class Verdict { Pass, Fail, Inapplicable };

inline std::string verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inapplicable: return "inapplicable";
    }
    return "?";
}

/// Outcome of one checker run on one instance. Fail reports carry a concrete
/// counterexample that re-checks deterministically.
struct PropertyReport {
    std::string property;
    std::string instance;
    Verdict verdict = Verdict::Inapplicable;
    std::vector<std::pair<std::string, std::string>> witnesses; // (role, value)
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::string note;
};

namespace vdetail {

inline std::string print_in_default_frame(const Polynomial& f) {
    return print_polynomial(f, default_frame(f.arity()));
}

inline std::string print_mu(const std::vector<Rational>& mu) {
    std::ostringstream out;
    out << "(";
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (i)
            out << ", ";
        out << rational_str(mu[i]);
    }
    out << ")";
    return out.str();
}

inline Polynomial mu_combo(const PolyMap& g, const std::vector<Rational>& mu) {
    Polynomial combo = Polynomial::constant(g.arity(), mu.back());
    for (int i = 0; i < g.size(); ++i)
        combo += mu[static_cast<std::size_t>(i)] * g[i];
    return combo;
}

// mu in [-3,3]^(m+1) with a nonzero entry among the first `nonzero_within`
inline std::vector<Rational> sample_mu(Rng& rng, int m, int nonzero_within) {
    std::vector<Rational> mu(static_cast<std::size_t>(m) + 1, Rational(0));
    while (true) {
        for (int i = 0; i <= m; ++i)
            mu[static_cast<std::size_t>(i)] = rational_of(rng.uniform(-3, 3));
        for (int i = 0; i < nonzero_within; ++i)
            if (mu[static_cast<std::size_t>(i)] != 0)
                return mu;
    }
}

inline std::string factor_witness(const Factorization& fac, int arity) {
    std::ostringstream out;
    VariableFrame fr = default_frame(arity);
    out << rational_str(fac.unit);
    for (const auto& [g, m] : fac.factors)
        out << " * (" << print_polynomial(g, fr) << ")^" << m;
    return out.str();
}

/// Sufficient certificate that the partials generate the unit ideal: either
/// some partial is a nonzero constant, or some partial equals c(1 + w) with
/// w^k divisible by another partial for a small k (geometric-series
/// certificate). Undetermined means "could not certify", never "false".
inline bool certify_unimodular(const std::vector<Polynomial>& partials) {
    for (const auto& p : partials)
        if (!p.is_zero() && p.is_constant())
            return true;
    for (std::size_t i = 0; i < partials.size(); ++i) {
        const Polynomial& p = partials[i];
        Rational c = p.coeff_of_constant();
        if (c == 0)
            continue;
        Polynomial w = (1 / c) * p - Rational(1);
        if (w.is_zero())
            return true;
        Polynomial wk = Polynomial::one(p.arity());
        for (int k = 1; k <= 4; ++k) {
            wk = wk * w;
            for (std::size_t j = 0; j < partials.size(); ++j) {
                if (j == i || partials[j].is_zero())
                    continue;
                if (divides(partials[j], wk).ok)
                    return true;
            }
        }
    }
    return false;
}

} // namespace vdetail

// ---------------------------------------------------------------------------
// Individual checkers.
// ---------------------------------------------------------------------------

/// Keller maps send square-free polynomials to square-free polynomials.
inline PropertyReport check_keller_squarefree_preservation(const PolyMap& f, const Polynomial& w) {
    PropertyReport rep;
    rep.property = "squarefree-preservation";
    auto kel = is_keller(f);
    if (!kel.ok) {
        rep.verdict = Verdict::Inapplicable;
        rep.note = "precondition failed: F is not a Keller map";
        rep.witnesses.emplace_back("det jac F", print_polynomial(kel.det, f.frame));
        return rep;
    }
    if (!is_squarefree(w).ok) {
        rep.verdict = Verdict::Inapplicable;
        rep.note = "precondition failed: w is not square-free";
        return rep;
    }
    Polynomial wf = substitute(w, f.components);
    auto sf = is_squarefree(wf);
    rep.verdict = sf.ok ? Verdict::Pass : Verdict::Fail;
    rep.trials = 1;
    if (!sf.ok) {
        rep.witnesses.emplace_back("w(F)", print_polynomial(wf, f.frame));
        rep.witnesses.emplace_back("repeated-factor gcd", print_polynomial(sf.witness, f.frame));
    }
    return rep;
}

/// The checkable direction: g^2 | w(F) for square-free g, w implies
/// g | det jac F.
inline PropertyReport check_j41_direction(const PolyMap& f, const Polynomial& g, const Polynomial& w) {
    PropertyReport rep;
    rep.property = "j41-direction";
    if (!is_squarefree(g).ok || !is_squarefree(w).ok) {
        rep.verdict = Verdict::Inapplicable;
        rep.note = "precondition failed: g and w must be square-free";
        return rep;
    }
    Polynomial wf = substitute(w, f.components);
    auto hyp = divides(g * g, wf);
    auto con = divides(g, determinant(jacobian(f)));
    rep.trials = 1;
    rep.verdict = (!hyp.ok || con.ok) ? Verdict::Pass : Verdict::Fail;
    rep.witnesses.emplace_back("g^2 | w(F)", hyp.ok ? "true" : "false");
    rep.witnesses.emplace_back("g | det jac F", con.ok ? "true" : "false");
    if (rep.verdict == Verdict::Fail) {
        rep.witnesses.emplace_back("g", print_polynomial(g, f.frame));
        rep.witnesses.emplace_back("w(F)", print_polynomial(wf, f.frame));
    }
    return rep;
}

/// The five equivalent statements for Keller maps with components L_i H_i,
/// deg L_i = 1, must decide identically.
inline PropertyReport check_lindiv(const PolyMap& f, const PolyMap& l, const PolyMap& h) {
    PropertyReport rep;
    rep.property = "lindiv-equivalence";
    int n = f.arity();
    if (!is_keller(f).ok) {
        rep.verdict = Verdict::Inapplicable;
        rep.note = "precondition failed: F is not a Keller map";
        return rep;
    }
    if (l.size() != n || h.size() != n || l.arity() != n || h.arity() != n) {
        rep.verdict = Verdict::Inapplicable;
        rep.note = "precondition failed: shape mismatch";
        return rep;
    }
    for (int i = 0; i < n; ++i) {
        if (l[i].degree() != 1 || l[i] * h[i] != f[i]) {
            rep.verdict = Verdict::Inapplicable;
            rep.note = "precondition failed: F_i != L_i H_i with deg L_i = 1";
            return rep;
        }
    }

    bool s1 = true;
    for (int i = 0; i < n && s1; ++i) {
        Rational l0 = l[i].coeff_of_constant();
        Polynomial lin = l0 * homogeneous_part(h[i], 1);
        Polynomial ell = l[i] - l0;
        s1 = lin.is_zero() || divides(ell, lin).ok;
    }

    ScalarMatrix j(n);
    std::vector<Rational> l0(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        l0[static_cast<std::size_t>(i)] = l[i].coeff_of_constant();
        for (int k = 0; k < n; ++k) {
            Polynomial d = differentiate(l[i], k);
            j.at(i, k) = d.is_zero() ? Rational(0) : d.constant_value();
        }
    }
    std::vector<std::vector<Rational>> plain, aug;
    for (int i = 0; i < n; ++i) {
        std::vector<Rational> row, row2;
        for (int k = 0; k < n; ++k) {
            row.push_back(j.at(i, k));
            row2.push_back(j.at(i, k));
        }
        row2.push_back(l0[static_cast<std::size_t>(i)]);
        plain.push_back(std::move(row));
        aug.push_back(std::move(row2));
    }
    bool s2 = detail::rational_matrix_rank(plain) == detail::rational_matrix_rank(aug);
    bool s3 = scalar_determinant(j) != 0;
    bool s4 = f.degree() == 1;
    bool s5 = true;
    for (int i = 0; i < n && s5; ++i)
        s5 = !f[i].is_constant() && !is_reducible(f[i]);

    bool all_equal = s1 == s2 && s2 == s3 && s3 == s4 && s4 == s5;
    rep.trials = 5;
    rep.verdict = all_equal ? Verdict::Pass : Verdict::Fail;
    auto b = [](bool x) { return x ? "true" : "false"; };
    rep.witnesses.emplace_back("1) linear part of L_i(0)H_i divisible by L_i - L_i(0)", b(s1));
    rep.witnesses.emplace_back("2) L(0) in column space of jac L", b(s2));
    rep.witnesses.emplace_back("3) det jac L nonzero constant", b(s3));
    rep.witnesses.emplace_back("4) deg F = 1", b(s4));
    rep.witnesses.emplace_back("5) every F_i irreducible", b(s5));
    return rep;
}

/// Scan one slot of mu over a value list; at most d^2 - 1 of the resulting
/// combinations may be reducible (over the closure when determinable).
inline PropertyReport scan_mu_reducible(const PolyMap& f, int slot, const std::vector<Rational>& mu,
                                        const std::vector<Rational>& values) {
    PropertyReport rep;
    rep.property = "irredlc-bound";
    int n = f.arity();
    if (!is_keller(f).ok) {
        rep.verdict = Verdict::Inapplicable;
        rep.note = "precondition failed: F is not a Keller map";
        return rep;
    }
    if (slot < 1 || slot > n + 1 || static_cast<int>(mu.size()) != n + 1) {
        rep.verdict = Verdict::Inapplicable;
        rep.note = "precondition failed: slot or mu shape out of range";
        return rep;
    }
    bool ok = false;
    for (int j = 1; j <= n; ++j)
        if (j != slot && mu[static_cast<std::size_t>(j - 1)] != 0)
            ok = true;
    if (!ok) {
        rep.verdict = Verdict::Inapplicable;
        rep.note = "precondition failed: need mu_j != 0 for some j <= n, j != slot";
        return rep;
    }
    int d = f.degree();
    long bound = static_cast<long>(d) * d - 1;
    int count = 0;
    bool rational_fallback = false;
    for (const auto& c : values) {
        std::vector<Rational> m = mu;
        m[static_cast<std::size_t>(slot - 1)] = c;
        Polynomial combo = vdetail::mu_combo(f, m);
        if (combo.is_constant())
            continue;
        auto verdict = irreducibility(combo);
        bool reducible;
        if (verdict.absolute != AbsoluteVerdict::Undetermined)
            reducible = verdict.absolute == AbsoluteVerdict::Reducible;
        else {
            reducible = !verdict.rational_irreducible;
            rational_fallback = true;
        }
        if (reducible) {
            ++count;
            rep.witnesses.emplace_back("reducible at slot value " + rational_str(c),
                                       print_polynomial(combo, f.frame));
        }
    }
    rep.trials = values.size();
    if (rational_fallback)
        rep.note = "some verdicts used the rational field (absolute undetermined)";
    rep.witnesses.emplace_back("count", std::to_string(count));
    rep.witnesses.emplace_back("bound d^2-1", std::to_string(bound));
    rep.verdict = count <= bound ? Verdict::Pass : Verdict::Fail;
    return rep;
}

/// Chain for polynomials with term degrees {0, 1, d} and unimodular gradient:
/// reducible with (d <= 3 or f0 = 0) forces a degree-1 divisor, and a
/// degree-1 divisor forces f0 = 0, f1 | f and f1^2 | fd.
inline PropertyReport check_irredcor_chain(const Polynomial& f) {
    PropertyReport rep;
    rep.property = "irredcor-chain";
    int d = f.degree();
    if (d < 2) {
        rep.verdict = Verdict::Inapplicable;
        rep.note = "precondition failed: degree below 2";
        return rep;
    }
    for (const auto& [m, c] : f.terms())
        if (m.degree() != 0 && m.degree() != 1 && m.degree() != d) {
            rep.verdict = Verdict::Inapplicable;
            rep.note = "precondition failed: term degrees not contained in {0, 1, d}";
            return rep;
        }
    std::vector<Polynomial> partials;
    for (int i = 0; i < f.arity(); ++i)
        partials.push_back(differentiate(f, i));
    if (!gcd_of_partials(f).is_constant()) {
        rep.verdict = Verdict::Inapplicable;
        rep.note = "precondition failed: gcd of partials nonconstant, gradient not unimodular";
        return rep;
    }
    if (!vdetail::certify_unimodular(partials)) {
        rep.verdict = Verdict::Inapplicable;
        rep.note = "unimodularity of the gradient undetermined; skipped";
        return rep;
    }

    Factorization fac = factor_multivariate(f);
    bool reducible = fac.total_multiplicity() >= 2;
    bool has_linear_divisor = false;
    for (const auto& [g, m] : fac.factors)
        if (g.degree() == 1)
            has_linear_divisor = true;
    Polynomial f0 = homogeneous_part(f, 0);
    Polynomial f1 = homogeneous_part(f, 1);
    Polynomial fd = homogeneous_part(f, d);

    rep.trials = 1;
    if (reducible && (d <= 3 || f0.is_zero()) && !has_linear_divisor) {
        rep.verdict = Verdict::Fail;
        rep.note = "1) => 2) violated: reducible without a degree-1 divisor";
        rep.witnesses.emplace_back("factorization", vdetail::factor_witness(fac, f.arity()));
        return rep;
    }
    if (has_linear_divisor) {
        bool ok = f0.is_zero() && divides(f1, f).ok && divides(f1 * f1, fd).ok;
        if (!ok) {
            rep.verdict = Verdict::Fail;
            rep.note = "2) => 3) violated";
            rep.witnesses.emplace_back("factorization", vdetail::factor_witness(fac, f.arity()));
            rep.witnesses.emplace_back("f0", vdetail::print_in_default_frame(f0));
            rep.witnesses.emplace_back("f1", vdetail::print_in_default_frame(f1));
            return rep;
        }
    }
    rep.verdict = Verdict::Pass;
    return rep;
}

/// Components of symmetric Keller maps whose nonlinear part is homogeneous;
/// irreducible, and in the cubic case irreducible under constant shifts.
inline PropertyReport check_bakext_i(const PolyMap& g, int i) {
    PropertyReport rep;
    rep.property = "bakext-component";
    auto kel = is_keller(g);
    if (!kel.ok) {
        rep.verdict = Verdict::Inapplicable;
        rep.note = "precondition failed: G is not a Keller map";
        return rep;
    }
    if (!is_symmetric(jacobian(g))) {
        rep.verdict = Verdict::Inapplicable;
        rep.note = "precondition failed: jac G is not symmetric";
        return rep;
    }
    const Polynomial& gi = g[i];
    Polynomial ell = homogeneous_part(gi, 1);
    if (differentiate(ell, i).is_zero()) {
        rep.verdict = Verdict::Inapplicable;
        rep.note = "precondition failed: d/dx_i of the linear part vanishes";
        return rep;
    }
    Polynomial rest = gi - ell;
    if (!is_homogeneous(rest)) {
        rep.verdict = Verdict::Inapplicable;
        rep.note = "precondition failed: G_i minus its linear part is not homogeneous";
        return rep;
    }
    rep.trials = 1;
    if (is_reducible(gi)) {
        rep.verdict = Verdict::Fail;
        rep.witnesses.emplace_back("G_i", print_polynomial(gi, g.frame));
        return rep;
    }
    if (!rest.is_zero() && rest.degree() == 3) {
        for (long c = -3; c <= 3; ++c) {
            if (c == 0)
                continue;
            ++rep.trials;
            Polynomial shifted = gi + rational_of(c);
            if (is_reducible(shifted)) {
                rep.verdict = Verdict::Fail;
                rep.witnesses.emplace_back("G_i + c reducible at c", std::to_string(c));
                rep.witnesses.emplace_back("G_i", print_polynomial(gi, g.frame));
                return rep;
            }
        }
    }
    rep.verdict = Verdict::Pass;
    return rep;
}

/// If G_i = l + l^2 h + c with l the linear part and dl/dx_i != 0 on a
/// symmetric Keller map, then h = 0.
inline PropertyReport check_symdiag(const PolyMap& g, int i) {
    PropertyReport rep;
    rep.property = "symdiag";
    if (!is_keller(g).ok) {
        rep.verdict = Verdict::Inapplicable;
        rep.note = "precondition failed: G is not a Keller map";
        return rep;
    }
    if (!is_symmetric(jacobian(g))) {
        rep.verdict = Verdict::Inapplicable;
        rep.note = "precondition failed: jac G is not symmetric";
        return rep;
    }
    const Polynomial& gi = g[i];
    Polynomial ell = homogeneous_part(gi, 1);
    rep.trials = 1;
    if (ell.is_zero() || differentiate(ell, i).is_zero()) {
        rep.verdict = Verdict::Pass;
        rep.note = "vacuous: dl/dx_i = 0 branch";
        return rep;
    }
    Polynomial rest = gi - ell - homogeneous_part(gi, 0);
    if (rest.is_zero()) {
        rep.verdict = Verdict::Pass; // h = 0, deg G_i = 1
        return rep;
    }
    auto div = divides(ell * ell, rest);
    if (!div.ok) {
        rep.verdict = Verdict::Pass;
        rep.note = "vacuous: G_i has no l + l^2 h + c decomposition";
        return rep;
    }
    rep.verdict = Verdict::Fail; // decomposition exists with h != 0
    rep.witnesses.emplace_back("h", print_polynomial(div.quotient, g.frame));
    rep.witnesses.emplace_back("G_i", print_polynomial(gi, g.frame));
    return rep;
}

/// det jac_{x,y} grad(f + y^T F) = (-1)^n (det jac F)^2, and for Keller F the
/// sampled combinations with a nonzero x-block coefficient are irreducible.
inline PropertyReport check_symm_lemma(const Polynomial& f, const PolyMap& F, int samples,
                                       std::uint64_t seed) {
    PropertyReport rep;
    rep.property = "symm-det-identity";
    rep.seed = seed;
    int n = F.arity();
    PolyMap g = grad_reduction(f, F);
    Polynomial lhs = determinant(jacobian(g));
    Polynomial rhs = detail::lift_to_arity(determinant(jacobian(F)), 2 * n);
    rhs = rhs * rhs;
    if (n % 2 == 1)
        rhs = -rhs;
    rep.trials = 1;
    if (lhs != rhs) {
        rep.verdict = Verdict::Fail;
        rep.witnesses.emplace_back("det jac G", print_polynomial(lhs, g.frame));
        rep.witnesses.emplace_back("(-1)^n (det jac F)^2", print_polynomial(rhs, g.frame));
        return rep;
    }
    if (is_keller(F).ok && samples > 0) {
        Rng rng(derive_seed(seed, 0x3123U));
        for (int s = 0; s < samples; ++s) {
            auto mu = vdetail::sample_mu(rng, g.size(), n);
            Polynomial combo = vdetail::mu_combo(g, mu);
            ++rep.trials;
            if (combo.is_constant() || is_reducible(combo)) {
                rep.verdict = Verdict::Fail;
                rep.witnesses.emplace_back("mu", vdetail::print_mu(mu));
                rep.witnesses.emplace_back("combination", print_polynomial(combo, g.frame));
                return rep;
            }
        }
    } else if (!is_keller(F).ok) {
        rep.note = "irreducibility clause skipped: F is not a Keller map";
    }
    rep.verdict = Verdict::Pass;
    return rep;
}

/// For F = x + H, H cubic homogeneous with nilpotent Jacobian: the number of
/// reducible combinations (mod scalars, outside span{1}) is at most n - 4.
inline PropertyReport check_irredth_sampling(const PolyMap& h, int samples, std::uint64_t seed) {
    PropertyReport rep;
    rep.property = "irredth-sampling";
    rep.seed = seed;
    int n = h.arity();
    if (h.size() != n) {
        rep.verdict = Verdict::Inapplicable;
        rep.note = "precondition failed: H must be square";
        return rep;
    }
    for (int i = 0; i < n; ++i) {
        const Polynomial& hi = h[i];
        if (!hi.is_zero() && !(is_homogeneous(hi) && hi.degree() == 3)) {
            rep.verdict = Verdict::Inapplicable;
            rep.note = "precondition failed: H is not cubic homogeneous";
            return rep;
        }
    }
    if (!is_nilpotent(jacobian(h)).ok) {
        rep.verdict = Verdict::Inapplicable;
        rep.note = "precondition failed: jac H is not nilpotent";
        return rep;
    }
    std::vector<Polynomial> comps;
    for (int i = 0; i < n; ++i)
        comps.push_back(Polynomial::variable(n, i) + h[i]);
    PolyMap f(h.frame, std::move(comps));

    Rng rng(derive_seed(seed, 0x1e47U));
    std::set<std::vector<Rational>> reducible_rays;
    for (int s = 0; s < samples; ++s) {
        auto mu = vdetail::sample_mu(rng, n, n);
        Polynomial combo = vdetail::mu_combo(f, mu);
        if (combo.is_constant() || !is_reducible(combo))
            continue;
        // normalize modulo scalar multiples: first nonzero component entry 1
        std::vector<Rational> key = mu;
        for (int i = 0; i < n; ++i)
            if (mu[static_cast<std::size_t>(i)] != 0) {
                Rational inv = 1 / mu[static_cast<std::size_t>(i)];
                for (auto& x : key)
                    x *= inv;
                break;
            }
        if (reducible_rays.insert(key).second)
            rep.witnesses.emplace_back("reducible combination mu", vdetail::print_mu(mu));
    }
    long bound = std::max(n - 4, 0);
    rep.trials = static_cast<std::uint64_t>(samples);
    rep.witnesses.emplace_back("distinct reducible rays", std::to_string(reducible_rays.size()));
    rep.witnesses.emplace_back("bound max(n-4, 0)", std::to_string(bound));
    rep.verdict = static_cast<long>(reducible_rays.size()) <= bound ? Verdict::Pass : Verdict::Fail;
    return rep;
}

/// Every sampled affine-linear combination of the extension's components
/// (nonzero on some component slot) is irreducible.
inline PropertyReport check_extension_irreducibility(const PolyMap& f, ExtensionVariant variant,
                                                     const ExtensionParams& params, int samples,
                                                     std::uint64_t seed) {
    PropertyReport rep;
    rep.property = "extension-irreducibility";
    rep.seed = seed;
    if (!is_keller(f).ok) {
        rep.verdict = Verdict::Inapplicable;
        rep.note = "precondition failed: F is not a Keller map";
        return rep;
    }
    if (is_scalar_variant(variant)) {
        bool cubic_nq = f.degree() <= 3;
        for (int i = 0; i < f.size() && cubic_nq; ++i)
            cubic_nq = homogeneous_part(f[i], 2).is_zero();
        if (!cubic_nq) {
            rep.verdict = Verdict::Inapplicable;
            rep.note = "precondition failed: scalar variants need a cubic map without quadratic terms";
            return rep;
        }
    }
    if (samples < 1) {
        rep.verdict = Verdict::Inapplicable;
        rep.note = "no samples requested; the quantifier ranges over component coefficients";
        return rep;
    }
    PolyMap g = extend(f, variant, params);
    Rng rng(derive_seed(seed, 0xe87eU));
    for (int s = 0; s < samples; ++s) {
        auto mu = vdetail::sample_mu(rng, g.size(), g.size());
        Polynomial combo = vdetail::mu_combo(g, mu);
        if (combo.is_constant() || is_reducible(combo)) {
            rep.verdict = Verdict::Fail;
            rep.trials = static_cast<std::uint64_t>(s + 1);
            rep.witnesses.emplace_back("mu", vdetail::print_mu(mu));
            rep.witnesses.emplace_back("combination", print_polynomial(combo, g.frame));
            return rep;
        }
    }
    rep.trials = static_cast<std::uint64_t>(samples);
    rep.verdict = Verdict::Pass;
    return rep;
}

// ---------------------------------------------------------------------------
// Suite runner: deterministic per-instance seeds, optional parallelism,
// canonical ordering.
// ---------------------------------------------------------------------------

enum class PropertyId {
    SquarefreePreservation,
    J41Direction,
    Lindiv,
    IrredlcBound,
    IrredcorChain,
    BakextI,
    Symdiag,
    SymmDetIdentity,
    IrredthSampling,
    ExtensionIrreducibility,
};

inline std::string property_name(PropertyId id) {
    switch (id) {
    case PropertyId::SquarefreePreservation: return "squarefree-preservation";
    case PropertyId::J41Direction: return "j41-direction";
    case PropertyId::Lindiv: return "lindiv";
    case PropertyId::IrredlcBound: return "irredlc-bound";
    case PropertyId::IrredcorChain: return "irredcor-chain";
    case PropertyId::BakextI: return "bakext-i";
    case PropertyId::Symdiag: return "symdiag";
    case PropertyId::SymmDetIdentity: return "symm-det-identity";
    case PropertyId::IrredthSampling: return "irredth-sampling";
    case PropertyId::ExtensionIrreducibility: return "extension-irreducibility";
    }
    return "?";
}

inline std::optional<PropertyId> property_from_name(const std::string& s) {
    for (PropertyId id :
         {PropertyId::SquarefreePreservation, PropertyId::J41Direction, PropertyId::Lindiv,
          PropertyId::IrredlcBound, PropertyId::IrredcorChain, PropertyId::BakextI, PropertyId::Symdiag,
          PropertyId::SymmDetIdentity, PropertyId::IrredthSampling, PropertyId::ExtensionIrreducibility})
        if (property_name(id) == s)
            return id;
    return std::nullopt;
}

struct SuiteConfig {
    int n = 2;
    int degree = 3;
    int steps = 3;
    int trials = 20;
    int samples = 100;
    std::uint64_t seed = 0;
    int jobs = 1;
    ExtensionVariant variant = ExtensionVariant::CHL;
    int d = 3;
};

namespace vdetail {

inline PolyMap random_affine_invertible(Rng& rng, int n) {
    ScalarMatrix t = gendetail::random_invertible(rng, n);
    std::vector<Rational> b(static_cast<std::size_t>(n), Rational(0));
    for (auto& x : b)
        x = rational_of(rng.uniform(-2, 2));
    return detail::affine_map(t, b, default_frame(n));
}

inline PropertyReport run_one(PropertyId id, const SuiteConfig& cfg, int index) {
    std::uint64_t iseed = derive_seed(cfg.seed, static_cast<std::uint64_t>(index));
    Rng rng(iseed);
    PropertyReport rep;
    int n = std::max(1, cfg.n);
    switch (id) {
    case PropertyId::SquarefreePreservation: {
        PolyMap f = gen_tame_keller(n, cfg.degree, cfg.steps, iseed);
        Polynomial w = gen_random_squarefree(n, 3, 3, derive_seed(iseed, 1));
        rep = check_keller_squarefree_preservation(f, w);
        break;
    }
    case PropertyId::J41Direction: {
        if (index % 2 == 0) {
            // constructed instances where the hypothesis g^2 | w(F) holds
            Polynomial g = gen_random_squarefree(n, 2, 2, derive_seed(iseed, 1));
            std::vector<Polynomial> comps;
            for (int i = 0; i < n; ++i)
                comps.push_back(gendetail::random_poly(rng, n, 2, 2, false));
            comps[0] = g * g * comps[0];
            PolyMap f(default_frame(n), std::move(comps));
            Polynomial w = Polynomial::variable(n, 0); // y1
            rep = check_j41_direction(f, g, w);
        } else {
            PolyMap f = gen_tame_keller(n, cfg.degree, cfg.steps, derive_seed(iseed, 2));
            Polynomial g = gen_random_squarefree(n, 2, 2, derive_seed(iseed, 3));
            Polynomial w = gen_random_squarefree(n, 2, 3, derive_seed(iseed, 4));
            rep = check_j41_direction(f, g, w);
        }
        break;
    }
    case PropertyId::Lindiv: {
        PolyMap f = random_affine_invertible(rng, n);
        std::vector<Polynomial> lcomps, hcomps;
        for (int i = 0; i < n; ++i) {
            long num = 0;
            while (num == 0)
                num = rng.uniform(-3, 3);
            long den = rng.uniform(1, 2);
            Rational hi = rational_of(num, den);
            hcomps.push_back(Polynomial::constant(n, hi));
            lcomps.push_back((1 / hi) * f[i]);
        }
        rep = check_lindiv(f, PolyMap(f.frame, std::move(lcomps)), PolyMap(f.frame, std::move(hcomps)));
        break;
    }
    case PropertyId::IrredlcBound: {
        PolyMap f = gen_tame_keller(n, cfg.degree, cfg.steps, iseed);
        int d = std::max(1, f.degree());
        int slot = static_cast<int>(rng.uniform(1, n + 1));
        std::vector<Rational> mu;
        while (true) {
            mu.assign(static_cast<std::size_t>(n) + 1, Rational(0));
            for (int i = 0; i <= n; ++i)
                mu[static_cast<std::size_t>(i)] = rational_of(rng.uniform(-3, 3));
            bool ok = false;
            for (int j = 1; j <= n; ++j)
                if (j != slot && mu[static_cast<std::size_t>(j - 1)] != 0)
                    ok = true;
            if (ok)
                break;
        }
        std::vector<Rational> values;
        for (long c = -static_cast<long>(d) * d; c < static_cast<long>(d) * d; ++c)
            values.push_back(rational_of(c));
        rep = scan_mu_reducible(f, slot, mu, values);
        break;
    }
    case PropertyId::IrredcorChain: {
        int kind = index % 3;
        int i0 = static_cast<int>(rng.uniform(0, n - 1));
        Polynomial f(n);
        if (kind == 0) {
            std::vector<int> all;
            for (int i = 0; i < n; ++i)
                all.push_back(i);
            int d = std::max(2, cfg.degree);
            f = Polynomial::variable(n, i0) + gendetail::random_form(rng, n, d, all, 2);
        } else if (kind == 1 && n >= 2) {
            int j = (i0 + 1) % n;
            long c = 0;
            while (c == 0)
                c = rng.uniform(-2, 2);
            Polynomial x = Polynomial::variable(n, i0);
            f = x + rational_of(c) * x * x * Polynomial::variable(n, j);
        } else {
            std::vector<int> others;
            for (int i = 0; i < n; ++i)
                if (i != i0)
                    others.push_back(i);
            if (others.empty())
                others.push_back(i0);
            int d = std::max(2, cfg.degree);
            f = Polynomial::variable(n, i0) + gendetail::random_form(rng, n, d, others, 2);
        }
        rep = check_irredcor_chain(f);
        rep.instance = vdetail::print_in_default_frame(f);
        break;
    }
    case PropertyId::BakextI: {
        PolyMap h = gen_nilpotent_cubic(n, iseed);
        std::vector<Polynomial> comps;
        for (int i = 0; i < n; ++i)
            comps.push_back(Polynomial::variable(n, i) + h[i]);
        PolyMap f(h.frame, std::move(comps));
        Polynomial f4(n);
        if (index % 2 == 1) {
            std::vector<int> all;
            for (int i = 0; i < n; ++i)
                all.push_back(i);
            f4 = gendetail::random_form(rng, n, 4, all, 2);
        }
        PolyMap g = symred(f4, f, rational_of(1), rational_of(-1));
        for (int i = 0; i < g.size(); ++i) {
            rep = check_bakext_i(g, i);
            if (rep.verdict == Verdict::Fail)
                break;
        }
        rep.trials = static_cast<std::uint64_t>(g.size());
        break;
    }
    case PropertyId::Symdiag: {
        PolyMap g = gen_symmetric_keller(n, cfg.degree, cfg.steps, iseed);
        for (int i = 0; i < g.size(); ++i) {
            rep = check_symdiag(g, i);
            if (rep.verdict == Verdict::Fail)
                break;
        }
        rep.trials = static_cast<std::uint64_t>(g.size());
        break;
    }
    case PropertyId::SymmDetIdentity: {
        Polynomial f = gendetail::random_poly(rng, n, std::min(3, cfg.degree), 3, false);
        if (index % 3 == 2) {
            std::vector<Polynomial> comps;
            for (int i = 0; i < n; ++i)
                comps.push_back(gendetail::random_poly(rng, n, 2, 2, false));
            PolyMap F(default_frame(n), std::move(comps));
            rep = check_symm_lemma(f, F, cfg.samples, iseed);
        } else {
            PolyMap F = gen_tame_keller(n, cfg.degree, cfg.steps, derive_seed(iseed, 5));
            rep = check_symm_lemma(f, F, cfg.samples, iseed);
        }
        break;
    }
    case PropertyId::IrredthSampling: {
        PolyMap h = gen_nilpotent_cubic(n, iseed);
        rep = check_irredth_sampling(h, cfg.samples, iseed);
        break;
    }
    case PropertyId::ExtensionIrreducibility: {
        ExtensionParams params;
        params.d = cfg.d;
        PolyMap f = PolyMap::identity(n);
        if (is_scalar_variant(cfg.variant)) {
            PolyMap h = gen_nilpotent_cubic(n, iseed);
            std::vector<Polynomial> comps;
            for (int i = 0; i < n; ++i)
                comps.push_back(Polynomial::variable(n, i) + h[i]);
            f = PolyMap(h.frame, std::move(comps));
            params.lambda.assign(static_cast<std::size_t>(n), Rational(0));
            if (cfg.variant == ExtensionVariant::GH)
                params.tail_h = gendetail::random_poly(rng, n + 1, 3, 2, false);
        } else {
            f = gen_tame_keller(n, cfg.degree, cfg.steps, iseed);
            if (cfg.variant == ExtensionVariant::GHL) {
                std::vector<Polynomial> tails;
                for (int i = 0; i < n; ++i)
                    tails.push_back(gendetail::random_poly(rng, 2 * n, 2, 2, false));
                params.tail_H = PolyMap(default_frame(n).extended(detail::block_names("y", n)),
                                        std::move(tails));
            }
        }
        rep = check_extension_irreducibility(f, cfg.variant, params, cfg.samples, iseed);
        break;
    }
    }
    rep.seed = iseed;
    if (rep.instance.empty())
        rep.instance = property_name(id) + "#" + std::to_string(index);
    else
        rep.instance = property_name(id) + "#" + std::to_string(index) + ": " + rep.instance;
    return rep;
}

} // namespace vdetail

namespace vdetail {

inline PropertyReport run_one_guarded(PropertyId id, const SuiteConfig& cfg, int index) {
    try {
        return run_one(id, cfg, index);
    } catch (const std::exception& e) {
        PropertyReport rep;
        rep.property = property_name(id);
        rep.instance = property_name(id) + "#" + std::to_string(index);
        rep.verdict = Verdict::Fail;
        rep.note = std::string("checker raised: ") + e.what();
        rep.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(index));
        return rep;
    }
}

} // namespace vdetail

/// Runs `trials` seeded instances of a property; reports come back in
/// instance order regardless of the number of worker threads.
inline std::vector<PropertyReport> run_property_suite(PropertyId id, const SuiteConfig& cfg) {
    std::vector<PropertyReport> reports(static_cast<std::size_t>(std::max(0, cfg.trials)));
    if (cfg.trials <= 0)
        return reports;
    int jobs = std::max(1, cfg.jobs);
    if (jobs == 1) {
        for (int i = 0; i < cfg.trials; ++i)
            reports[static_cast<std::size_t>(i)] = vdetail::run_one_guarded(id, cfg, i);
        return reports;
    }
    std::atomic<int> next{0};
    auto worker = [&]() {
        while (true) {
            int i = next.fetch_add(1);
            if (i >= cfg.trials)
                return;
            reports[static_cast<std::size_t>(i)] = vdetail::run_one_guarded(id, cfg, i);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();
    return reports;
}

} // namespace polykeller
