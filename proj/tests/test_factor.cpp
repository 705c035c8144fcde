#include "test_util.hpp"

#include <algorithm>
#include <set>

using namespace tk;

namespace {

// multiset of (printed factor, multiplicity), canonical for comparisons
std::multiset<std::pair<std::string, int>> factor_multiset(const Factorization& fac) {
    std::multiset<std::pair<std::string, int>> out;
    for (const auto& [g, m] : fac.factors)
        out.emplace(S(g), m);
    return out;
}

void check_product_identity(const Polynomial& f, const Factorization& fac) {
    CHECK(fac.reassemble(f.arity()) == f);
}

} // namespace

TEST_CASE("univariate factorization worked examples", "[factor]") {
    Polynomial f = P("x1^3 - 3*x1 + 2", 1);
    Factorization fac = factor_univariate(f);
    check_product_identity(f, fac);
    auto ms = factor_multiset(fac);
    CHECK(ms == std::multiset<std::pair<std::string, int>>{{"x1 - 1", 2}, {"x1 + 2", 1}});

    Factorization irr = factor_univariate(P("x1^2 + 1", 1));
    CHECK(irr.factors.size() == 1);
    CHECK(irr.factors[0].second == 1);

    Factorization six = factor_univariate(P("6*x1", 1));
    CHECK(six.unit == rational_of(6));
    CHECK(factor_multiset(six) == std::multiset<std::pair<std::string, int>>{{"x1", 1}});

    CHECK_THROWS_AS(factor_univariate(Polynomial::zero(1)), std::invalid_argument);
    CHECK_THROWS_AS(factor_univariate(P("x1*x2", 2)), std::invalid_argument);
}

TEST_CASE("univariate stress shapes", "[factor]") {
    // splits modulo every prime yet is irreducible over Q
    Factorization f1 = factor_univariate(P("x1^4 + 1", 1));
    CHECK(f1.total_multiplicity() == 1);

    Factorization f2 = factor_univariate(P("x1^4 + x1^3 + x1^2 + x1 + 1", 1));
    CHECK(f2.total_multiplicity() == 1);

    // leading-coefficient handling
    Polynomial g = P("2*x1 + 1", 1) * P("3*x1 + 2", 1) * P("x1^2 + x1 + 1", 1);
    Factorization f3 = factor_univariate(g);
    check_product_identity(g, f3);
    CHECK(f3.total_multiplicity() == 3);

    // product of eight distinct linear factors
    Polynomial w = Polynomial::one(1);
    for (long k = 1; k <= 8; ++k)
        w = w * (P("x1", 1) - rational_of(k));
    Factorization f4 = factor_univariate(w);
    check_product_identity(w, f4);
    CHECK(f4.factors.size() == 8);

    // rational coefficients: the unit carries the denominators
    Polynomial h = P("1/2*x1^2 - 1/2", 1);
    Factorization f5 = factor_univariate(h);
    check_product_identity(h, f5);
    CHECK(f5.unit == rational_of(1, 2));
}

TEST_CASE("multivariate factorization worked examples", "[factor]") {
    Factorization f1 = factor_multivariate(P("x1^2 - x2^2", 2));
    CHECK(factor_multiset(f1) ==
          std::multiset<std::pair<std::string, int>>{{"x1 - x2", 1}, {"x1 + x2", 1}});

    Factorization f2 = factor_multivariate(P("x1 + x1^2*x2", 2));
    CHECK(factor_multiset(f2) ==
          std::multiset<std::pair<std::string, int>>{{"x1", 1}, {"x1*x2 + 1", 1}});

    Factorization f3 = factor_multivariate(P("x1 + x2^2 + 1", 2));
    CHECK(f3.total_multiplicity() == 1);
}

TEST_CASE("multivariate kronecker path", "[factor]") {
    Polynomial a = P("x1^2 + x2 + 1", 2);
    Polynomial b = P("x1^2 + x2^2 + 3", 2);
    Polynomial f = a * b;
    Factorization fac = factor_multivariate(f);
    check_product_identity(f, fac);
    CHECK(factor_multiset(fac) ==
          std::multiset<std::pair<std::string, int>>{{S(a), 1}, {S(b), 1}});

    // trivariate product with a squared factor
    Polynomial c = P("x1 + x2*x3 + 2", 3);
    Polynomial d = P("x1^2 + x3 + 1", 3);
    Polynomial g = c * c * d;
    Factorization gf = factor_multivariate(g);
    check_product_identity(g, gf);
    CHECK(factor_multiset(gf) == std::multiset<std::pair<std::string, int>>{{S(c), 2}, {S(d), 1}});
}

TEST_CASE("factorization recovers random products of irreducibles", "[factor]") {
    int built = 0;
    for (std::uint64_t seed = 0; built < 25; ++seed) {
        Polynomial a = gen_random_poly(3, 2, 3, 5000 + seed);
        Polynomial b = gen_random_poly(3, 2, 3, 6000 + seed);
        if (a.is_constant() || b.is_constant())
            continue;
        Factorization fa = factor_multivariate(a);
        Factorization fb = factor_multivariate(b);
        if (fa.total_multiplicity() != 1 || fb.total_multiplicity() != 1)
            continue;
        ++built;
        Polynomial f = a * b;
        Factorization fac = factor_multivariate(f);
        check_product_identity(f, fac);
        std::multiset<std::pair<std::string, int>> expected;
        Polynomial na = normalize_primitive(a), nb = normalize_primitive(b);
        if (na == nb) {
            expected.emplace(S(na), 2);
        } else {
            expected.emplace(S(na), 1);
            expected.emplace(S(nb), 1);
        }
        CHECK(factor_multiset(fac) == expected);
    }
}

TEST_CASE("squarefree verdicts", "[factor]") {
    auto v1 = is_squarefree(P("x1^2*x2", 2));
    CHECK(!v1.ok);
    CHECK(v1.witness == P("x1", 2));

    CHECK(is_squarefree(P("x1^2 - x2^2", 2)).ok);
    CHECK(is_squarefree(P("7/3", 2)).ok);
    CHECK(!is_squarefree(Polynomial::zero(2)).ok);
}

TEST_CASE("squarefree part", "[factor]") {
    CHECK(squarefree_part(P("x1^2*x2", 2)) == P("x1*x2", 2));
    CHECK(squarefree_part(P("x1^2 - x2^2", 2)) == P("x1^2 - x2^2", 2));
    CHECK(squarefree_part(pow(P("x1 + x2", 2), 3)) == P("x1 + x2", 2));
}

TEST_CASE("squarefree agrees with factorization multiplicities", "[factor]") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        Polynomial f = gen_random_poly(2, 4, 4, 7700 + seed);
        if (f.is_constant())
            continue;
        Factorization fac = factor_multivariate(f);
        bool all_simple = true;
        for (const auto& [g, m] : fac.factors)
            all_simple = all_simple && m == 1;
        CHECK(is_squarefree(f).ok == all_simple);
    }
}

TEST_CASE("gcd of partials", "[factor]") {
    CHECK(gcd_of_partials(P("x1 + x1^2*x2", 2)) == Polynomial::one(2));
    Polynomial g = gcd_of_partials(pow(P("x1^2 + x2", 2), 2));
    CHECK(divides(P("x1^2 + x2", 2), g).ok);
    CHECK(gcd_of_partials(P("5", 2)).is_zero());
}

TEST_CASE("divides", "[factor]") {
    auto v1 = divides(P("x1", 2), P("x1^2*x2", 2));
    CHECK(v1.ok);
    CHECK(v1.quotient == P("x1*x2", 2));

    auto v2 = divides(P("x1^2 - 2*x1 + 1", 1), P("x1^3 - 3*x1 + 2", 1));
    CHECK(v2.ok);
    CHECK(v2.quotient == P("x1 + 2", 1));

    CHECK(!divides(P("x2", 2), P("x1", 2)).ok);
}

TEST_CASE("count_reducible_shifts", "[factor]") {
    std::vector<Rational> shifts;
    for (long c = -2; c <= 2; ++c)
        shifts.push_back(rational_of(c));
    auto scan = count_reducible_shifts(P("x1*x2", 2), shifts);
    CHECK(scan.count == 1);
    REQUIRE(scan.witnesses.size() == 1);
    CHECK(scan.witnesses[0].first == 0);

    CHECK(count_reducible_shifts(P("x1", 3), shifts).count == 0);

    auto scan2 = count_reducible_shifts(P("x1^2", 1), {rational_of(0), rational_of(1)});
    CHECK(scan2.count == 2);
}

TEST_CASE("lemma irredAy: linear-in-y irreducibility via coefficient gcd", "[factor]") {
    // g = g0 + sum g_i y_i with g_i in Q[x]; irreducible iff the coefficient
    // gcd is a unit. Both directions exercised on constructed instances.
    VariableFrame fr(std::vector<std::string>{"x1", "x2", "y1", "y2"});
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        Rng rng(4400 + seed);
        auto rnd_x = [&](int terms) {
            Polynomial p(4);
            for (int t = 0; t < terms; ++t) {
                std::vector<int> e = {static_cast<int>(rng.uniform(0, 2)),
                                      static_cast<int>(rng.uniform(0, 2)), 0, 0};
                long c = rng.uniform(-2, 2);
                if (c)
                    p.add_term(Monomial(e), rational_of(c));
            }
            return p;
        };
        Polynomial g0 = rnd_x(2), g1 = rnd_x(2), g2 = rnd_x(2);
        if (g1.is_zero() && g2.is_zero())
            continue;
        Polynomial y1 = Polynomial::variable(4, 2), y2 = Polynomial::variable(4, 3);
        Polynomial f = g0 + g1 * y1 + g2 * y2;
        if (f.is_constant() || f == g0)
            continue;
        Polynomial cg = gcd(gcd(g0, g1), g2);
        bool gcd_unit = cg.is_constant();
        CHECK(!is_reducible(f) == gcd_unit);

        // multiply in a common nonunit factor: must flip to reducible
        Polynomial h = P("x1 + 1", 4);
        Polynomial ff = h * f;
        CHECK(is_reducible(ff));
    }
}

TEST_CASE("corollary shape: a x1 + homogeneous is irreducible or divisible by x1", "[factor]") {
    for (std::uint64_t seed = 0; seed < 18; ++seed) {
        Rng rng(8800 + seed);
        int n = 3;
        int d = static_cast<int>(rng.uniform(2, 4));
        std::vector<int> all = {0, 1, 2};
        Polynomial h = gendetail::random_form(rng, n, d, all, 2);
        if (divides(P("x1", 3), h).ok)
            continue; // want x1 not dividing the form
        long a = 0;
        while (a == 0)
            a = rng.uniform(-3, 3);
        Polynomial f = rational_of(a) * P("x1", 3) + h;
        Factorization fac = factor_multivariate(f);
        bool irreducible = fac.total_multiplicity() == 1;
        bool div_x1 = divides(P("x1", 3), f).ok;
        CHECK((irreducible || div_x1));
    }
}

TEST_CASE("low-part divisor lemma on constructed and random instances", "[factor]") {
    // g* | f^(0..deg g) forces g* | g whenever f = g h with h(0) != 0
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        Rng rng(9100 + seed);
        Polynomial gstar = Polynomial::variable(3, 0); // monomial family: g* = x1
        Polynomial gtail = gen_random_poly(3, 2, 2, 9200 + seed);
        Polynomial g = gstar * gtail;
        Polynomial h = gen_random_poly(3, 2, 2, 9300 + seed);
        if (h.coeff_of_constant() == 0)
            h = h + rational_of(1);
        Polynomial f = g * h;
        if (f.is_zero() || g.is_zero())
            continue;
        bool premise = true;
        for (int k = 0; k <= g.degree(); ++k)
            premise = premise && divides(gstar, homogeneous_part(f, k)).ok;
        if (premise)
            CHECK(divides(gstar, g).ok);

        // random implication check with arbitrary g*
        Polynomial gs2 = gen_random_poly(3, 1, 2, 9400 + seed);
        if (gs2.is_constant())
            continue;
        bool prem2 = true;
        for (int k = 0; k <= g.degree(); ++k)
            prem2 = prem2 && divides(gs2, homogeneous_part(f, k)).ok;
        if (prem2)
            CHECK(divides(gs2, g).ok);
    }
}

TEST_CASE("gcd agrees with the factorization route", "[factor]") {
    // independent route: gcd from the shared factor multiset
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Polynomial a = gen_random_poly(2, 2, 2, 12000 + seed);
        Polynomial b = gen_random_poly(2, 2, 2, 13000 + seed);
        Polynomial c = gen_random_poly(2, 2, 2, 14000 + seed);
        if (a.is_constant() || b.is_constant() || c.is_constant())
            continue;
        Polynomial f = a * c;
        Polynomial g = b * c;
        Factorization ff = factor_multivariate(f);
        Factorization fg = factor_multivariate(g);
        Polynomial expected = Polynomial::one(2);
        for (const auto& [p, mf] : ff.factors)
            for (const auto& [q, mg] : fg.factors)
                if (p == q)
                    expected = expected * pow(p, std::min(mf, mg));
        CHECK(gcd(f, g) == normalize_primitive(expected));
    }
}

TEST_CASE("squarefree part agrees with the factorization route", "[factor]") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Polynomial a = gen_random_poly(2, 2, 2, 15000 + seed);
        Polynomial b = gen_random_poly(2, 2, 2, 16000 + seed);
        if (a.is_constant() || b.is_constant())
            continue;
        Polynomial f = a * a * b;
        Polynomial expected = Polynomial::one(2);
        for (const auto& [p, m] : factor_multivariate(f).factors)
            expected = expected * p;
        CHECK(squarefree_part(f) == normalize_primitive(expected));
    }
}

TEST_CASE("units and fractional contents are carried exactly", "[factor]") {
    Polynomial f = rational_of(-3, 4) * pow(P("2*x1 - x2", 2), 2) * P("x1 + 5", 2);
    Factorization fac = factor_multivariate(f);
    CHECK(fac.reassemble(2) == f);
    CHECK(fac.unit < 0);
}

TEST_CASE("three-variable rationally-irreducible absolutely-reducible input stays undetermined",
          "[factor][ruppert]") {
    // (x1+x3)^2 + x2^2 splits only over the closure; no plane section can
    // certify that, so the absolute field is reported undetermined
    Polynomial f = pow(P("x1 + x3", 3), 2) + pow(P("x2", 3), 2);
    auto v = irreducibility(f);
    CHECK(v.rational_irreducible);
    CHECK(v.absolute == AbsoluteVerdict::Undetermined);
}

TEST_CASE("squared linear factors of {0,1,d}-supported univariates", "[factor]") {
    // (x1 - c)^2 divides c'(x1^d - c^d) - c' d c^(d-1) (x1 - c) for every
    // nonzero c: the only degree-{0,1,d} polynomial with the prescribed
    // leading coefficient that (x1 - c)^2 divides
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(20000 + seed);
        long c = 0;
        while (c == 0)
            c = rng.uniform(-4, 4);
        long cp = 0;
        while (cp == 0)
            cp = rng.uniform(-3, 3);
        int d = static_cast<int>(rng.uniform(2, 6));
        Polynomial x = P("x1", 1);
        Rational cc = rational_of(c), cpr = rational_of(cp);
        Rational cd = pow(Polynomial::constant(1, cc), d).constant_value();
        Rational cd1 = pow(Polynomial::constant(1, cc), d - 1).constant_value();
        Polynomial rhs = cpr * (pow(x, d) - Polynomial::constant(1, cd)) -
                         cpr * rational_of(d) * Polynomial::constant(1, cd1) * (x - cc);
        Polynomial sq = (x - cc) * (x - cc);
        auto div = divides(sq, rhs);
        REQUIRE(div.ok);
        // support stays inside {0, 1, d}
        for (const auto& [m, co] : rhs.terms())
            CHECK((m.degree() == 0 || m.degree() == 1 || m.degree() == d));
        // and the quotient reconstructs the factorization exactly
        CHECK(sq * div.quotient == rhs);
    }
}

TEST_CASE("nonsingular {0,1,d} shape with a shifted linear divisor", "[factor]") {
    // f = c'(x1^d - c^d) + (c'' - c' d c^(d-1))(x1 - c) keeps term degrees in
    // {0, 1, d} and is divisible by x1 - c
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        Rng rng(21000 + seed);
        long c = 0, cp = 0, cpp = 0;
        while (c == 0)
            c = rng.uniform(-3, 3);
        while (cp == 0)
            cp = rng.uniform(-3, 3);
        while (cpp == 0)
            cpp = rng.uniform(-3, 3);
        int d = static_cast<int>(rng.uniform(2, 5));
        Polynomial x = P("x1", 1);
        Rational cc = rational_of(c);
        Rational cd = pow(Polynomial::constant(1, cc), d).constant_value();
        Rational cd1 = pow(Polynomial::constant(1, cc), d - 1).constant_value();
        Polynomial f = rational_of(cp) * (pow(x, d) - Polynomial::constant(1, cd)) +
                       (rational_of(cpp) - rational_of(cp) * rational_of(d) * cd1) * (x - cc);
        CHECK(divides(x - cc, f).ok);
        for (const auto& [m, co] : f.terms())
            CHECK((m.degree() == 0 || m.degree() == 1 || m.degree() == d));
    }
}
