#include "test_util.hpp"

using namespace tk;

TEST_CASE("ruppert worked examples", "[ruppert]") {
    CHECK(ruppert_test(P("x1^2 - x2", 2)) == RuppertResult::AbsolutelyIrreducible);
    CHECK(ruppert_test(P("x1^2 - x2^2", 2)) == RuppertResult::NotAbsolutelyIrreducible);
    CHECK(ruppert_test(P("x1^2", 2)) == RuppertResult::Inapplicable);
    CHECK(ruppert_test(P("x1^2 + 1", 2)) == RuppertResult::Inapplicable); // univariate
}

TEST_CASE("ruppert separates rational from absolute", "[ruppert]") {
    // irreducible over Q, splits over Q(i)
    Polynomial f = P("x1^2 + x2^2", 2);
    auto v = irreducibility(f);
    CHECK(v.rational_irreducible);
    CHECK(v.absolute == AbsoluteVerdict::Reducible);

    auto w = irreducibility(P("x1 + x2^3", 2));
    CHECK(w.rational_irreducible);
    CHECK(w.absolute == AbsoluteVerdict::Irreducible);

    auto u = irreducibility(P("x1*x2", 2));
    CHECK(!u.rational_irreducible);
    CHECK(u.absolute == AbsoluteVerdict::Reducible);
}

TEST_CASE("irreducibility edge conventions", "[ruppert]") {
    auto c = irreducibility(P("5", 2));
    CHECK(!c.rational_irreducible);
    CHECK(c.absolute == AbsoluteVerdict::Reducible);

    auto lin = irreducibility(P("2*x1 - 3", 2));
    CHECK(lin.rational_irreducible);
    CHECK(lin.absolute == AbsoluteVerdict::Irreducible);

    auto uni = irreducibility(P("x1^2 + 1", 2));
    CHECK(uni.rational_irreducible);
    CHECK(uni.absolute == AbsoluteVerdict::Reducible);

    CHECK_THROWS_AS(irreducibility(Polynomial::zero(2)), std::invalid_argument);
}

TEST_CASE("ruppert never contradicts rational factorization", "[ruppert]") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Polynomial f = gen_random_poly(2, 4, 4, 31000 + seed);
        if (f.is_constant() || detail::essential_vars(f).size() != 2)
            continue;
        if (ruppert_test(f) == RuppertResult::AbsolutelyIrreducible)
            CHECK(factor_multivariate(f).total_multiplicity() == 1);
    }
}

TEST_CASE("plane sections certify absolute irreducibility in three variables", "[ruppert]") {
    auto v = irreducibility(P("x1 + x2*x3 + x2^3", 3));
    CHECK(v.rational_irreducible);
    CHECK(v.absolute == AbsoluteVerdict::Irreducible);
}

TEST_CASE("ruppert detects splittings over real quadratic extensions", "[ruppert]") {
    // x1^2 - 2 x2^2 factors over Q(sqrt 2) only
    Polynomial f = P("x1^2 - 2*x2^2", 2);
    CHECK(factor_multivariate(f).total_multiplicity() == 1);
    CHECK(ruppert_test(f) == RuppertResult::NotAbsolutelyIrreducible);
    auto v = irreducibility(f);
    CHECK(v.rational_irreducible);
    CHECK(v.absolute == AbsoluteVerdict::Reducible);
}

TEST_CASE("ruppert on products of several absolutely irreducible factors", "[ruppert]") {
    Polynomial f = P("x1 + x2 + 1", 2) * P("x1 - x2 + 2", 2) * P("2*x1 + x2 - 1", 2);
    CHECK(ruppert_test(f) == RuppertResult::NotAbsolutelyIrreducible);
    Polynomial cusp = P("x1^3 - x2^2", 2);
    CHECK(ruppert_test(cusp) == RuppertResult::AbsolutelyIrreducible);
}
