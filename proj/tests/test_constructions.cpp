#include "test_util.hpp"

using namespace tk;

namespace {

Polynomial lift(const Polynomial& f, int arity) { return detail::lift_to_arity(f, arity); }

void check_det_relation(const PolyMap& f, ExtensionVariant v, const ExtensionParams& params) {
    PolyMap g = extend(f, v, params);
    Polynomial det_f = lift(determinant(jacobian(f)), g.arity());
    Polynomial det_g = determinant(jacobian(g));
    int sign = extension_det_sign(v, f.arity());
    CHECK(det_g == (sign < 0 ? -det_f : det_f));
}

} // namespace

TEST_CASE("extend: scalar variants on worked examples", "[constructions]") {
    PolyMap f = map_of(2, {"x1 + x2^3", "x2"});

    ExtensionParams zero;
    zero.lambda = {rational_of(0), rational_of(0)};
    PolyMap g0 = extend(f, ExtensionVariant::CH, zero);
    CHECK(g0.size() == 3);
    CHECK(g0.frame.names() == std::vector<std::string>{"x1", "x2", "x3"});
    CHECK(g0[0] == P("x1 + x2^3", 3));
    CHECK(g0[1] == P("x2", 3));
    CHECK(g0[2] == P("x3", 3));

    ExtensionParams lam;
    lam.lambda = {rational_of(1), rational_of(0)};
    PolyMap g1 = extend(f, ExtensionVariant::CH, lam);
    CHECK(g1[0] == P("x1 + x2^3 - x3^3", 3));
    CHECK(determinant(jacobian(g1)) == Polynomial::one(3));

    CHECK_THROWS_AS(extend(f, ExtensionVariant::CH, ExtensionParams{}), std::invalid_argument);
}

TEST_CASE("extend: schl block example", "[constructions]") {
    ExtensionParams ps;
    ps.d = 2;
    PolyMap g = extend(PolyMap::identity(2), ExtensionVariant::SCHL, ps);
    REQUIRE(g.size() == 6);
    CHECK(g.frame.names() == std::vector<std::string>{"x1", "x2", "y1", "y2", "z1", "z2"});
    VariableFrame fr = g.frame;
    CHECK(g[0] == parse_polynomial("x1 - y1^2", fr));
    CHECK(g[1] == parse_polynomial("x2 - y2^2", fr));
    CHECK(g[2] == parse_polynomial("z1 - 2*x1*y1", fr));
    CHECK(g[3] == parse_polynomial("z2 - 2*x2*y2", fr));
    CHECK(g[4] == parse_polynomial("y1", fr));
    CHECK(g[5] == parse_polynomial("y2", fr));
    // exact expansion: det jac G = (-1)^n det jac F, here +1
    CHECK(determinant(jacobian(g)) == Polynomial::one(6));

    ExtensionParams bad;
    bad.d = 1;
    CHECK_THROWS_AS(extend(PolyMap::identity(2), ExtensionVariant::DZL, bad), std::invalid_argument);
}

TEST_CASE("extend: determinant relations for every variant", "[constructions]") {
    PolyMap cubic = map_of(2, {"x1 + x2^3", "x2"});
    ExtensionParams sc;
    sc.lambda = {rational_of(2), rational_of(-1)};
    check_det_relation(cubic, ExtensionVariant::CH, sc);
    check_det_relation(cubic, ExtensionVariant::DZ, sc);
    check_det_relation(cubic, ExtensionVariant::SCH, sc);
    ExtensionParams gh = sc;
    gh.tail_h = P("x1*x3^2 - 2*x2", 3); // over (x1, x2, x3)
    check_det_relation(cubic, ExtensionVariant::GH, gh);

    PolyMap base = gen_tame_keller(2, 4, 3, 11);
    for (int d = 2; d <= 3; ++d) {
        ExtensionParams bl;
        bl.d = d;
        check_det_relation(base, ExtensionVariant::CHL, bl);
        check_det_relation(base, ExtensionVariant::DZL, bl);
        check_det_relation(base, ExtensionVariant::SCHL, bl);
        ExtensionParams ghl = bl;
        std::vector<Polynomial> tails;
        for (int i = 0; i < 2; ++i)
            tails.push_back(gen_random_poly(4, 2, 2, 600 + static_cast<std::uint64_t>(10 * d + i)));
        ghl.tail_H = PolyMap(default_frame(2).extended({"y1", "y2"}), std::move(tails));
        check_det_relation(base, ExtensionVariant::GHL, ghl);
    }

    // odd block size flips the SCHL sign
    PolyMap id3 = PolyMap::identity(3);
    ExtensionParams b2;
    b2.d = 2;
    PolyMap g = extend(id3, ExtensionVariant::SCHL, b2);
    CHECK(determinant(jacobian(g)) == P("-1", 9));
}

TEST_CASE("extend preserves cubic-without-quadratic and keller", "[constructions]") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        PolyMap h = gen_nilpotent_cubic(3, seed);
        std::vector<Polynomial> comps;
        for (int i = 0; i < 3; ++i)
            comps.push_back(Polynomial::variable(3, i) + h[i]);
        PolyMap f(h.frame, std::move(comps));
        REQUIRE(is_keller(f).ok);

        ExtensionParams sc;
        sc.lambda = {rational_of(1), rational_of(-2), rational_of(0)};
        for (ExtensionVariant v : {ExtensionVariant::CH, ExtensionVariant::DZ, ExtensionVariant::SCH}) {
            PolyMap g = extend(f, v, sc);
            CHECK(is_keller(g).ok);
            CHECK(g.degree() <= 3);
            for (int i = 0; i < g.size(); ++i)
                CHECK(homogeneous_part(g[i], 2).is_zero());
        }
        ExtensionParams bl;
        bl.d = 3;
        for (ExtensionVariant v : {ExtensionVariant::CHL, ExtensionVariant::DZL}) {
            PolyMap g = extend(f, v, bl);
            CHECK(is_keller(g).ok);
            CHECK(g.degree() <= 3);
            for (int i = 0; i < g.size(); ++i)
                CHECK(homogeneous_part(g[i], 2).is_zero());
        }
    }
}

TEST_CASE("extend: sch and schl preserve symmetric jacobians", "[constructions]") {
    // symmetric cubic Keller inputs via the gradient reduction
    PolyMap h = gen_nilpotent_cubic(2, 4);
    std::vector<Polynomial> comps;
    for (int i = 0; i < 2; ++i)
        comps.push_back(Polynomial::variable(2, i) + h[i]);
    PolyMap base(h.frame, std::move(comps));
    PolyMap f = grad_reduction(Polynomial::zero(2), base); // symmetric, cubic, no quadratic terms
    REQUIRE(is_symmetric(jacobian(f)));
    REQUIRE(is_keller(f).ok);

    ExtensionParams sc;
    sc.lambda.assign(4, rational_of(1));
    PolyMap gs = extend(f, ExtensionVariant::SCH, sc);
    CHECK(is_symmetric(jacobian(gs)));

    ExtensionParams bl;
    bl.d = 3;
    PolyMap gb = extend(f, ExtensionVariant::SCHL, bl);
    CHECK(is_symmetric(jacobian(gb)));
}

TEST_CASE("symred worked examples", "[constructions]") {
    PolyMap id1 = PolyMap::identity(1);

    PolyMap g0 = symred(Polynomial::zero(1), id1, rational_of(1), rational_of(-1));
    CHECK(g0[0] == parse_polynomial("2*x1", g0.frame));
    CHECK(g0[1] == parse_polynomial("-2*y1", g0.frame));

    PolyMap g1 = symred(P("x1^3", 1), id1, rational_of(1), rational_of(-1));
    CHECK(g1[0] == parse_polynomial("3*x1^2 + 6*x1*y1 + 3*y1^2 + 2*x1", g1.frame));
    CHECK(g1[1] == parse_polynomial("3*x1^2 + 6*x1*y1 + 3*y1^2 - 2*y1", g1.frame));
    CHECK(determinant(jacobian(g1)) == P("-4", 2));

    // u = u' is constructed; the Keller check flags it
    PolyMap deg = symred(Polynomial::zero(1), id1, rational_of(1), rational_of(1));
    CHECK(!is_keller(deg).ok);

    CHECK_THROWS_AS(symred(Polynomial::zero(1), id1, rational_of(0), rational_of(1)),
                    std::invalid_argument);
}

TEST_CASE("symred output is always a hessian, hence symmetric", "[constructions]") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        PolyMap f = gen_tame_keller(2, 3, 2, 50 + seed);
        Polynomial ff = gen_random_poly(2, 3, 3, 60 + seed);
        PolyMap g = symred(ff, f, rational_of(1), rational_of(-1));
        CHECK(is_symmetric(jacobian(g)));
    }
}

TEST_CASE("grad_reduction worked examples", "[constructions]") {
    PolyMap f = map_of(2, {"x1 + x2^2", "x2"});
    PolyMap g = grad_reduction(Polynomial::zero(2), f);
    REQUIRE(g.size() == 4);
    CHECK(g[0] == parse_polynomial("y1", g.frame));
    CHECK(g[1] == parse_polynomial("2*x2*y1 + y2", g.frame));
    CHECK(g[2] == parse_polynomial("x1 + x2^2", g.frame));
    CHECK(g[3] == parse_polynomial("x2", g.frame));
    CHECK(determinant(jacobian(g)) == Polynomial::one(4));

    PolyMap gid = grad_reduction(Polynomial::zero(3), PolyMap::identity(3));
    CHECK(determinant(jacobian(gid)) == P("-1", 6));

    PolyMap nk = grad_reduction(Polynomial::zero(2), map_of(2, {"x1^2", "x2"}));
    CHECK(determinant(jacobian(nk)) == parse_polynomial("4*x1^2", nk.frame));
}

TEST_CASE("grad_reduction determinant identity on random maps", "[constructions]") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        int n = 1 + static_cast<int>(seed % 3);
        std::vector<Polynomial> comps;
        for (int i = 0; i < n; ++i)
            comps.push_back(gen_random_poly(n, 3, 3, 300 + 10 * seed + static_cast<std::uint64_t>(i)));
        PolyMap f(default_frame(n), std::move(comps));
        Polynomial ff = gen_random_poly(n, 3, 3, 400 + seed);
        PolyMap g = grad_reduction(ff, f);
        Polynomial rhs = lift(determinant(jacobian(f)), 2 * n);
        rhs = rhs * rhs;
        if (n % 2 == 1)
            rhs = -rhs;
        CHECK(determinant(jacobian(g)) == rhs);
    }
}

TEST_CASE("druzkowski_lift worked examples", "[constructions]") {
    ScalarMatrix i2 = ScalarMatrix::identity(2);
    ScalarMatrix t1 = druzkowski_lift(i2, {rational_of(1), rational_of(0)});
    REQUIRE(t1.n == 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Rational expect = i == j ? 1 : (i == 0 && j == 3 ? 1 : 0);
            CHECK(t1.at(i, j) == expect);
        }

    ScalarMatrix t2 = druzkowski_lift(i2, {rational_of(0), rational_of(0)});
    CHECK(t2 == ScalarMatrix::identity(4));

    ScalarMatrix d(2);
    d.at(0, 0) = 2; d.at(1, 1) = 1;
    ScalarMatrix t3 = druzkowski_lift(d, {rational_of(1), rational_of(1)});
    CHECK(t3.at(0, 3) == 2);
    CHECK(t3.at(1, 3) == 1);

    ScalarMatrix sing(2);
    sing.at(0, 0) = 1; sing.at(0, 1) = 1; sing.at(1, 0) = 1; sing.at(1, 1) = 1;
    CHECK_THROWS_AS(druzkowski_lift(sing, {rational_of(0), rational_of(0)}), SingularMatrixError);
}

TEST_CASE("is_druzkowski", "[constructions]") {
    Polynomial cube = pow(P("x1 + x2", 2), 3);
    PolyMap f1(default_frame(2), {P("x1", 2) + cube, P("x2", 2)});
    CHECK(is_druzkowski(f1, 3).ok);

    PolyMap f2(default_frame(2), {P("x1 + x1^2*x2", 2), P("x2", 2)});
    auto v2 = is_druzkowski(f2, 3);
    CHECK(!v2.ok);
    CHECK(v2.bad_component == 0);

    CHECK(is_druzkowski(PolyMap::identity(3), 3).ok);
}

TEST_CASE("dz extensions stay conjugate-druzkowski", "[constructions]") {
    // if T F(T^{-1} x) is power linear then the lifted conjugation of the dz
    // extension is power linear as well
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        PolyMap d = gen_druzkowski(3, seed);
        Rng rng(800 + seed);
        ScalarMatrix s = gendetail::random_invertible(rng, 3);
        PolyMap f = conjugate(d, s); // F = S^{-1} D(S x), so T F(T^{-1} x) = D with T = S
        ScalarMatrix t = s;
        ExtensionParams ps;
        ps.lambda = {rational_of(1), rational_of(-1), rational_of(2)};
        PolyMap g = extend(f, ExtensionVariant::DZ, ps);
        ScalarMatrix tt = druzkowski_lift(t, ps.lambda);
        PolyMap gg = conjugate(g, scalar_inverse(tt)); // = Tt G(Tt^{-1} w)
        CHECK(is_druzkowski(gg, 3).ok);
    }
}

TEST_CASE("tame_compose", "[constructions]") {
    auto [f0, f0inv] = tame_compose(TameSequence{2, {}});
    CHECK(f0 == PolyMap::identity(2));
    CHECK(f0inv == PolyMap::identity(2));

    TameSequence s1{2, {ElementaryStep{0, P("x2^2", 2)}}};
    auto [f1, f1inv] = tame_compose(s1);
    CHECK(f1 == map_of(2, {"x1 + x2^2", "x2"}));
    CHECK(f1inv == map_of(2, {"x1 - x2^2", "x2"}));

    ScalarMatrix t(2);
    t.at(0, 0) = 1; t.at(0, 1) = 2; t.at(1, 1) = 1;
    TameSequence s2{2, {make_affine_step(t, {rational_of(1), rational_of(0)}),
                        ElementaryStep{1, P("x1^3", 2)}}};
    auto [f2, f2inv] = tame_compose(s2);
    CHECK(compose(f2, f2inv) == PolyMap::identity(2));
    CHECK(compose(f2inv, f2) == PolyMap::identity(2));
    CHECK(is_keller(f2).ok);
}

TEST_CASE("tame_coordinate_witness worked examples", "[constructions]") {
    // f = x1 + x2^2, h = x2^2, v = e1
    auto w1 = tame_coordinate_witness(P("x1 + x2^2", 2), P("x2^2", 2),
                                      {rational_of(1), rational_of(0)});
    CHECK(w1.t == ScalarMatrix::identity(2));
    CHECK(w1.c == 1);
    REQUIRE(w1.e.steps.size() == 1);
    const auto& step = std::get<ElementaryStep>(w1.e.steps[0]);
    CHECK(step.index == 0);
    CHECK(step.p == P("x2^2", 2));

    // f = x2 + x1^2, h = x1^2, v = e2: T swaps coordinates
    auto w2 = tame_coordinate_witness(P("x2 + x1^2", 2), P("x1^2", 2),
                                      {rational_of(0), rational_of(1)});
    CHECK(w2.c == 1);
    CHECK(w2.t.at(0, 0) == 0); // first column is v = e2
    CHECK(w2.t.at(1, 0) == 1);
    CHECK(w2.t.at(0, 1) == 1);
    CHECK(w2.t.at(1, 1) == 0);

    CHECK_THROWS_AS(tame_coordinate_witness(P("x1", 2), Polynomial::zero(2),
                                            {rational_of(0), rational_of(0)}),
                    PreconditionError);
    CHECK_THROWS_AS(tame_coordinate_witness(P("x1^2", 2), P("x1^2", 2),
                                            {rational_of(1), rational_of(0)}),
                    PreconditionError);
}

TEST_CASE("find_lambda", "[constructions]") {
    PolyMap f = map_of(2, {"x1 + x2^3", "x2"});
    auto r1 = find_lambda(f, ExtensionVariant::CH, 3, 9, 200);
    CHECK(r1.found);
    CHECK(r1.lambda == std::vector<Rational>{rational_of(0), rational_of(0)});
    CHECK(r1.audit.size() == 1);
    CHECK(r1.audit[0].samples_passed == 200);

    auto r2 = find_lambda(PolyMap::identity(2), ExtensionVariant::DZ, 2, 5, 60);
    CHECK(r2.found);
    CHECK(r2.lambda == std::vector<Rational>{rational_of(0), rational_of(0)});

    auto r3 = find_lambda(f, ExtensionVariant::CH, 0, 1);
    CHECK(!r3.found);
    CHECK(r3.audit.empty());

    CHECK_THROWS_AS(find_lambda(f, ExtensionVariant::CHL, 1, 1), std::invalid_argument);
}

TEST_CASE("tame compositions are keller maps", "[constructions]") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        PolyMap f = gen_tame_keller(1 + static_cast<int>(seed % 4), 6, 4, 9900 + seed);
        CHECK(is_keller(f).ok);
    }
}

TEST_CASE("extension parameter errors", "[constructions]") {
    PolyMap f = map_of(2, {"x1 + x2^3", "x2"});
    ExtensionParams lam;
    lam.lambda = {rational_of(1), rational_of(0)};
    CHECK_THROWS_AS(extend(f, ExtensionVariant::GH, lam), std::invalid_argument); // missing tail

    ExtensionParams bl;
    bl.d = 2;
    CHECK_THROWS_AS(extend(f, ExtensionVariant::GHL, bl), std::invalid_argument); // missing tail map

    ExtensionParams wrong;
    wrong.lambda = {rational_of(1)};
    CHECK_THROWS_AS(extend(f, ExtensionVariant::CH, wrong), std::invalid_argument);

    ExtensionParams bad_tail = bl;
    bad_tail.tail_H = PolyMap::identity(3); // wrong shape for n = 2
    CHECK_THROWS_AS(extend(f, ExtensionVariant::GHL, bad_tail), std::invalid_argument);
}

TEST_CASE("shape guards on matrix and map operations", "[constructions]") {
    PolyMatrix rect(2, 3, 2);
    PolyMap notsquare(default_frame(2), {P("x1", 2)});
    CHECK_THROWS_AS(is_keller(notsquare), std::invalid_argument);
    CHECK_THROWS_AS(is_nilpotent(rect), std::invalid_argument);
    ScalarMatrix t = ScalarMatrix::identity(3);
    CHECK_THROWS_AS(conjugate(map_of(2, {"x1", "x2"}), t), std::invalid_argument);
    PolyMap a = map_of(2, {"x1", "x2"});
    PolyMap b = map_of(3, {"x1", "x2", "x3"});
    CHECK_THROWS_AS(hadamard_product(a, b), std::invalid_argument);
}
