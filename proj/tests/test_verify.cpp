#include "test_util.hpp"

using namespace tk;

TEST_CASE("squarefree preservation checker", "[verify]") {
    PolyMap f = map_of(2, {"x1 + x2^2", "x2"});
    VariableFrame ys = default_frame(2, "y");
    Polynomial w = parse_polynomial("y1*y2", ys);
    CHECK(check_keller_squarefree_preservation(f, w).verdict == Verdict::Pass);

    Polynomial w2 = gen_random_squarefree(3, 3, 3, 17);
    CHECK(check_keller_squarefree_preservation(PolyMap::identity(3), w2).verdict == Verdict::Pass);

    PolyMap bad = map_of(2, {"x1^2", "x2"});
    CHECK(check_keller_squarefree_preservation(bad, w).verdict == Verdict::Inapplicable);
}

TEST_CASE("j41 direction checker", "[verify]") {
    VariableFrame ys = default_frame(2, "y");
    Polynomial w = parse_polynomial("y1", ys);

    PolyMap f = map_of(2, {"x1^2", "x2"});
    auto rep = check_j41_direction(f, P("x1", 2), w);
    CHECK(rep.verdict == Verdict::Pass); // x1^2 | w(F) and x1 | 2x1

    CHECK(check_j41_direction(PolyMap::identity(2), P("x1", 2), w).verdict == Verdict::Pass);

    CHECK(check_j41_direction(f, P("x1^2", 2), w).verdict == Verdict::Inapplicable);
}

TEST_CASE("lindiv checker", "[verify]") {
    // F = (x1 + 1) with L = (2x1 + 2), H = (1/2): all five statements true
    PolyMap f(default_frame(1), {P("x1 + 1", 1)});
    PolyMap l(default_frame(1), {P("2*x1 + 2", 1)});
    PolyMap h(default_frame(1), {P("1/2", 1)});
    auto rep = check_lindiv(f, l, h);
    CHECK(rep.verdict == Verdict::Pass);

    PolyMap id = PolyMap::identity(3);
    PolyMap ones(default_frame(3),
                 {Polynomial::one(3), Polynomial::one(3), Polynomial::one(3)});
    CHECK(check_lindiv(id, id, ones).verdict == Verdict::Pass);

    PolyMap nk = map_of(2, {"x1^2", "x2"});
    CHECK(check_lindiv(nk, nk, PolyMap::identity(2)).verdict == Verdict::Inapplicable);
}

TEST_CASE("scan_mu_reducible checker", "[verify]") {
    PolyMap f = map_of(2, {"x1 + x2^2", "x2"});
    std::vector<Rational> mu = {rational_of(1), rational_of(1), rational_of(0)};
    std::vector<Rational> values;
    for (long c = -4; c <= 4; ++c)
        values.push_back(rational_of(c));
    auto rep = scan_mu_reducible(f, 3, mu, values);
    CHECK(rep.verdict == Verdict::Pass);

    auto rep2 = scan_mu_reducible(PolyMap::identity(2), 3, mu, values);
    CHECK(rep2.verdict == Verdict::Pass); // d = 1, bound 0, all combos affine

    std::vector<Rational> mu3 = {rational_of(0), rational_of(0), rational_of(1)};
    CHECK(scan_mu_reducible(f, 1, mu3, values).verdict == Verdict::Inapplicable);
}

TEST_CASE("irredcor chain checker", "[verify]") {
    auto r1 = check_irredcor_chain(P("x1 + x1^2*x2", 2));
    CHECK(r1.verdict == Verdict::Pass); // reducible branch with x1 | f

    auto r2 = check_irredcor_chain(P("x1 + x2^3", 2));
    CHECK(r2.verdict == Verdict::Pass); // irreducible, chain vacuous

    auto r3 = check_irredcor_chain(P("x1 + x1*x2", 2));
    CHECK(r3.verdict == Verdict::Inapplicable); // gradient not certifiably unimodular

    CHECK(check_irredcor_chain(P("x1 + 1", 2)).verdict == Verdict::Inapplicable);
}

TEST_CASE("bakext component checker", "[verify]") {
    PolyMap g = symred(P("x1^3", 1), PolyMap::identity(1), rational_of(1), rational_of(-1));
    CHECK(check_bakext_i(g, 0).verdict == Verdict::Pass);
    CHECK(check_bakext_i(g, 1).verdict == Verdict::Pass);

    PolyMap id = PolyMap::identity(2);
    CHECK(check_bakext_i(id, 0).verdict == Verdict::Pass);

    PolyMap asym = map_of(2, {"x1 + x2^2", "x2"});
    CHECK(check_bakext_i(asym, 0).verdict == Verdict::Inapplicable);
}

TEST_CASE("symdiag checker", "[verify]") {
    PolyMap g = PolyMap::identity(2); // grad of (x1^2 + x2^2)/2
    CHECK(check_symdiag(g, 0).verdict == Verdict::Pass);

    VariableFrame xy(std::vector<std::string>{"x1", "y1"});
    PolyMap swap(xy, {parse_polynomial("y1", xy), parse_polynomial("x1", xy)});
    auto rep = check_symdiag(swap, 0);
    CHECK(rep.verdict == Verdict::Pass);
    CHECK(rep.note.find("vacuous") != std::string::npos);

    PolyMap sym = gen_symmetric_keller(2, 4, 2, 21);
    for (int i = 0; i < sym.size(); ++i)
        CHECK(check_symdiag(sym, i).verdict == Verdict::Pass);
}

TEST_CASE("symm lemma checker", "[verify]") {
    auto r1 = check_symm_lemma(Polynomial::zero(2), map_of(2, {"x1 + x2^2", "x2"}), 25, 3);
    CHECK(r1.verdict == Verdict::Pass);

    auto r2 = check_symm_lemma(Polynomial::zero(3), PolyMap::identity(3), 10, 4);
    CHECK(r2.verdict == Verdict::Pass);

    auto r3 = check_symm_lemma(Polynomial::zero(2), map_of(2, {"x1^2", "x2"}), 10, 5);
    CHECK(r3.verdict == Verdict::Pass); // identity holds; sampling clause skipped
    CHECK(r3.note.find("skipped") != std::string::npos);
}

TEST_CASE("irredth sampling checker", "[verify]") {
    PolyMap h = map_of(2, {"x2^3", "0"});
    auto rep = check_irredth_sampling(h, 200, 9);
    CHECK(rep.verdict == Verdict::Pass);

    PolyMap bank = gen_nilpotent_cubic(4, 12);
    CHECK(check_irredth_sampling(bank, 50, 13).verdict == Verdict::Pass);

    PolyMap notnil = map_of(2, {"x1^3", "0"});
    CHECK(check_irredth_sampling(notnil, 10, 1).verdict == Verdict::Inapplicable);
}

TEST_CASE("extension irreducibility checker", "[verify]") {
    PolyMap f = map_of(2, {"x1 + x2^3", "x2"});
    ExtensionParams gh;
    gh.lambda = {rational_of(0), rational_of(0)};
    gh.tail_h = Polynomial::zero(3);
    CHECK(check_extension_irreducibility(f, ExtensionVariant::GH, gh, 100, 2).verdict == Verdict::Pass);

    ExtensionParams chl;
    chl.d = 2;
    CHECK(check_extension_irreducibility(PolyMap::identity(2), ExtensionVariant::CHL, chl, 60, 3)
              .verdict == Verdict::Pass);

    ExtensionParams ghl;
    ghl.d = 2;
    std::vector<Polynomial> tails = {gen_random_poly(4, 2, 2, 71), gen_random_poly(4, 2, 2, 72)};
    ghl.tail_H = PolyMap(default_frame(2).extended({"y1", "y2"}), std::move(tails));
    CHECK(check_extension_irreducibility(map_of(2, {"x1 + x2^2", "x2"}), ExtensionVariant::GHL, ghl,
                                         40, 5)
              .verdict == Verdict::Pass);

    CHECK(check_extension_irreducibility(f, ExtensionVariant::GH, gh, 0, 4).verdict ==
          Verdict::Inapplicable);
}

TEST_CASE("generators are deterministic and sound", "[verify]") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        GeneratorSpec spec{GenKind::TameKeller, 3, 5, 3, seed};
        auto a = gen(spec);
        auto b = gen(spec);
        CHECK(std::get<PolyMap>(a) == std::get<PolyMap>(b));
        CHECK(is_keller(std::get<PolyMap>(a)).ok);
    }
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        PolyMap h = gen_nilpotent_cubic(3, seed);
        CHECK(is_nilpotent(jacobian(h)).ok);
        PolyMap d = gen_druzkowski(3, seed);
        CHECK(is_druzkowski(d, 3).ok);
        Polynomial sf = gen_random_squarefree(2, 3, 3, seed);
        CHECK(is_squarefree(sf).ok);
    }
    GeneratorSpec nil2{GenKind::NilpotentCubic, 2, 3, 0, 3};
    PolyMap h2 = std::get<PolyMap>(gen(nil2));
    CHECK(h2[1].is_zero()); // the n = 2 family is (c x2^3, 0)
    CHECK(h2[0] == h2[0].leading_coeff() * P("x2^3", 2));

    GeneratorSpec id0{GenKind::TameKeller, 3, 5, 0, 9};
    CHECK(std::get<PolyMap>(gen(id0)) == PolyMap::identity(3)); // zero steps

    PolyMap sym = gen_symmetric_keller(2, 4, 2, 31);
    CHECK(is_symmetric(jacobian(sym)));
    CHECK(is_keller(sym).ok);
}

TEST_CASE("suite runs are byte-identical under reruns and parallelism", "[verify][report]") {
    SuiteConfig cfg;
    cfg.n = 2;
    cfg.trials = 6;
    cfg.samples = 15;
    cfg.seed = 42;

    auto once = run_property_suite(PropertyId::SquarefreePreservation, cfg);
    auto twice = run_property_suite(PropertyId::SquarefreePreservation, cfg);
    SuiteConfig par = cfg;
    par.jobs = 4;
    auto parallel = run_property_suite(PropertyId::SquarefreePreservation, par);

    RunReport r1{"verify", {}, cfg.seed, 0, once};
    RunReport r2{"verify", {}, cfg.seed, 0, twice};
    RunReport r3{"verify", {}, cfg.seed, 0, parallel};
    CHECK(canonical_report_text(r1) == canonical_report_text(r2));
    CHECK(canonical_report_text(r1) == canonical_report_text(r3));
}

TEST_CASE("every property suite passes a smoke run", "[verify]") {
    for (PropertyId id :
         {PropertyId::SquarefreePreservation, PropertyId::J41Direction, PropertyId::Lindiv,
          PropertyId::IrredlcBound, PropertyId::IrredcorChain, PropertyId::BakextI, PropertyId::Symdiag,
          PropertyId::SymmDetIdentity, PropertyId::IrredthSampling,
          PropertyId::ExtensionIrreducibility}) {
        SuiteConfig cfg;
        cfg.n = 2;
        cfg.trials = 3;
        cfg.samples = 10;
        cfg.steps = 2;
        cfg.seed = 7;
        auto reports = run_property_suite(id, cfg);
        REQUIRE(reports.size() == 3);
        for (const auto& rep : reports) {
            INFO(property_name(id) << " / " << rep.instance << " note: " << rep.note);
            CHECK(rep.verdict != Verdict::Fail);
        }
    }
}
