// Command-line front end: parse map files, dispatch checks, constructions and
// verification suites, emit deterministic text and JSON reports.
//
// Exit codes: 0 pass/true, 1 fail/false (with counterexample), 2 usage error
// or inapplicable.

#include <CLI11.hpp>

#include <polykeller/polykeller.hpp>

#include <cctype>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace polykeller;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kError = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> infer_variable_names(const std::string& text) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < text.size();) {
        if (std::isalpha(static_cast<unsigned char>(text[i]))) {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            std::string name = text.substr(i, j - i);
            bool seen = false;
            for (const auto& n : names)
                seen = seen || n == name;
            if (!seen)
                names.push_back(name);
            i = j;
        } else {
            ++i;
        }
    }
    return names;
}

VariableFrame frame_for_expression(const std::string& expr, const std::string& vars_opt) {
    if (!vars_opt.empty()) {
        std::istringstream in(vars_opt);
        std::vector<std::string> names;
        std::string n;
        while (in >> n)
            names.push_back(n);
        return VariableFrame(std::move(names));
    }
    auto names = infer_variable_names(expr);
    if (names.empty())
        names.push_back("x1");
    return VariableFrame(std::move(names));
}

std::vector<Rational> parse_rational_list(const std::string& text) {
    std::vector<Rational> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ','))
        out.push_back(parse_rational_str(item));
    return out;
}

void emit_json(const std::string& path, const RunReport& rr) {
    if (path.empty())
        return;
    std::ofstream out(path);
    if (!out)
        throw UsageError("cannot write JSON report to " + path);
    out << canonical_report_text(rr, true);
}

void emit_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw UsageError("cannot write output file " + path);
    out << text;
}

std::uint64_t ms_since(const std::chrono::steady_clock::time_point& t0) {
    return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                          std::chrono::steady_clock::now() - t0)
                                          .count());
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

struct CheckOptions {
    std::string kind;
    std::string input_path;
    std::string expr;
    std::string vars;
    std::string json_path;
    int d = 3;
};

int run_check(const CheckOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    RunReport rr;
    rr.command = "check " + opt.kind;
    PropertyReport rep;
    rep.property = "check-" + opt.kind;
    rep.trials = 1;
    int exit_code = kError;

    bool poly_kind = opt.kind == "squarefree" || opt.kind == "irreducible";
    if (!poly_kind && !opt.expr.empty())
        throw UsageError("check " + opt.kind +
                         " expects a map file (-i); -e supplies a single polynomial "
                         "(map arity mismatch)");
    if (opt.input_path.empty() && opt.expr.empty())
        throw UsageError("check needs -i <mapfile> or -e <expression>");

    if (poly_kind) {
        Polynomial f(0);
        VariableFrame frame;
        if (!opt.expr.empty()) {
            frame = frame_for_expression(opt.expr, opt.vars);
            f = parse_polynomial(opt.expr, frame);
            rr.input_digests["expression"] = text_digest(opt.expr);
        } else {
            MapFile mf = read_map_file(opt.input_path);
            if (mf.components.size() != 1)
                throw UsageError("polynomial checks need a single-component map file");
            frame = mf.frame;
            f = mf.components[0].second;
            rr.input_digests[opt.input_path] = text_digest(write_map_text(mf));
        }
        rep.instance = print_polynomial(f, frame);
        if (opt.kind == "squarefree") {
            auto v = is_squarefree(f);
            rep.verdict = v.ok ? Verdict::Pass : Verdict::Fail;
            if (!v.ok)
                rep.witnesses.emplace_back("repeated-factor gcd", print_polynomial(v.witness, frame));
            std::cout << "squarefree: " << (v.ok ? "true" : "false") << "\n";
            if (!v.ok)
                std::cout << "  witness gcd(f, partials) = " << print_polynomial(v.witness, frame)
                          << "\n";
        } else {
            auto v = irreducibility(f);
            rep.verdict = v.rational_irreducible ? Verdict::Pass : Verdict::Fail;
            std::string abs = v.absolute == AbsoluteVerdict::Irreducible  ? "irreducible"
                              : v.absolute == AbsoluteVerdict::Reducible ? "reducible"
                                                                         : "undetermined";
            rep.witnesses.emplace_back("rational", v.rational_irreducible ? "irreducible" : "reducible");
            rep.witnesses.emplace_back("absolute", abs);
            rep.witnesses.emplace_back("certificate", v.certificate_absolute);
            std::cout << "rational: " << (v.rational_irreducible ? "irreducible" : "reducible")
                      << "\nabsolute: " << abs << " (" << v.certificate_absolute << ")\n";
            for (const auto& w : v.rational_witnesses)
                rep.witnesses.emplace_back("factor", print_polynomial(w, frame));
        }
        exit_code = rep.verdict == Verdict::Pass ? kPass : kFail;
    } else {
        MapFile mf = read_map_file(opt.input_path);
        rr.input_digests[opt.input_path] = text_digest(write_map_text(mf));
        PolyMap f = mf.to_map();
        rep.instance = print_poly_map(f);
        if (!f.is_square())
            throw UsageError("map arity mismatch: " + std::to_string(f.size()) +
                             " components over " + std::to_string(f.arity()) + " variables");
        rr.attachments["jacobian"] = matrix_to_json(jacobian(f), f.frame);
        if (opt.kind == "keller") {
            auto v = is_keller(f);
            rep.verdict = v.ok ? Verdict::Pass : Verdict::Fail;
            rep.witnesses.emplace_back("det jac F", print_polynomial(v.det, f.frame));
            std::cout << "keller: " << (v.ok ? "true" : "false") << "\n  det jac F = "
                      << print_polynomial(v.det, f.frame) << "\n";
            exit_code = v.ok ? kPass : kFail;
        } else if (opt.kind == "nilpotent") {
            auto v = is_nilpotent(jacobian(f));
            rep.verdict = v.ok ? Verdict::Pass : Verdict::Fail;
            if (v.ok)
                rep.witnesses.emplace_back("nilpotency index", std::to_string(v.index));
            else
                rep.witnesses.emplace_back("nonzero entry of M^n", print_polynomial(v.witness, f.frame));
            std::cout << "nilpotent: " << (v.ok ? "true" : "false") << "\n";
            if (v.ok)
                std::cout << "  index k with M^k = 0: " << v.index << "\n";
            exit_code = v.ok ? kPass : kFail;
        } else if (opt.kind == "symmetric") {
            bool ok = is_symmetric(jacobian(f));
            rep.verdict = ok ? Verdict::Pass : Verdict::Fail;
            std::cout << "symmetric jacobian: " << (ok ? "true" : "false") << "\n";
            exit_code = ok ? kPass : kFail;
        } else if (opt.kind == "druzkowski") {
            auto v = is_druzkowski(f, opt.d);
            rep.verdict = v.ok ? Verdict::Pass : Verdict::Fail;
            if (!v.ok) {
                rep.witnesses.emplace_back("offending component index",
                                           std::to_string(v.bad_component + 1));
            }
            std::cout << "druzkowski (d=" << opt.d << "): " << (v.ok ? "true" : "false") << "\n";
            exit_code = v.ok ? kPass : kFail;
        } else {
            throw UsageError("unknown check kind: " + opt.kind);
        }
    }

    rr.reports.push_back(rep);
    rr.duration_ms = static_cast<std::int64_t>(ms_since(t0));
    emit_json(opt.json_path, rr);
    return exit_code;
}

// ---------------------------------------------------------------------------
// construct
// ---------------------------------------------------------------------------

struct ConstructOptions {
    std::string variant;
    std::string input_path;
    std::string lambda;
    std::string f_expr;
    std::string h_expr;
    std::string tail_path;
    std::string out_path;
    std::string json_path;
    int d = 0;
    std::string u = "1";
    std::string uprime = "0";
};

int run_construct(const ConstructOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    if (opt.input_path.empty())
        throw UsageError("construct needs an input map (-i)");
    MapFile mf = read_map_file(opt.input_path);
    PolyMap f = mf.to_map();
    if (!f.is_square())
        throw UsageError("construct needs a square input map");
    int n = f.arity();

    RunReport rr;
    rr.command = "construct --variant " + opt.variant;
    rr.input_digests[opt.input_path] = text_digest(write_map_text(mf));
    PropertyReport rep;
    rep.property = "construct-" + opt.variant;
    rep.trials = 1;

    PolyMap g = PolyMap::identity(1);
    std::string relation;

    if (auto variant = variant_from_name(opt.variant)) {
        ExtensionParams params;
        if (is_scalar_variant(*variant)) {
            params.lambda = opt.lambda.empty()
                                ? std::vector<Rational>(static_cast<std::size_t>(n), Rational(0))
                                : parse_rational_list(opt.lambda);
            if (static_cast<int>(params.lambda.size()) != n)
                throw UsageError("--lambda needs exactly " + std::to_string(n) + " entries");
            if (*variant == ExtensionVariant::GH) {
                if (opt.h_expr.empty())
                    throw UsageError("--variant gh needs --h <expression over x, x_{n+1}>");
                VariableFrame hx = f.frame.extended({"x" + std::to_string(n + 1)});
                params.tail_h = parse_polynomial(opt.h_expr, hx);
            }
        } else {
            if (opt.d < 2)
                throw UsageError("block variants need --d >= 2");
            params.d = opt.d;
            if (*variant == ExtensionVariant::GHL) {
                if (opt.tail_path.empty())
                    throw UsageError("--variant ghl needs --tail <mapfile over (x, y)>");
                MapFile tail = read_map_file(opt.tail_path);
                PolyMap tail_map = tail.to_map();
                if (tail_map.size() != n || tail_map.arity() != 2 * n)
                    throw UsageError("ghl tail must have n components over (x, y)");
                params.tail_H = tail_map;
            }
        }
        g = extend(f, *variant, params);

        Polynomial det_f = detail::lift_to_arity(determinant(jacobian(f)), g.arity());
        Polynomial det_g = determinant(jacobian(g));
        int sign = extension_det_sign(*variant, n);
        Polynomial expect = sign < 0 ? -det_f : det_f;
        if (det_g != expect)
            throw std::logic_error("extension determinant relation failed");
        relation = std::string("det jac G = ") + (sign < 0 ? "-" : "") + "det jac F" +
                   (*variant == ExtensionVariant::SCHL ? " (sign (-1)^n)" : "");
        rep.witnesses.emplace_back("det jac G", print_polynomial(det_g, g.frame));
    } else if (opt.variant == "symred") {
        if (opt.f_expr.empty())
            throw UsageError("--variant symred needs --f <expression over the input frame>");
        Polynomial ff = parse_polynomial(opt.f_expr, f.frame);
        Rational u = parse_rational_str(opt.u);
        Rational uprime = parse_rational_str(opt.uprime);
        if (u == 0)
            throw UsageError("symred needs --u != 0");
        g = symred(ff, f, u, uprime);
        relation = "jac G symmetric (Hessian by construction)";
        rep.witnesses.emplace_back("det jac G", print_polynomial(determinant(jacobian(g)), g.frame));
    } else if (opt.variant == "gradred") {
        Polynomial ff = opt.f_expr.empty() ? Polynomial::zero(n) : parse_polynomial(opt.f_expr, f.frame);
        g = grad_reduction(ff, f);
        Polynomial det_f = detail::lift_to_arity(determinant(jacobian(f)), 2 * n);
        Polynomial expect = det_f * det_f;
        if (n % 2 == 1)
            expect = -expect;
        Polynomial det_g = determinant(jacobian(g));
        if (det_g != expect)
            throw std::logic_error("grad reduction determinant identity failed");
        relation = "det jac G = (-1)^n (det jac F)^2";
        rep.witnesses.emplace_back("det jac G", print_polynomial(det_g, g.frame));
    } else {
        throw UsageError("unknown construct variant: " + opt.variant);
    }

    MapFile out = map_file_of(g, "G");
    std::ostringstream header;
    header << "constructed by: polykeller construct --variant " << opt.variant;
    if (!relation.empty())
        header << "\n" << relation;
    emit_output(opt.out_path, write_map_text(out, header.str()));
    if (!relation.empty())
        std::cerr << relation << "\n";

    rep.instance = print_poly_map(f);
    rep.verdict = Verdict::Pass;
    rep.witnesses.emplace_back("relation", relation);
    rr.reports.push_back(rep);
    rr.duration_ms = static_cast<std::int64_t>(ms_since(t0));
    emit_json(opt.json_path, rr);
    return kPass;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyOptions {
    std::string property;
    std::string gen_kind;
    std::string variant = "chl";
    std::string json_path;
    int n = 2;
    int degree = 3;
    int steps = 3;
    int trials = 20;
    int samples = 100;
    int jobs = 1;
    int d = 3;
    std::uint64_t seed = 0;
};

int run_verify(const VerifyOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    auto id = property_from_name(opt.property);
    if (!id)
        throw UsageError("unknown property: " + opt.property);
    if (opt.trials <= 0) {
        std::cout << "inapplicable: no trials requested\n";
        return kError;
    }
    if (opt.n < 1)
        throw UsageError("--n must be positive");
    if (!opt.gen_kind.empty() && !gen_kind_from_name(opt.gen_kind))
        throw UsageError("unknown generator kind: " + opt.gen_kind);

    SuiteConfig cfg;
    cfg.n = opt.n;
    cfg.degree = opt.degree;
    cfg.steps = opt.steps;
    cfg.trials = opt.trials;
    cfg.samples = opt.samples;
    cfg.seed = opt.seed;
    cfg.jobs = opt.jobs;
    cfg.d = opt.d;
    if (auto v = variant_from_name(opt.variant))
        cfg.variant = *v;
    else
        throw UsageError("unknown extension variant: " + opt.variant);

    auto reports = run_property_suite(*id, cfg);

    RunReport rr;
    std::ostringstream cmd;
    cmd << "verify --property " << opt.property << " --n " << opt.n << " --degree " << opt.degree
        << " --steps " << opt.steps << " --trials " << opt.trials << " --samples " << opt.samples
        << " --seed " << opt.seed;
    rr.command = cmd.str();
    rr.seed = opt.seed;
    rr.reports = reports;

    std::uint64_t pass = 0, fail = 0, inapplicable = 0;
    for (const auto& rep : reports) {
        switch (rep.verdict) {
        case Verdict::Pass: ++pass; break;
        case Verdict::Fail: ++fail; break;
        case Verdict::Inapplicable: ++inapplicable; break;
        }
        if (rep.verdict != Verdict::Pass) {
            std::cout << rep.instance << ": " << verdict_name(rep.verdict);
            if (!rep.note.empty())
                std::cout << " (" << rep.note << ")";
            std::cout << "\n";
            for (const auto& [role, value] : rep.witnesses)
                std::cout << "    " << role << ": " << value << "\n";
        }
    }
    std::cout << opt.property << ": " << pass << " pass, " << fail << " fail, " << inapplicable
              << " inapplicable (" << reports.size() << " instances, seed " << opt.seed << ")\n";

    rr.duration_ms = static_cast<std::int64_t>(ms_since(t0));
    emit_json(opt.json_path, rr);
    if (fail > 0)
        return kFail;
    if (pass == 0)
        return kError;
    return kPass;
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

struct GenOptions {
    std::string kind;
    std::string out_path;
    int n = 2;
    int degree = 3;
    int steps = 3;
    std::uint64_t seed = 0;
};

int run_gen(const GenOptions& opt) {
    auto kind = gen_kind_from_name(opt.kind);
    if (!kind)
        throw UsageError("unknown generator kind: " + opt.kind);
    if (opt.n < 1)
        throw UsageError("--n must be positive");
    GeneratorSpec spec{*kind, opt.n, opt.degree, opt.steps, opt.seed};
    Instance inst = gen(spec);
    MapFile mf;
    if (std::holds_alternative<PolyMap>(inst)) {
        mf = map_file_of(std::get<PolyMap>(inst), "F");
    } else {
        const Polynomial& p = std::get<Polynomial>(inst);
        mf.frame = default_frame(p.arity());
        mf.components.emplace_back("F1", p);
    }
    emit_output(opt.out_path, write_map_text(mf, describe(spec)));
    return kPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"polykeller: exact computer-algebra toolkit for Keller-map reductions and "
                 "irreducibility experiments"};
    app.require_subcommand(1);

    CheckOptions check_opt;
    auto* check = app.add_subcommand("check", "decide a predicate for a map or polynomial");
    check->add_option("kind", check_opt.kind, "keller|squarefree|irreducible|nilpotent|symmetric|druzkowski")
        ->required();
    check->add_option("-i,--input", check_opt.input_path, "map file input");
    check->add_option("-e,--expression", check_opt.expr, "polynomial expression input");
    check->add_option("--vars", check_opt.vars, "explicit variable list for -e, e.g. \"x1 x2\"");
    check->add_option("--d", check_opt.d, "power for the druzkowski check (default 3)");
    check->add_option("--json", check_opt.json_path, "write a JSON run report");

    ConstructOptions cons_opt;
    auto* cons = app.add_subcommand("construct", "build one of the extension and reduction maps");
    cons->add_option("--variant", cons_opt.variant,
                     "ch|dz|sch|gh|chl|dzl|schl|ghl|symred|gradred")
        ->required();
    cons->add_option("-i,--input", cons_opt.input_path, "input map file");
    cons->add_option("--lambda", cons_opt.lambda, "comma-separated rationals (scalar variants)");
    cons->add_option("--d", cons_opt.d, "Hadamard power (block variants, >= 2)");
    cons->add_option("--u", cons_opt.u, "symred u (nonzero)");
    cons->add_option("--uprime", cons_opt.uprime, "symred u'");
    cons->add_option("--f", cons_opt.f_expr, "polynomial f for symred/gradred");
    cons->add_option("--hpoly", cons_opt.h_expr, "tail polynomial for gh");
    cons->add_option("--tail", cons_opt.tail_path, "tail map file for ghl");
    cons->add_option("-o,--output", cons_opt.out_path, "output map file (default stdout)");
    cons->add_option("--json", cons_opt.json_path, "write a JSON run report");

    VerifyOptions ver_opt;
    auto* ver = app.add_subcommand("verify", "run a property suite over seeded instances");
    ver->add_option("--property", ver_opt.property, "property id (see README)")->required();
    ver->add_option("--gen", ver_opt.gen_kind, "generator kind (informative; recipes are per-property)");
    ver->add_option("--n", ver_opt.n, "ambient arity");
    ver->add_option("--degree", ver_opt.degree, "degree bound for generated instances");
    ver->add_option("--steps", ver_opt.steps, "tame composition steps");
    ver->add_option("--trials", ver_opt.trials, "number of instances");
    ver->add_option("--samples", ver_opt.samples, "samples per instance (mu draws)");
    ver->add_option("--jobs", ver_opt.jobs, "parallel workers (output order is canonical)");
    ver->add_option("--variant", ver_opt.variant, "extension variant for extension-irreducibility");
    ver->add_option("--d", ver_opt.d, "Hadamard power for block variants");
    ver->add_option("--seed", ver_opt.seed, "deterministic seed (default 0)")
        ->envname("POLYKELLER_SEED");
    ver->add_option("--json", ver_opt.json_path, "write a JSON run report");

    GenOptions gen_opt;
    auto* genc = app.add_subcommand("gen", "emit a seeded instance as a map file");
    genc->add_option("--kind", gen_opt.kind,
                     "tame-keller|symmetric-keller|nilpotent-cubic|druzkowski|random-poly|random-squarefree")
        ->required();
    genc->add_option("--n", gen_opt.n, "ambient arity");
    genc->add_option("--degree", gen_opt.degree, "degree bound");
    genc->add_option("--steps", gen_opt.steps, "steps / term count");
    genc->add_option("--seed", gen_opt.seed, "deterministic seed (default 0)")
        ->envname("POLYKELLER_SEED");
    genc->add_option("-o,--output", gen_opt.out_path, "output map file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kError;
    }

    try {
        if (check->parsed())
            return run_check(check_opt);
        if (cons->parsed())
            return run_construct(cons_opt);
        if (ver->parsed())
            return run_verify(ver_opt);
        if (genc->parsed())
            return run_gen(gen_opt);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    } catch (const MapFileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}
