#include "frobint/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <regex>

using namespace frobint;

namespace {

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& s) {
    static const std::regex re(R"(^\s*(\d+)\s*(?:\.\.\s*(\d+))?\s*$)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw CLI::ValidationError("--primes", "expected A..B or a single prime");
    const std::int64_t a = std::stoll(m[1].str());
    return {a, m[2].matched ? std::stoll(m[2].str()) : a};
}

TableFormat parse_format(const std::string& s) { return s == "markdown" ? TableFormat::Markdown : TableFormat::Tsv; }

int report_check(const DiffReport& rep, const std::vector<PatternCheck>& patterns) {
    std::cerr << rep.str();
    bool ok = rep.ok();
    for (const auto& c : patterns) {
        std::cerr << (c.ok ? "pattern ok: " : "pattern FAILED: ") << c.name;
        for (auto p : c.offenders) std::cerr << ' ' << p;
        std::cerr << '\n';
        ok = ok && c.ok;
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Integral Frobenius tables for modular abelian surfaces with real multiplication"};
    app.require_subcommand(1);

    std::string format = "tsv";
    bool check = false, reasons = false;

    auto* eigen = app.add_subcommand("eigen", "conductors of O_E[pi] from a table of a_p");
    std::string eigen_fixture;
    eigen->add_option("--fixture", eigen_fixture, "fixture TSV")->required()->check(CLI::ExistingFile);
    eigen->add_option("--format", format)->check(CLI::IsMember({"tsv", "markdown"}));
    eigen->add_flag("--check", check, "compare with the fixture; exit 1 on mismatch");
    eigen->add_flag("--reasons", reasons, "append a bail-reason column");

    auto* curve = app.add_subcommand("curve", "full rows from a genus-2 model y^2 = f(x)");
    std::string model_path, primes = "2..200", curve_fixture, minpoly;
    std::int64_t level = 0;
    CurveOptions opt;
    bool all = false;
    curve->add_option("--model", model_path, "file with one line f0,...,f6")->required()->check(CLI::ExistingFile);
    curve->add_option("--primes", primes, "prime range A..B");
    curve->add_option("--level", level, "level N; primes dividing it are skipped")->required();
    curve->add_option("--fixture", curve_fixture, "fixture TSV for conjugate choice and --check")->check(CLI::ExistingFile);
    curve->add_option("--minpoly", minpoly, "minimal polynomial of the display generator");
    curve->add_option("--kmax", opt.caps.kmax, "torsion field degree cap");
    curve->add_option("--budget", opt.caps.budget, "random points per torsion level");
    curve->add_option("--enum-cap", opt.caps.enum_cap, "largest torsion subgroup enumerated");
    curve->add_option("--seed", opt.caps.seed);
    curve->add_flag("--force-nonordinary", opt.force_nonordinary, "run (*)/(**) rows, marked untrusted with '!'");
    curve->add_flag("--all", all, "also print rows with b_OL = (1) and bad primes");
    curve->add_option("--format", format)->check(CLI::IsMember({"tsv", "markdown"}));
    curve->add_flag("--check", check, "compare with the fixture; exit 1 on mismatch");
    curve->add_flag("--reasons", reasons, "append a bail-reason column");

    auto* sigma = app.add_subcommand("sigma", "integral Frobenius matrix for one prime");
    std::string ap_s, u_s, b_s, sigma_minpoly = "x^2+x-1";
    std::int64_t p = 0;
    sigma->add_option("--ap", ap_s, "a_p as c0+c1*a")->required();
    sigma->add_option("--p", p)->required();
    sigma->add_option("--u", u_s, "u_p (default: from b_OL)");
    sigma->add_option("--b", b_s, "b_p (default: a generator of b_OL)");
    sigma->add_option("--minpoly", sigma_minpoly);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*eigen) {
            const Fixture fx = load_fixture(eigen_fixture);
            const auto rows = run_eigen_mode(fx);
            std::cout << "# level: " << fx.level << "\n# minpoly: " << fx.field().minpoly_str() << '\n'
                      << render_table(rows, parse_format(format), reasons);
            if (check) return report_check(diff_against_fixture(rows, fx), pattern_assertions(fx));
            return 0;
        }
        if (*curve) {
            std::optional<Fixture> fx;
            if (!curve_fixture.empty()) fx = load_fixture(curve_fixture);
            if (check && !fx) throw CLI::ValidationError("--check", "needs --fixture");
            if (minpoly.empty()) {
                if (fx) {
                    minpoly = fx->field().minpoly_str();
                } else if (auto d = default_minpoly(level)) {
                    minpoly = *d;
                } else {
                    throw CLI::ValidationError("--minpoly", "required for this level");
                }
            }
            const auto [t, n] = parse_minpoly(minpoly);
            const RQField K(t, n);
            if (fx && (fx->t != t || fx->n != n)) throw CLI::ValidationError("--minpoly", "differs from the fixture");
            std::tie(opt.pmin, opt.pmax) = parse_range(primes);
            opt.level = level;
            const CurveInput in = load_curve_file(model_path);
            const auto rows = run_curve_mode(K, in.model, opt, fx ? &*fx : nullptr);
            std::vector<TableRow> shown;
            for (const auto& r : rows)
                if (all || is_interesting(r)) shown.push_back(r);
            std::cout << "# level: " << level << "\n# minpoly: " << K.minpoly_str() << '\n'
                      << render_table(shown, parse_format(format), reasons);
            if (check) {
                Fixture in_range = *fx;
                std::erase_if(in_range.rows, [&](const FixtureRow& r) { return r.p < opt.pmin || r.p > opt.pmax; });
                return report_check(diff_against_fixture(shown, in_range, false), {});
            }
            return 0;
        }
        if (*sigma) {
            const auto [t, n] = parse_minpoly(sigma_minpoly);
            const RQField K(t, n);
            const FrobData f = make_hp(K, RQField::parse(ap_s), p);
            OrderSpec s;
            if (b_s.empty()) {
                s = make_order_spec(K, compute_bOL(K, f).b_OL, f);
            } else {
                s.b_gen = RQField::parse(b_s);
                s.b = K.ideal(s.b_gen);
                s.frob = f;
                s.u = u_s.empty() ? find_u(K, s.b, f) : RQField::parse(u_s);
            }
            if (!basis_conditions(K, s.b, f, s.u)) {
                std::cerr << "u_p, b_p fail the basis conditions for this a_p\n";
                return 2;
            }
            const SigmaMatrix m = build_sigma(K, s);
            const SigmaReport rep = verify_sigma(K, m, s);
            std::cout << "u_p = " << RQField::format(s.u) << "\nb_p = " << RQField::format(s.b_gen) << " ("
                      << fac_of(K, s.b) << ")\nsigma_p = " << m.str() << "\ntrace " << (rep.trace_ok ? "ok" : "FAIL")
                      << ", det " << (rep.det_ok ? "ok" : "FAIL") << ", (sigma_p - u_p)/b_p "
                      << (rep.cofactor_integral ? "integral" : "NOT integral") << '\n';
            return rep.ok() ? 0 : 1;
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
