// Command line front end: every verification suite and data dump behind one
// binary. Complex values are written RE,IM on the command line and [re, im]
// in JSON. Exit codes: 0 ok, 1 residual failure, 2 usage/parse error.
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "htorus/bundle.hpp"
#include "htorus/deltamodel.hpp"
#include "htorus/gauss.hpp"
#include "htorus/matsushima.hpp"
#include "htorus/modarith.hpp"
#include "htorus/nctorus.hpp"
#include "htorus/oscillator.hpp"
#include "htorus/thetafun.hpp"
#include "htorus/verify.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace htorus;

cplx parse_complex(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError("complex value must be RE,IM: " + text);
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

json cnum(cplx v) { return json::array({v.real(), v.imag()}); }

json matrix_json(const CMat& m) { return json::parse(to_json(m)); }

std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t value) {
    if (opt->count() > 0) return value;
    if (const char* env = std::getenv("HEISENBERG_TORUS_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

void emit(const json& j) { std::printf("%s\n", j.dump(2).c_str()); }

struct Options {
    long long r = 3, q = 2, mu = 1, k = -1, n = 0;
    long long lm_l = -1, lm_m = -1;
    std::string tau_text = "0,1";
    std::string s_text = "1,0", t_text = "1,0";
    std::string dump, format = "json";
    std::uint64_t seed = 0;
    long long grid_x = 16, grid_y = 16;
};

int cmd_crt(const Options& o, bool have_k, bool have_lm) {
    const CoprimePair pair(o.r, o.q);
    json out;
    out["r"] = o.r;
    out["q"] = o.q;
    if (have_k) {
        const auto [l, m] = crt_split(pair, o.k);
        out["k"] = o.k;
        out["l"] = l;
        out["m"] = m;
    } else if (have_lm) {
        out["l"] = o.lm_l;
        out["m"] = o.lm_m;
        out["k"] = crt_join(pair, o.lm_l, o.lm_m);
    } else {
        json table = json::array();
        for (long long l = 0; l < o.r; ++l)
            for (long long m = 0; m < o.q; ++m)
                table.push_back({{"l", l}, {"m", m}, {"k", crt_join(pair, l, m)}});
        out["bijection"] = table;
    }
    emit(out);
    return 0;
}

int cmd_gauss(const Options& o, bool have_q, bool check) {
    json out;
    out["mu"] = o.mu;
    out["r"] = o.r;
    out["value"] = cnum(gauss_sum(o.mu, o.r));
    if (have_q && check) {
        const CoprimePair pair(o.r, o.q);
        out["q"] = o.q;
        out["value_mu_q_r"] = cnum(gauss_sum(o.mu * o.q, o.r));
        out["value_mu_r_q"] = cnum(gauss_sum(o.mu * o.r, o.q));
        out["value_mu_rq"] = cnum(gauss_sum(o.mu, pair.rq()));
        const double resid = check_multiplicativity(o.mu, pair);
        const double tol = 1e-9 * (1.0 + std::sqrt(static_cast<double>(pair.rq())));
        out["multiplicativity_residual"] = resid;
        out["tolerance"] = tol;
        emit(out);
        return resid <= tol ? 0 : 1;
    }
    emit(out);
    return 0;
}

int cmd_rep(const Options& o) {
    const CoprimePair pair(o.r, o.q);
    const TorusRep rep = clock_shift_rep(pair, parse_complex(o.s_text), parse_complex(o.t_text));
    if (!o.dump.empty()) {
        if (o.dump == "csv") {
            std::printf("# U\n%s# V\n%s", to_csv(rep.U).c_str(), to_csv(rep.V).c_str());
        } else {
            json out;
            out["U"] = matrix_json(rep.U);
            out["V"] = matrix_json(rep.V);
            emit(out);
        }
        return 0;
    }
    json out;
    out["r"] = o.r;
    out["q"] = o.q;
    out["a"] = cnum(rep.a);
    out["b"] = cnum(rep.b);
    bool ok = true;
    json checks = json::array();
    for (const NamedResidual& res : verify_rep(rep)) {
        checks.push_back({{"name", res.name}, {"residual", res.value}, {"tolerance", 1e-12}});
        ok = ok && res.value <= 1e-12;
    }
    out["checks"] = checks;
    out["pass"] = ok;
    emit(out);
    return ok ? 0 : 1;
}

int cmd_theta(const Options& o, long long level, long long index) {
    const ModuliPoint mod(parse_complex(o.tau_text));
    const long long trunc =
        auto_trunc(level, index, mod.tau * 1.0 + cplx(1.0, 0.0), mod, 1e-16);
    std::printf("x,y,re,im\n");
    for (long long a = 0; a < o.grid_x; ++a)
        for (long long b = 0; b < o.grid_y; ++b) {
            const double x = static_cast<double>(a) / static_cast<double>(o.grid_x);
            const double y = static_cast<double>(b) / static_cast<double>(o.grid_y);
            const cplx z = cplx(x, 0.0) + mod.tau * y;
            const cplx v = theta_series(level, index, trunc, z, mod.tau);
            std::printf("%s,%s,%s,%s\n", format_double(x).c_str(), format_double(y).c_str(),
                        format_double(v.real()).c_str(), format_double(v.imag()).c_str());
        }
    return 0;
}

int cmd_vtheta(const Options& o, bool dump_csv) {
    const CoprimePair pair(o.r, o.q);
    const ModuliPoint mod(parse_complex(o.tau_text));
    const VectorThetaBasis basis = build_vector_thetas(pair, mod, 1e-8);
    const BundleData bd = make_bundle(pair, mod);
    if (dump_csv) {
        std::printf("m,j,x,y,re,im\n");
        for (std::size_t m = 0; m < basis.sections.size(); ++m)
            for (long long a = 0; a < o.grid_x; ++a)
                for (long long b = 0; b < o.grid_y; ++b) {
                    const double x = static_cast<double>(a) / static_cast<double>(o.grid_x);
                    const double y = static_cast<double>(b) / static_cast<double>(o.grid_y);
                    const std::vector<cplx> v = basis.sections[m].eval(cplx(x, 0.0) + mod.tau * y);
                    for (std::size_t j = 0; j < v.size(); ++j)
                        std::printf("%zu,%zu,%s,%s,%s,%s\n", m, j, format_double(x).c_str(),
                                    format_double(y).c_str(), format_double(v[j].real()).c_str(),
                                    format_double(v[j].imag()).c_str());
                }
        return 0;
    }
    Rng rng(o.seed);
    double bres = 0.0;
    for (int i = 0; i < 20; ++i) {
        const cplx z = rng.in_fundamental_domain(mod.tau);
        for (const SectionExpr& s : basis.sections) {
            const auto [r1, rt] = boundary_residual(bd, s, z);
            bres = std::max({bres, r1, rt});
        }
    }
    const CMat gram = weighted_gram(bd, basis.sections, 48);
    json out;
    out["r"] = o.r;
    out["q"] = o.q;
    out["sections"] = basis.sections.size();
    out["truncation_box"] = basis.trunc;
    out["boundary_residual"] = bres;
    out["gram_rank"] = gram_rank(gram, 1e-6);
    const bool ok = bres <= 1e-8 && gram_rank(gram, 1e-6) == basis.sections.size();
    out["pass"] = ok;
    emit(out);
    return ok ? 0 : 1;
}

int cmd_deltamodel(const Options& o, bool run_verify_suite) {
    const CoprimePair pair(o.r, o.q);
    if (!o.dump.empty()) {
        const bool csv = o.format == "csv";
        auto put = [&](const char* name, const CMat& m) {
            if (csv)
                std::printf("# %s\n%s", name, to_csv(m).c_str());
            else
                std::printf("{\"name\":\"%s\",\"matrix\":%s}\n", name, to_json(m).c_str());
        };
        if (o.dump == "A") put("A", build_A(pair, o.mu));
        else if (o.dump == "B") put("B", build_B(pair, o.mu));
        else if (o.dump == "C") put("C", build_C(pair, o.mu));
        else if (o.dump == "family") {
            const OperatorFamily fam = build_operator_family(pair);
            put("U", fam.U); put("V", fam.V); put("Ut", fam.Ut); put("Vt", fam.Vt);
            put("Ub", fam.Ub); put("Vb", fam.Vb); put("Utb", fam.Utb); put("Vtb", fam.Vtb);
        } else {
            throw CLI::ValidationError("--dump must be A, B, C or family");
        }
        return 0;
    }
    json out;
    out["r"] = o.r;
    out["q"] = o.q;
    out["mu"] = o.mu;
    const TensorIdentity ti = verify_tensor_identity(pair, o.mu);
    out["tensor_conjugation_residual"] = ti.conjugation_residual;
    out["trace_multiplicativity_residual"] = ti.trace_residual;
    bool ok = ti.conjugation_residual <= 1e-12 && ti.trace_residual <= 1e-10;
    if (run_verify_suite) {
        const OperatorFamily fam = build_operator_family(pair);
        json checks = json::array();
        for (const NamedResidual& res : family_residuals(fam)) {
            const double tol =
                (res.name == "family_unitarity" || res.name == "power_scalars") ? 1e-12 : 1e-13;
            checks.push_back({{"name", res.name}, {"residual", res.value}, {"tolerance", tol}});
            ok = ok && res.value <= tol;
        }
        const double mc = mutual_commutation(fam);
        checks.push_back({{"name", "mutual_commutation"}, {"residual", mc}, {"tolerance", 1e-13}});
        ok = ok && mc <= 1e-13;
        if (pair.rq() <= 42) {
            const double pl = blackboard_phase_law(fam);
            checks.push_back(
                {{"name", "blackboard_phase_law"}, {"residual", pl}, {"tolerance", 1e-12}});
            ok = ok && pl <= 1e-12;
        }
        out["checks"] = checks;
    }
    out["pass"] = ok;
    emit(out);
    return ok ? 0 : 1;
}

int cmd_landau(const Options& o) {
    const CoprimePair pair(o.r, o.q);
    const ModuliPoint mod(parse_complex(o.tau_text));
    const BundleData bd = make_bundle(pair, mod);
    const VectorThetaBasis basis = build_vector_thetas(pair, mod, 1e-8);
    const LandauLevel lvl = landau_level(bd, basis, static_cast<int>(o.n));
    json out;
    out["r"] = o.r;
    out["q"] = o.q;
    out["n"] = o.n;
    out["rank"] = gram_rank(lvl.gram, 1e-6);
    out["eigenvalue_residual"] = lvl.eigen_residual;
    out["preservation_residual"] = level_preservation(bd, lvl);
    const bool ok = out["rank"] == static_cast<std::size_t>(o.q) &&
                    lvl.eigen_residual <= 1e-8 &&
                    out["preservation_residual"].get<double>() <= 1e-6;
    out["pass"] = ok;
    emit(out);
    return ok ? 0 : 1;
}

int cmd_fmn(const Options& o) {
    const CoprimePair pair(o.r, o.q);
    const FmnStar fs = fmn_star(pair);
    json out;
    out["left"] = {fs.left.r(), fs.left.q()};
    out["right"] = {fs.right.r(), fs.right.q()};
    out["star"] = {fs.star.r(), fs.star.q()};
    out["h0"] = {fs.h0_left, fs.h0_right, fs.h0_star};
    out["product_ok"] = fs.h0_left * fs.h0_right == fs.h0_star;
    const CoprimePair dd = dual_pair(dual_pair(pair));
    out["dual_involution_ok"] = dd == pair;
    emit(out);
    return (out["product_ok"].get<bool>() && out["dual_involution_ok"].get<bool>()) ? 0 : 1;
}

int cmd_verify(const Options& o) {
    const std::vector<Check> checks = run_verify(o.r, o.q, parse_complex(o.tau_text), o.seed);
    json out;
    out["r"] = o.r;
    out["q"] = o.q;
    out["tau"] = o.tau_text;
    out["seed"] = o.seed;
    json arr = json::array();
    bool ok = true;
    for (const Check& c : checks) {
        arr.push_back({{"name", c.name},
                       {"residual", c.residual},
                       {"tolerance", c.tol},
                       {"pass", c.pass()}});
        ok = ok && c.pass();
    }
    out["checks"] = arr;
    out["pass"] = ok;
    emit(out);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification suites for rational torus representations, theta bases and the delta model"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;

    auto add_pair = [&](CLI::App* sub) {
        sub->fallthrough();
        sub->add_option("--r", o.r, "rank r");
        sub->add_option("--q", o.q, "degree q");
    };

    CLI::App* crt = app.add_subcommand("crt", "residue bijection Z_r x Z_q <-> Z_rq");
    add_pair(crt);
    CLI::Option* opt_k = crt->add_option("--k", o.k, "split k into (l, m)");
    std::vector<long long> lm;
    CLI::Option* opt_lm = crt->add_option("--lm", lm, "join l m into k")->expected(2);

    CLI::App* gauss = app.add_subcommand("gauss", "quadratic Gauss sums");
    gauss->fallthrough();
    gauss->add_option("--mu", o.mu, "numerator mu");
    gauss->add_option("--r", o.r, "modulus r");
    CLI::Option* opt_gq = gauss->add_option("--q", o.q, "coprime second modulus");
    CLI::Option* opt_check = gauss->add_flag("--check", "check the multiplicative identity");

    CLI::App* rep = app.add_subcommand("rep", "clock/shift representation residuals");
    add_pair(rep);
    rep->add_option("--s", o.s_text, "clock twist RE,IM");
    rep->add_option("--t", o.t_text, "shift twist RE,IM");
    rep->add_option("--dump", o.dump, "dump U, V (csv|json)");

    CLI::App* theta = app.add_subcommand("theta", "level-k theta values on a grid (CSV)");
    theta->fallthrough();
    long long level = 1, index = 0;
    theta->add_option("--k", level, "level");
    theta->add_option("--l", index, "index");
    theta->add_option("--tau", o.tau_text, "modulus RE,IM");
    std::vector<long long> grid;
    theta->add_option("--grid", grid, "grid NX NY")->expected(2);

    CLI::App* vtheta = app.add_subcommand("vtheta", "vector theta basis report");
    add_pair(vtheta);
    vtheta->add_option("--tau", o.tau_text, "modulus RE,IM");
    CLI::Option* opt_vdump = vtheta->add_flag("--dump", "dump component values (CSV)");
    vtheta->add_option("--grid", grid, "grid NX NY")->expected(2);

    CLI::App* dm = app.add_subcommand("deltamodel", "finite model identities");
    add_pair(dm);
    dm->add_option("--mu", o.mu, "covering factor mu");
    dm->add_option("--dump", o.dump, "dump A|B|C|family");
    CLI::Option* opt_dverify = dm->add_flag("--verify", "run the full identity suite");

    CLI::App* landau = app.add_subcommand("landau", "eigenspace ladder report");
    add_pair(landau);
    landau->add_option("--tau", o.tau_text, "modulus RE,IM");
    landau->add_option("--n", o.n, "level index");

    CLI::App* fmn = app.add_subcommand("fmn", "rank/degree duality bookkeeping");
    add_pair(fmn);

    CLI::App* verify = app.add_subcommand("verify", "full residual suite");
    add_pair(verify);
    verify->add_option("--tau", o.tau_text, "modulus RE,IM");
    CLI::Option* opt_seed = verify->add_option("--seed", o.seed, "sampling seed");

    app.add_option("--format", o.format, "output format (json|csv)")
        ->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (crt->parsed()) {
            if (opt_lm->count()) {
                o.lm_l = lm[0];
                o.lm_m = lm[1];
            }
            return cmd_crt(o, opt_k->count() > 0, opt_lm->count() > 0);
        }
        if (gauss->parsed()) return cmd_gauss(o, opt_gq->count() > 0, opt_check->count() > 0);
        if (rep->parsed()) return cmd_rep(o);
        if (theta->parsed()) {
            if (grid.size() == 2) {
                o.grid_x = grid[0];
                o.grid_y = grid[1];
            }
            return cmd_theta(o, level, index);
        }
        if (vtheta->parsed()) {
            if (grid.size() == 2) {
                o.grid_x = grid[0];
                o.grid_y = grid[1];
            }
            return cmd_vtheta(o, opt_vdump->count() > 0);
        }
        if (dm->parsed()) return cmd_deltamodel(o, opt_dverify->count() > 0);
        if (landau->parsed()) return cmd_landau(o);
        if (fmn->parsed()) return cmd_fmn(o);
        if (verify->parsed()) {
            o.seed = resolve_seed(opt_seed, o.seed);
            return cmd_verify(o);
        }
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::out_of_range& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
