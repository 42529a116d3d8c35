// stableforms: command-line front end for the verification engine.
//
// Exit codes: 0 ok, 1 verification failure or mismatch, 2 unknown entry,
// 3 unparsable input, 4 configuration or usage error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "shf/catalog.hpp"
#include "shf/susy.hpp"

using namespace shf;
using json = nlohmann::ordered_json;

namespace {

struct Options {
    std::string catalog;
    bool json = false;
    std::uint64_t seed = 0xC0FFEE;
    int trials = 8;
    std::uint64_t sample_size = 1000000;
    bool exact = false;
    std::string field = "Q";
    std::vector<std::string> params;
};

Catalog load(const Options& o) { return Catalog::load(o.catalog.empty() ? Catalog::default_path() : o.catalog); }

CertifyConfig certify_config(const Options& o) {
    if (o.trials < 1) throw ConfigError("--trials must be at least 1");
    // largest degree bound in use is 2 + 2r with r <= 20
    if (o.sample_size < 2 * 42) throw ConfigError("--sample-size must be at least 84");
    if (o.field != "Q" && o.field != "sqrt3") throw ConfigError("--field must be Q or sqrt3");
    CertifyConfig c;
    c.seed = o.seed;
    c.trials = o.trials;
    c.sample_size = o.sample_size;
    c.exact = o.exact;
    return c;
}

std::vector<Bindings> assignments(const CatalogEntry& e, const Options& o) {
    if (!o.params.empty()) return {parse_assignments(o.params)};
    return e.parameter_samples();
}

std::string label(const std::string& name, const Bindings& env) {
    return env.empty() ? name : name + " [" + to_string(env) + "]";
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

json envelope(const char* command) {
    json j;
    j["schema"] = 1;
    j["command"] = command;
    return j;
}

// ---- parse

int cmd_parse(const Options& o, const std::string& equations, const std::string& form, int dim) {
    Bindings env = parse_assignments(o.params);
    json j = envelope("parse");
    if (!equations.empty()) {
        LieAlgebra g = parse_structure_equations(equations, env);
        auto jac = jacobi_check(g);
        j["equations"] = g.equations();
        j["jacobi"] = jac.ok;
        j["unimodular"] = is_unimodular(g);
        j["dim_Z2"] = closed_forms(g, 2).dim();
        j["dim_Z3"] = closed_forms(g, 3).dim();
        if (o.json) emit(j);
        else {
            std::cout << "equations   " << g.equations() << "\n"
                      << "jacobi      " << (jac.ok ? "ok" : "FAILS") << "\n"
                      << "unimodular  " << (is_unimodular(g) ? "yes" : "no") << "\n"
                      << "dim Z^2     " << j["dim_Z2"].get<int>() << "\n"
                      << "dim Z^3     " << j["dim_Z3"].get<int>() << "\n";
        }
        return jac.ok ? 0 : 1;
    }
    if (!form.empty()) {
        auto f = evaluate(parse_form(form), dim, env);
        j["form"] = to_string(f);
        if (o.json) emit(j);
        else std::cout << to_string(f) << "\n";
        return 0;
    }
    throw ConfigError("parse needs --equations or --form");
}

// ---- verify

int cmd_verify(const Options& o, const std::string& name, const std::string& equations, const std::string& Ftext,
               const std::string& rhotext) {
    struct Job {
        std::string label;
        LieAlgebra g;
        std::optional<SU3Embedding> w;
    };
    std::vector<Job> jobs;
    if (!name.empty()) {
        Catalog cat = load(o);
        const auto& e = cat.find(name);
        for (const auto& env : assignments(e, o)) {
            Instance inst = instantiate(e, env);
            if (!Ftext.empty() || !rhotext.empty()) {
                int n = inst.algebra.dim();
                inst.witness = SU3Embedding{evaluate_rational(parse_form(Ftext), n, env), evaluate_rational(parse_form(rhotext), n, env), Form<Rational>(n)};
            }
            jobs.push_back({label(e.name, env), inst.algebra, inst.witness});
        }
    } else if (!equations.empty()) {
        Bindings env = parse_assignments(o.params);
        LieAlgebra g = parse_structure_equations(equations, env);
        if (Ftext.empty() || rhotext.empty()) throw ConfigError("verify --equations needs --F and --rho");
        int n = g.dim();
        jobs.push_back({g.equations(), g, SU3Embedding{evaluate_rational(parse_form(Ftext), n, env), evaluate_rational(parse_form(rhotext), n, env), Form<Rational>(n)}});
    } else {
        throw ConfigError("verify needs a catalog name or --equations");
    }

    int code = 0;
    json all = envelope("verify");
    json arr = json::array();
    for (const auto& job : jobs) {
        json r;
        r["algebra"] = job.label;
        if (!job.w) {
            r["ok"] = false;
            r["message"] = "no witness; run obstruct";
            if (!o.json) std::cout << job.label << ": no witness; run obstruct\n";
            code = std::max(code, 1);
            arr.push_back(r);
            continue;
        }
        auto rep = shf_check(job.g, job.w->F, job.w->rho);
        bool g2 = g2_closure(job.g, job.w->F, job.w->rho).closed();
        bool ok = rep.ok() && g2;
        r["F"] = to_string(job.w->F);
        r["rho"] = to_string(job.w->rho);
        r["report"] = json::parse(to_json_text(rep));
        r["g2_closed"] = g2;
        r["ok"] = ok;
        arr.push_back(r);
        if (!ok) code = std::max(code, 1);
        if (!o.json) {
            std::cout << job.label << ": " << (ok ? "pass" : "FAIL") << "\n"
                      << "  F   = " << to_string(job.w->F) << "\n  rho = " << to_string(job.w->rho) << "\n"
                      << "  dF = 0: " << rep.dF << "  drho = 0: " << rep.drho << "  F^3 != 0: " << rep.F_stable
                      << "  F ^ rho = 0: " << rep.compatible << "\n"
                      << "  lambda = " << to_string(rep.lambda) << "  metric positive: " << rep.metric_positive
                      << "  normalization ratio: " << (rep.ratio ? to_string(*rep.ratio) : "n/a")
                      << "  G2 form closed: " << g2 << "\n";
            if (!rep.note.empty()) std::cout << "  note: " << rep.note << "\n";
        }
    }
    all["results"] = arr;
    if (o.json) emit(all);
    return code;
}

// ---- obstruct

int cmd_obstruct(const Options& o, const std::string& name, const std::string& equations, const std::string& alpha,
                 const std::string& X, const std::string& Y, const std::string& p22, bool search) {
    CertifyConfig cfg = certify_config(o);
    std::vector<std::pair<std::string, LieAlgebra>> algs;
    std::vector<Bindings> envs;
    if (!name.empty()) {
        Catalog cat = load(o);
        const auto& e = cat.find(name);
        for (const auto& env : assignments(e, o)) {
            algs.emplace_back(label(e.name, env), instantiate(e, env).algebra);
            envs.push_back(env);
        }
    } else if (!equations.empty()) {
        Bindings env = parse_assignments(o.params);
        LieAlgebra g = parse_structure_equations(equations, env);
        algs.emplace_back(g.equations(), g);
        envs.push_back(env);
    } else {
        throw ConfigError("obstruct needs a catalog name or --equations");
    }
    int chosen = !alpha.empty() + !X.empty() + !p22.empty() + search;
    if (chosen != 1) throw ConfigError("give exactly one of --alpha, --X [--Y], --p22, --search");

    int code = 0;
    json all = envelope("obstruct");
    json arr = json::array();
    for (std::size_t i = 0; i < algs.size(); ++i) {
        const auto& g = algs[i].second;
        int n = g.dim();
        std::optional<Certificate> c;
        if (!alpha.empty()) c = certify_p21i(g, parse_covector(alpha, n, envs[i]), cfg);
        else if (!X.empty()) c = certify_p21ii(g, parse_vector(X, n, envs[i]), parse_vector(Y.empty() ? X : Y, n, envs[i]), cfg);
        else if (!p22.empty()) c = certify_p22(g, parse_vector(p22, n, envs[i]));
        else {
            SearchBudget b;
            b.sqrt3 = o.field == "sqrt3";
            c = search_witness(g, b, cfg);
        }
        json r;
        r["algebra"] = algs[i].first;
        if (c) r["certificate"] = json::parse(to_json_text(*c));
        else r["certificate"] = nullptr;
        bool ok = c && c->valid();
        r["valid"] = ok;
        arr.push_back(r);
        if (!ok) code = 1;
        if (!o.json) {
            std::cout << algs[i].first << ": ";
            if (!c) std::cout << "no witness found\n";
            else {
                std::cout << c->kind << " " << to_string(c->verdict);
                for (const auto& w : c->witness) std::cout << " [" << w << "]";
                std::cout << " over " << c->field << "\n  " << c->detail << "\n";
                if (c->mode == "randomized" && c->valid())
                    std::cout << "  failure bound " << to_string(c->failure_bound) << " (" << c->trials << " trials, seed " << c->seed << ")\n";
            }
        }
    }
    all["results"] = arr;
    if (o.json) emit(all);
    return code;
}

// ---- classify

int cmd_classify(const Options& o, const std::string& name, bool every) {
    Catalog cat = load(o);
    ClassifyOptions opt;
    opt.cfg = certify_config(o);
    opt.sqrt3 = o.field == "sqrt3";
    std::vector<const CatalogEntry*> entries;
    if (every) {
        if (!o.params.empty()) throw ConfigError("--param cannot be combined with --all");
        for (const auto& e : cat.entries()) entries.push_back(&e);
    } else if (!name.empty()) {
        entries.push_back(&cat.find(name));
    } else {
        throw ConfigError("classify needs a catalog name or --all");
    }
    std::vector<ClassifyResult> results;
    for (const auto* e : entries)
        for (const auto& env : assignments(*e, o)) results.push_back(classify(*e, env, opt));

    int mismatches = 0;
    for (const auto& r : results) mismatches += r.match ? 0 : 1;
    if (o.json) {
        json j = json::parse(to_json_text(results));
        json out = envelope("classify");
        for (auto& [k, v] : j.items())
            if (k != "schema") out[k] = v;
        emit(out);
    } else {
        for (const auto& r : results) {
            std::cout << (r.match ? "ok        " : "MISMATCH  ") << label(r.name, r.env) << "  expected " << to_string(r.expected)
                      << ", got " << r.verdict;
            if (r.certificate) {
                std::cout << " via " << r.certificate->kind;
                for (const auto& w : r.certificate->witness) std::cout << " [" << w << "]";
                if (r.certificate_source != "hint") std::cout << " (" << r.certificate_source << ")";
            }
            if (r.structure) std::cout << " via " << r.witness_source << " witness";
            std::cout << "\n";
            for (const auto& note : r.notes) std::cout << "          note: " << note << "\n";
        }
        std::cout << results.size() << " checks, " << mismatches << " mismatches\n";
    }
    if (mismatches) {
        std::cerr << "mismatching entries:";
        for (const auto& r : results)
            if (!r.match) std::cerr << " " << label(r.name, r.env) << ";";
        std::cerr << "\n";
    }
    return mismatches ? 1 : 0;
}

// ---- susy

json su2_json(const SU2Report& a) {
    json j;
    j["omega_squared"] = a.omega_squared;
    j["nondegenerate"] = a.nondegenerate;
    j["omega_wedge_Omega"] = a.omega_Omega;
    j["Omega_wedge_Omega"] = a.Omega_Omega;
    j["metric_available"] = a.metric_available;
    if (a.iota_Omega) j["iota_alpha_Omega"] = *a.iota_Omega;
    if (a.iota_omega) j["iota_alpha_omega"] = *a.iota_omega;
    if (a.norm) j["alpha_norm_squared"] = to_string(*a.norm);
    if (!a.note.empty()) j["note"] = a.note;
    j["ok"] = a.ok();
    return j;
}

int cmd_susy(const Options& o, const std::string& name, const std::string& kpar, const std::string& kperp, bool corrected) {
    Catalog cat = load(o);
    const auto& e = cat.find(name);
    if (!e.su2) throw ConfigError(name + " carries no SU(2) data");
    if (corrected && !e.su2_corrected) throw ConfigError(name + " carries no corrected SU(2) data");
    Rational kp, kq;
    try {
        kp = evaluate(*parse_scalar(kpar), {}).to_rational();
        kq = evaluate(*parse_scalar(kperp), {}).to_rational();
    } catch (const Error& ex) {
        throw ConfigError(std::string("--kpar/--kperp must be rational: ") + ex.what());
    }
    RotationAngle angle(kp, kq);
    if (!angle.intermediate()) throw ConfigError("not an intermediate SU(2) structure: k_par and k_perp must both be nonzero");

    int code = 0;
    json all = envelope("susy");
    all["k_par"] = to_string(kp);
    all["k_perp"] = to_string(kq);
    all["fluxes"] = "not computed";
    json arr = json::array();
    for (const auto& env : assignments(e, o)) {
        Instance inst = instantiate(e, env);
        const SU2Structure& s = corrected ? *inst.su2_corrected : *inst.su2;
        SusyPipeline p = run_susy(s, inst.algebra, angle);
        json r;
        r["algebra"] = label(e.name, env);
        r["data"] = corrected ? "corrected" : "printed";
        r["su2_axioms"] = su2_json(p.axioms);
        r["F"] = to_string(p.embedding.F);
        r["rho"] = to_string(p.embedding.rho);
        r["rho_hat"] = to_string(p.embedding.rho_hat);
        r["structure"] = json::parse(to_json_text(p.structure));
        r["re_alpha_closed"] = p.re_alpha_closed;
        if (p.equations) {
            r["residuals"] = {to_string(p.equations->residual1), to_string(p.equations->residual2), to_string(p.equations->residual3)};
        }
        if (!p.failure.empty()) r["failure"] = p.failure;
        r["ok"] = p.ok();
        arr.push_back(r);
        if (!p.ok()) code = 1;
        if (!o.json) {
            std::cout << label(e.name, env) << " (" << (corrected ? "corrected" : "printed") << " data) at (k_par, k_perp) = ("
                      << to_string(kp) << ", " << to_string(kq) << "): " << (p.ok() ? "pass" : "FAIL") << "\n"
                      << "  SU(2) axioms: " << (p.axioms.ok() ? "ok" : "FAIL") << "  |alpha|^2 = "
                      << (p.axioms.norm ? to_string(*p.axioms.norm) : "n/a") << "\n"
                      << "  F = " << to_string(p.embedding.F) << "\n  rho = " << to_string(p.embedding.rho) << "\n"
                      << "  symplectic half-flat: " << (p.structure.ok() ? "yes" : "no") << "  d Re(alpha) = 0: " << p.re_alpha_closed << "\n";
            if (p.equations)
                std::cout << "  residuals: " << to_string(p.equations->residual1) << " | " << to_string(p.equations->residual2) << " | "
                          << to_string(p.equations->residual3) << "\n";
            if (!p.failure.empty()) std::cout << "  " << p.failure << "\n";
            if (!p.ok() && !corrected && e.su2_corrected) std::cout << "  corrected data available: rerun with --corrected\n";
        }
    }
    all["results"] = arr;
    if (o.json) emit(all);
    return code;
}

// ---- report

int cmd_report(const Options& o) {
    Catalog cat = load(o);
    json j = envelope("report");
    json counts;
    for (const auto& [src, n] : catalog_counts()) {
        int shf = 0, total = 0;
        for (const auto* e : cat.by_source(src)) {
            ++total;
            shf += e->expected == Expected::Shf;
        }
        counts[src] = {{"entries", total}, {"shf", shf}, {"no_shf", total - shf}};
    }
    j["sources"] = counts;
    json notes = json::array();
    for (const auto& a : cat.annotations()) notes.push_back({{"table", a.table}, {"entry", a.entry}, {"text", a.text}});
    j["annotations"] = notes;
    if (o.json) {
        emit(j);
        return 0;
    }
    for (const auto& [src, c] : counts.items())
        std::cout << src << ": " << c["entries"].get<int>() << " entries (" << c["shf"].get<int>() << " with, "
                  << c["no_shf"].get<int>() << " without symplectic half-flat structures)\n";
    std::cout << "\nannotations:\n";
    for (const auto& a : cat.annotations())
        std::cout << "  [table " << a.table << (a.entry.empty() ? "" : ", " + a.entry) << "] " << a.text << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of symplectic half-flat structures on 6-dimensional solvable Lie algebras"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--catalog", o.catalog, "catalog file (default: $STABLEFORMS_CATALOG or the shipped catalog)");
    app.add_flag("--json", o.json, "machine-readable output");
    app.add_option("--seed", o.seed, "64-bit seed")->capture_default_str();
    app.add_option("--trials", o.trials, "randomized trials per stratum")->capture_default_str();
    app.add_option("--sample-size", o.sample_size, "size S of the integer sample set")->capture_default_str();
    app.add_flag("--exact", o.exact, "symbolic expansion instead of sampling");
    app.add_option("--field", o.field, "scalar field for witness search: Q or sqrt3")->capture_default_str();
    app.add_option("--param", o.params, "parameter assignment name=value (repeatable)");

    std::string name, equations, form, Ftext, rhotext, alpha, X, Y, p22, kpar, kperp;
    int dim = 6;
    bool every = false, search = false, corrected = false;

    auto* parse = app.add_subcommand("parse", "parse structure equations or a form");
    parse->add_option("--equations", equations);
    parse->add_option("--form", form);
    parse->add_option("--dim", dim)->capture_default_str();

    auto* verify = app.add_subcommand("verify", "check a symplectic half-flat witness");
    verify->add_option("name", name, "catalog entry");
    verify->add_option("--equations", equations);
    verify->add_option("--F", Ftext);
    verify->add_option("--rho", rhotext);

    auto* obstruct = app.add_subcommand("obstruct", "certify an obstruction witness");
    obstruct->add_option("name", name, "catalog entry");
    obstruct->add_option("--equations", equations);
    obstruct->add_option("--alpha", alpha, "covector for obstruction (i)");
    obstruct->add_option("--X", X, "vector for obstruction (ii)");
    obstruct->add_option("--Y", Y, "second vector for obstruction (ii), default X");
    obstruct->add_option("--p22", p22, "vector for the calibrated G2 obstruction");
    obstruct->add_flag("--search", search, "search for a witness");

    auto* classify_cmd = app.add_subcommand("classify", "replay the classification against the catalog");
    classify_cmd->add_option("name", name, "catalog entry");
    classify_cmd->add_flag("--all", every, "every catalog entry");

    auto* susy = app.add_subcommand("susy", "run the SU(2) / type IIA pipeline on an entry");
    susy->add_option("name", name, "catalog entry")->required();
    susy->add_option("--kpar", kpar, "k_par = cos(phi), rational")->required();
    susy->add_option("--kperp", kperp, "k_perp = sin(phi), rational")->required();
    susy->add_flag("--corrected", corrected, "use the corrected SU(2) data");

    auto* report = app.add_subcommand("report", "summarize the catalog");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 4;
    }

    try {
        if (*parse) return cmd_parse(o, equations, form, dim);
        if (*verify) return cmd_verify(o, name, equations, Ftext, rhotext);
        if (*obstruct) return cmd_obstruct(o, name, equations, alpha, X, Y, p22, search);
        if (*classify_cmd) return cmd_classify(o, name, every);
        if (*susy) return cmd_susy(o, name, kpar, kperp, corrected);
        if (*report) return cmd_report(o);
    } catch (const UnknownEntry& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const ContextError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 4;
}
