#include "shf/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#ifndef SHF_CATALOG_PATH
#define SHF_CATALOG_PATH "data/shf_catalog.json"
#endif

namespace shf {

using json = nlohmann::ordered_json;

std::string to_string(Expected e) { return e == Expected::Shf ? "shf" : "no-shf"; }

std::string ObstructionHint::describe() const {
    switch (kind) {
        case Kind::P21i: return "P21-i alpha = " + alpha;
        case Kind::P21ii: return "P21-ii X = " + X + ", Y = " + Y;
        case Kind::P22: return "P22 X = " + X;
    }
    return {};
}

std::vector<Bindings> CatalogEntry::parameter_samples() const {
    if (params.empty()) return {Bindings{}};
    if (!samples.empty()) return samples;
    if (params.size() != 1) throw ParseError(name + ": several parameters need joint samples");
    std::vector<Bindings> out;
    for (const auto& s : params[0].samples) out.push_back({{params[0].name, evaluate(*parse_scalar(s), {}).to_rational()}});
    return out;
}

const std::map<std::string, int>& catalog_counts() {
    static const std::map<std::string, int> counts{{"table1", 14}, {"table2", 17}, {"table3", 27}, {"table4", 9},
                                                   {"table5", 4},  {"table6", 12}, {"theorem1.1", 2}};
    return counts;
}

namespace {

std::string text_field(const json& j, const char* key, bool required = true) {
    if (!j.contains(key)) {
        if (required) throw ParseError(std::string("missing field '") + key + "'");
        return {};
    }
    if (!j[key].is_string()) throw ParseError(std::string("field '") + key + "' must be a string");
    return j[key].get<std::string>();
}

SU2Text read_su2(const json& j) {
    return {text_field(j, "alpha_re"), text_field(j, "alpha_im"), text_field(j, "omega"), text_field(j, "Omega_re"),
            text_field(j, "Omega_im")};
}

Rational read_rational(const std::string& s) {
    Quadratic q = evaluate(*parse_scalar(s), {});
    if (!q.is_rational()) throw ParseError("parameter sample '" + s + "' is not rational");
    return q.to_rational();
}

CatalogEntry read_entry(const json& j) {
    CatalogEntry e;
    e.name = text_field(j, "name");
    e.source = text_field(j, "source");
    if (!catalog_counts().count(e.source)) throw ParseError("unknown source '" + e.source + "'");
    e.decomposition = text_field(j, "decomposition");
    static const std::set<std::string> decs{"indecomposable", "3+3", "4+2", "5+1"};
    if (!decs.count(e.decomposition)) throw ParseError("unknown decomposition '" + e.decomposition + "'");
    if (!j.contains("unimodular") || !j["unimodular"].is_boolean()) throw ParseError("field 'unimodular' must be a boolean");
    e.unimodular = j["unimodular"].get<bool>();
    std::string exp = text_field(j, "expected");
    if (exp == "shf") e.expected = Expected::Shf;
    else if (exp == "no-shf") e.expected = Expected::NoShf;
    else throw ParseError("expected must be 'shf' or 'no-shf', got '" + exp + "'");
    e.equations = text_field(j, "equations");
    LieFamily family(e.equations);

    for (const auto& p : j.value("params", json::array())) {
        ParamDecl d;
        d.name = text_field(p, "name");
        for (const auto& c : p.value("constraints", json::array())) d.constraints.push_back(parse_constraint(c.get<std::string>()));
        for (const auto& s : p.value("samples", json::array())) d.samples.push_back(s.get<std::string>());
        e.params.push_back(std::move(d));
    }
    for (const auto& c : j.value("param_constraints", json::array())) e.param_constraints.push_back(parse_constraint(c.get<std::string>()));
    for (const auto& s : j.value("samples", json::array())) {
        Bindings b;
        for (const auto& [k, v] : s.items()) b[k] = read_rational(v.get<std::string>());
        e.samples.push_back(std::move(b));
    }
    std::set<std::string> declared;
    for (const auto& p : e.params) declared.insert(p.name);
    for (const auto& p : family.parameters())
        if (!declared.count(p)) throw ParseError("parameter '" + p + "' is used but not declared");

    if (j.contains("witness")) e.witness = WitnessText{text_field(j["witness"], "F"), text_field(j["witness"], "rho")};
    if (j.contains("witness_corrected"))
        e.witness_corrected = WitnessText{text_field(j["witness_corrected"], "F"), text_field(j["witness_corrected"], "rho")};
    for (const auto& h : j.value("obstruction", json::array())) {
        ObstructionHint o;
        std::string kind = text_field(h, "kind");
        if (kind == "p21i") {
            o.kind = ObstructionHint::Kind::P21i;
            o.alpha = text_field(h, "alpha");
        } else if (kind == "p21ii") {
            o.kind = ObstructionHint::Kind::P21ii;
            o.X = text_field(h, "X");
            o.Y = text_field(h, "Y");
        } else if (kind == "p22") {
            o.kind = ObstructionHint::Kind::P22;
            o.X = text_field(h, "X");
        } else {
            throw ParseError("unknown obstruction kind '" + kind + "'");
        }
        if (h.contains("when")) o.when = parse_constraint(text_field(h, "when"));
        o.correction = h.value("correction", false);
        e.obstruction.push_back(std::move(o));
    }
    if (j.contains("su2")) e.su2 = read_su2(j["su2"]);
    if (j.contains("su2_corrected")) e.su2_corrected = read_su2(j["su2_corrected"]);

    if (e.expected == Expected::Shf && !e.witness && !e.su2) throw ParseError("shf entry without a witness");
    if (e.expected == Expected::NoShf && e.obstruction.empty()) throw ParseError("no-shf entry without an obstruction hint");
    e.parameter_samples();
    return e;
}

}  // namespace

Catalog Catalog::parse(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& ex) {
        throw ParseError(origin + ": " + ex.what());
    }
    Catalog cat;
    if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array()) throw ParseError(origin + ": expected an object with an 'entries' array");
    if (j.value("schema", 0) != 1) throw ParseError(origin + ": unsupported schema");
    std::set<std::string> names;
    int row = 0;
    for (const auto& item : j["entries"]) {
        ++row;
        std::string label = origin + ": entry " + std::to_string(row);
        if (item.is_object() && item.contains("name") && item["name"].is_string()) label += " (" + item["name"].get<std::string>() + ")";
        try {
            CatalogEntry e = read_entry(item);
            if (!names.insert(e.name).second) throw ParseError("duplicate name");
            cat.entries_.push_back(std::move(e));
        } catch (const ParseError& ex) {
            throw ParseError(label + ": " + ex.what());
        } catch (const json::exception& ex) {
            throw ParseError(label + ": " + ex.what());
        }
    }
    for (const auto& a : j.value("annotations", json::array()))
        cat.annotations_.push_back({a.value("table", 0), a.value("entry", std::string()), a.value("text", std::string())});

    std::map<std::string, int> seen;
    for (const auto& e : cat.entries_) ++seen[e.source];
    for (const auto& [src, n] : catalog_counts())
        if (seen[src] != n)
            throw ParseError(origin + ": " + src + " has " + std::to_string(seen[src]) + " entries, expected " + std::to_string(n));
    return cat;
}

Catalog Catalog::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open catalog '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

std::string Catalog::default_path() {
    if (const char* p = std::getenv("STABLEFORMS_CATALOG"); p && *p) return p;
    return SHF_CATALOG_PATH;
}

const CatalogEntry& Catalog::find(const std::string& name) const {
    for (const auto& e : entries_)
        if (e.name == name) return e;
    throw UnknownEntry("unknown catalog entry '" + name + "'");
}

std::vector<const CatalogEntry*> Catalog::by_source(const std::string& source) const {
    std::vector<const CatalogEntry*> out;
    for (const auto& e : entries_)
        if (e.source == source) out.push_back(&e);
    return out;
}

SU2Structure to_su2(const SU2Text& t, int n, const Bindings& env) {
    auto f = [&](const std::string& s) { return evaluate_rational(parse_form(s), n, env); };
    return {ComplexForm(f(t.alpha_re), f(t.alpha_im)), f(t.omega), ComplexForm(f(t.Omega_re), f(t.Omega_im))};
}

void check_assignment(const CatalogEntry& e, const Bindings& env) {
    for (const auto& [k, v] : env) {
        bool known = false;
        for (const auto& p : e.params) known = known || p.name == k;
        if (!known) throw ConfigError(e.name + " has no parameter '" + k + "'");
    }
    for (const auto& p : e.params) {
        if (!env.count(p.name)) throw ConfigError(e.name + " needs a value for '" + p.name + "'");
        for (const auto& c : p.constraints)
            if (!c.holds(env)) throw ConfigError(e.name + ": " + p.name + " = " + to_string(env.at(p.name)) + " violates " + c.text);
    }
    for (const auto& c : e.param_constraints)
        if (!c.holds(env)) throw ConfigError(e.name + ": " + to_string(env) + " violates " + c.text);
}

Instance instantiate(const CatalogEntry& e, const Bindings& env) {
    check_assignment(e, env);
    std::string label = e.name;
    if (!env.empty()) label += " [" + to_string(env) + "]";
    Instance inst{LieFamily(e.equations).instantiate(env, label), env, std::nullopt, std::nullopt, std::nullopt, std::nullopt};
    int n = inst.algebra.dim();
    if (e.su2) inst.su2 = to_su2(*e.su2, n, env);
    if (e.su2_corrected) inst.su2_corrected = to_su2(*e.su2_corrected, n, env);
    auto read = [&](const WitnessText& t) {
        SU3Embedding w{evaluate_rational(parse_form(t.F), n, env), evaluate_rational(parse_form(t.rho), n, env), Form<Rational>(n)};
        try {
            w.rho_hat = imaginary_part(w.F, w.rho, default_volume(n));
        } catch (const DomainError&) {
            // left zero: the structure report says why
        }
        return w;
    };
    if (e.witness) inst.witness = read(*e.witness);
    else if (inst.su2) inst.witness = embed_su3(*inst.su2);
    if (e.witness_corrected) inst.witness_corrected = read(*e.witness_corrected);
    return inst;
}

Bindings parse_assignments(const std::vector<std::string>& items) {
    auto trim = [](std::string t) {
        auto b = t.find_first_not_of(" \t"), e = t.find_last_not_of(" \t");
        return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
    };
    Bindings env;
    for (const auto& it : items) {
        auto eq = it.find('=');
        std::string key = eq == std::string::npos ? std::string() : trim(it.substr(0, eq));
        bool ident = !key.empty() && std::isalpha(static_cast<unsigned char>(key[0])) &&
                     std::all_of(key.begin(), key.end(), [](unsigned char ch) { return std::isalnum(ch) || ch == '_'; });
        if (!ident) throw ConfigError("parameter assignment must look like name=value, got '" + it + "'");
        if (env.count(key)) throw ConfigError("parameter '" + key + "' assigned twice");
        Quadratic v;
        try {
            v = evaluate(*parse_scalar(it.substr(eq + 1)), {});
        } catch (const Error& ex) {
            throw ConfigError("bad value in '" + it + "': " + ex.what());
        }
        if (!v.is_rational()) throw ConfigError("parameter values must be rational: '" + it + "'");
        env[key] = v.to_rational();
    }
    return env;
}

std::string to_string(const Bindings& env) {
    std::string out;
    for (const auto& [k, v] : env) {
        if (!out.empty()) out += ", ";
        out += k + "=" + to_string(v);
    }
    return out;
}

namespace {

Certificate run_hint(const ObstructionHint& h, const LieAlgebra& g, const Bindings& env, const CertifyConfig& cfg) {
    int n = g.dim();
    switch (h.kind) {
        case ObstructionHint::Kind::P21i: return certify_p21i(g, parse_covector(h.alpha, n, env), cfg);
        case ObstructionHint::Kind::P21ii: return certify_p21ii(g, parse_vector(h.X, n, env), parse_vector(h.Y, n, env), cfg);
        case ObstructionHint::Kind::P22: return certify_p22(g, parse_vector(h.X, n, env));
    }
    throw ConfigError("unknown hint kind");
}

}  // namespace

ClassifyResult classify(const CatalogEntry& e, const Bindings& env, const ClassifyOptions& opt) {
    ClassifyResult r;
    r.name = e.name;
    r.env = env;
    r.expected = e.expected;
    r.unimodular_expected = e.unimodular;
    Instance inst = instantiate(e, env);
    const LieAlgebra& g = inst.algebra;
    r.jacobi = jacobi_check(g).ok;
    r.unimodular = is_unimodular(g);
    if (r.unimodular != e.unimodular) r.notes.push_back("computed unimodularity differs from the catalog flag");
    r.verdict = "undetermined";

    if (e.expected == Expected::Shf) {
        r.witness_source = e.witness ? "table" : "su2";
        r.witness = inst.witness;
        r.structure = shf_check(g, r.witness->F, r.witness->rho);
        r.g2_closed = g2_closure(g, r.witness->F, r.witness->rho).closed();
        if (!(r.structure->ok() && *r.g2_closed) && inst.witness_corrected) {
            r.notes.push_back("printed witness does not verify; using the corrected witness");
            r.printed_structure = r.structure;
            r.witness_source = "corrected";
            r.witness = inst.witness_corrected;
            r.structure = shf_check(g, r.witness->F, r.witness->rho);
            r.g2_closed = g2_closure(g, r.witness->F, r.witness->rho).closed();
        }
        if (r.structure->ok() && *r.g2_closed) r.verdict = "shf";
        else r.notes.push_back("stored witness does not verify");
    } else {
        if (opt.use_hints) {
            for (const auto& h : e.obstruction) {
                if (h.when && !h.when->holds(env)) continue;
                Certificate c = run_hint(h, g, env, opt.cfg);
                if (c.verdict == Verdict::Falsified) r.notes.push_back("hint " + h.describe() + " is not an obstruction: " + c.detail);
                else if (!c.valid()) r.notes.push_back("hint " + h.describe() + " " + to_string(c.verdict) + ": " + c.detail);
                r.attempts.push_back(c);
                if (c.valid()) {
                    r.certificate = std::move(c);
                    r.certificate_source = h.correction ? "corrected-hint" : "hint";
                    break;
                }
            }
        }
        if (!r.certificate) {
            SearchBudget b = opt.budget;
            b.sqrt3 = b.sqrt3 || opt.sqrt3;
            if (auto c = search_witness(g, b, opt.cfg)) {
                r.certificate = std::move(*c);
                r.certificate_source = "search";
            }
        }
        if (r.certificate) r.verdict = "no-shf";
    }
    r.match = r.jacobi && r.verdict == to_string(e.expected);
    return r;
}

namespace {

json structure_json(const StructureReport& s) {
    json j;
    j["dF"] = s.dF;
    j["drho"] = s.drho;
    j["F_stable"] = s.F_stable;
    j["c"] = to_string(s.c);
    j["lambda"] = to_string(s.lambda);
    j["lambda_negative"] = s.lambda_negative;
    j["compatible"] = s.compatible;
    if (s.ratio) j["normalization_ratio"] = to_string(*s.ratio);
    j["normalized"] = s.normalized;
    j["metric_symmetric"] = s.metric_symmetric;
    j["metric_positive"] = s.metric_positive;
    if (!s.note.empty()) j["note"] = s.note;
    j["ok"] = s.ok();
    return j;
}

}  // namespace

std::string to_json_text(const StructureReport& s) { return structure_json(s).dump(2); }

namespace {

json result_json(const ClassifyResult& r) {
    json j;
    j["name"] = r.name;
    json p = json::object();
    for (const auto& [k, v] : r.env) p[k] = to_string(v);
    j["parameters"] = p;
    j["expected"] = to_string(r.expected);
    j["verdict"] = r.verdict;
    j["match"] = r.match;
    j["jacobi"] = r.jacobi;
    j["unimodular"] = r.unimodular;
    j["unimodular_expected"] = r.unimodular_expected;
    if (r.structure) {
        json w;
        w["source"] = r.witness_source;
        w["F"] = to_string(r.witness->F);
        w["rho"] = to_string(r.witness->rho);
        w["report"] = structure_json(*r.structure);
        if (r.printed_structure) w["printed_report"] = structure_json(*r.printed_structure);
        w["g2_closed"] = r.g2_closed.value_or(false);
        j["witness"] = w;
    }
    if (r.certificate) {
        j["certificate_source"] = r.certificate_source;
        j["certificate"] = json::parse(to_json_text(*r.certificate));
    }
    if (!r.attempts.empty()) {
        json a = json::array();
        for (const auto& c : r.attempts) {
            json x;
            x["kind"] = c.kind;
            x["witness"] = c.witness;
            x["verdict"] = to_string(c.verdict);
            x["detail"] = c.detail;
            a.push_back(x);
        }
        j["hints"] = a;
    }
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

}  // namespace

std::string to_json_text(const ClassifyResult& r) {
    json j;
    j["schema"] = 1;
    j["result"] = result_json(r);
    return j.dump(2);
}

std::string to_json_text(const std::vector<ClassifyResult>& rs) {
    json j;
    j["schema"] = 1;
    int mismatches = 0;
    json arr = json::array();
    for (const auto& r : rs) {
        mismatches += r.match ? 0 : 1;
        arr.push_back(result_json(r));
    }
    j["results"] = arr;
    j["mismatches"] = mismatches;
    return j.dump(2);
}

}  // namespace shf
