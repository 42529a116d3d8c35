#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shf/lie.hpp"
#include "shf/obstruction.hpp"
#include "shf/stable.hpp"
#include "shf/susy.hpp"

namespace shf {

enum class Expected { Shf, NoShf };
std::string to_string(Expected e);

struct ParamDecl {
    std::string name;
    std::vector<Constraint> constraints;
    std::vector<std::string> samples;
};

struct ObstructionHint {
    enum class Kind { P21i, P21ii, P22 };
    Kind kind = Kind::P21i;
    std::string alpha;  // P21-i covector
    std::string X, Y;   // P21-ii / P22 vectors
    std::optional<Constraint> when;
    bool correction = false;  // not the printed witness

    std::string describe() const;
};

struct WitnessText {
    std::string F;
    std::string rho;
};

struct SU2Text {
    std::string alpha_re, alpha_im, omega, Omega_re, Omega_im;
};

struct CatalogEntry {
    std::string name;
    std::string source;         // table1 .. table6, theorem1.1
    std::string decomposition;  // indecomposable, 3+3, 4+2, 5+1
    bool unimodular = false;
    Expected expected = Expected::NoShf;
    std::string equations;
    std::vector<ParamDecl> params;
    std::vector<Constraint> param_constraints;
    std::vector<Bindings> samples;  // explicit joint samples, if any
    std::optional<WitnessText> witness;
    std::optional<WitnessText> witness_corrected;
    std::vector<ObstructionHint> obstruction;
    std::optional<SU2Text> su2;
    std::optional<SU2Text> su2_corrected;

    bool parametrized() const { return !params.empty(); }
    // assignments to classify at by default (one empty binding for rigid entries)
    std::vector<Bindings> parameter_samples() const;
};

struct Annotation {
    int table = 0;
    std::string entry;
    std::string text;
};

class Catalog {
public:
    static Catalog load(const std::string& path);
    static Catalog parse(const std::string& text, const std::string& origin = "catalog");
    // STABLEFORMS_CATALOG, else the file shipped with the sources
    static std::string default_path();

    const std::vector<CatalogEntry>& entries() const { return entries_; }
    const std::vector<Annotation>& annotations() const { return annotations_; }
    const CatalogEntry& find(const std::string& name) const;
    std::vector<const CatalogEntry*> by_source(const std::string& source) const;

private:
    std::vector<CatalogEntry> entries_;
    std::vector<Annotation> annotations_;
};

// expected row counts per source
const std::map<std::string, int>& catalog_counts();

struct Instance {
    LieAlgebra algebra;
    Bindings env;
    std::optional<SU3Embedding> witness;  // rho_hat filled in when available
    std::optional<SU3Embedding> witness_corrected;
    std::optional<SU2Structure> su2;
    std::optional<SU2Structure> su2_corrected;
};

SU2Structure to_su2(const SU2Text& t, int n, const Bindings& env = {});
// checks declared ranges; throws ConfigError on a missing, unknown or out-of-range parameter
void check_assignment(const CatalogEntry& e, const Bindings& env);
Instance instantiate(const CatalogEntry& e, const Bindings& env = {});
Bindings parse_assignments(const std::vector<std::string>& items);  // "a=1/2"
std::string to_string(const Bindings& env);

struct ClassifyOptions {
    CertifyConfig cfg;
    bool sqrt3 = false;  // widen the witness search grid over Q(sqrt 3)
    bool use_hints = true;
    SearchBudget budget;
};

struct ClassifyResult {
    std::string name;
    Bindings env;
    Expected expected = Expected::NoShf;
    std::string verdict;  // shf, no-shf, undetermined
    bool match = false;
    bool jacobi = false;
    bool unimodular = false;  // computed
    bool unimodular_expected = false;

    std::optional<StructureReport> structure;
    std::optional<bool> g2_closed;
    std::string witness_source;  // table, su2, corrected
    std::optional<SU3Embedding> witness;
    std::optional<StructureReport> printed_structure;  // when the printed witness failed

    std::vector<Certificate> attempts;  // hints tried, in order
    std::optional<Certificate> certificate;
    std::string certificate_source;  // hint, corrected-hint, search
    std::vector<std::string> notes;
};

ClassifyResult classify(const CatalogEntry& e, const Bindings& env, const ClassifyOptions& opt = {});

std::string to_json_text(const StructureReport& s);
std::string to_json_text(const ClassifyResult& r);
std::string to_json_text(const std::vector<ClassifyResult>& rs);

}  // namespace shf
