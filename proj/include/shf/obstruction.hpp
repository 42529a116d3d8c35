#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shf/lie.hpp"
#include "shf/stable.hpp"

namespace shf {

struct CertifyConfig {
    std::uint64_t seed = 0xC0FFEE;
    int trials = 8;
    std::uint64_t sample_size = 1000000;  // S: b-samples are uniform over S consecutive integers
    bool exact = false;                   // full symbolic expansion per stratum
    std::size_t term_limit = 200000;      // exact mode gives up above this many terms
    int max_resamples = 64;
};

// Generic closed pair F(b) = sum b_j F_j, rho(a) = sum a_i rho_i.
struct GenericPair {
    ClosedFormBasis z2;
    ClosedFormBasis z3;
    std::vector<VarId> b;
    std::vector<VarId> a;
    Form<Poly> F;
    Form<Poly> rho;

    Form<Rational> F_at(const std::vector<Rational>& bval) const;
    // column i: coordinates of F(b) ^ rho_i in the canonical 5-form basis
    Matrix<Rational> compatibility_matrix(const std::vector<Rational>& bval) const;
};

GenericPair generic_pair(const LieAlgebra& g);
// same, over prescribed spanning families (e.g. the ones printed in a proof)
GenericPair generic_pair(ClosedFormBasis z2, ClosedFormBasis z3, const std::string& bprefix = "b",
                         const std::string& aprefix = "a");

// {a : F(b) ^ rho(a) = 0} at a rational b: leading a's solved for the rest
struct Compatibility {
    std::vector<Rational> b;
    std::vector<int> eliminated;  // 0-based indices into pair.a
    std::vector<int> free;
    std::map<VarId, Poly> substitution;  // eliminated a_p -> linear form in the free a's
    Form<Poly> rho;                      // rho(a) after substitution
    int dimension() const { return static_cast<int>(free.size()); }
};

Compatibility solve_compatibility(const GenericPair& pair, const std::vector<Rational>& bval);

enum class Verdict { Certified, Falsified, Inconclusive, Rejected };
std::string to_string(Verdict v);

struct StratumRecord {
    std::string subspace;  // linear conditions on b cutting the stratum out of Z^2
    int dimension = 0;
    int rank = 0;          // generic rank of the compatibility system on the stratum
    int kernel = 0;        // generic dimension of the compatible closed 3-forms
    std::string stability; // F^3/6 restricted to the stratum, must not vanish
    bool skipped = false;  // F^3 vanishes identically there
    int degree = 0;        // Schwartz-Zippel degree in the stratum coordinates
    int accepted = 0;
    int rejected = 0;      // samples with F^3 = 0 or a rank drop
    Rational bound;        // failure probability contributed by this stratum
    std::string residual;  // nonlinear rank-drop components, if any
};

struct NonemptySample {
    Form<Rational> F;
    Form<Rational> rho;
};

struct Certificate {
    std::string kind;  // P21-i, P21-ii-zero, P21-ii-antisym, P22
    std::string algebra;
    std::vector<std::string> witness;                 // alpha, or X (and Y)
    std::vector<std::vector<std::string>> coefficients;  // one list per witness
    std::string field = "Q";
    std::string mode;  // exact | randomized
    int trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t sample_size = 0;
    int degree_bound = 0;
    Rational failure_bound;
    std::optional<NonemptySample> nonempty;
    std::vector<StratumRecord> strata;
    Verdict verdict = Verdict::Inconclusive;
    std::string detail;
    std::string degenerate_form;  // P22: iota_X phi for generic phi

    bool valid() const { return verdict == Verdict::Certified; }
};

std::string to_json_text(const Certificate& c);

// Parse "e1 + 2e3" as a vector (degree-1 terms read as components).
std::vector<Rational> parse_vector(const std::string& text, int n, const Bindings& env = {});
Form<Quadratic> parse_covector(const std::string& text, int n, const Bindings& env = {});

Certificate certify_p21i(const LieAlgebra& g, const Form<Quadratic>& alpha, const CertifyConfig& cfg = {});
Certificate certify_p21ii(const LieAlgebra& g, const std::vector<Rational>& X, const std::vector<Rational>& Y,
                          const CertifyConfig& cfg = {});
Certificate certify_p22(const LieAlgebra& g, const std::vector<Rational>& X);

struct SearchBudget {
    int candidates = 400;
    bool sqrt3 = false;
    int screen_trials = 1;
};

std::optional<Certificate> search_witness(const LieAlgebra& g, const SearchBudget& budget = {},
                                          const CertifyConfig& cfg = {});

// a ^ b / e^{1..n} for forms of complementary degree
template <class S>
S top_pair(const Form<S>& a, const Form<S>& b) {
    Mask top = (Mask{1} << a.dim()) - 1;
    S acc(0);
    for (const auto& [m, c] : a.terms()) {
        auto it = b.terms().find(top ^ m);
        if (it == b.terms().end()) continue;
        if (wedge_sign(m, top ^ m) < 0) acc -= c * it->second;
        else acc += c * it->second;
    }
    return acc;
}

// Z with alpha ^ J~*alpha ^ F^2 = (alpha ^ iota_Z rho ^ rho) (up to the volume factor)
template <class S>
std::vector<S> p21i_vector(const Form<S>& alpha, const Form<S>& F) {
    int n = F.dim();
    Form<S> F2 = wedge(F, F);
    std::vector<S> Z(n, S(0));
    for (int j = 1; j <= n; ++j) Z[j - 1] = top_pair(wedge(alpha, Form<S>::basis(n, {j})), F2);
    return Z;
}

// Gram matrices of the quadratic targets on a family of 3-forms (upper triangle filled)
template <class S>
std::vector<std::vector<S>> p21i_matrix(const Form<S>& alpha, const Form<S>& F, const std::vector<Form<S>>& w) {
    auto Z = p21i_vector(alpha, F);
    std::vector<Form<S>> eta;
    for (const auto& x : w) eta.push_back(wedge(alpha, contract(Z, x)));
    std::size_t k = w.size();
    std::vector<std::vector<S>> E(k, std::vector<S>(k, S(0)));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j)
            E[i][j] = i == j ? top_pair(eta[i], w[i]) : scale(top_pair(eta[i], w[j]) + top_pair(eta[j], w[i]), Rational(1, 2));
    return E;
}

// q(X) = F(J~X, X) = (iota_X F)(K~X)
template <class S>
std::vector<std::vector<S>> p21ii_matrix(const Form<S>& F, const std::vector<S>& X, const std::vector<Form<S>>& w) {
    Form<S> gamma = contract(X, F);
    std::vector<Form<S>> xi;
    for (const auto& x : w) xi.push_back(wedge(gamma, contract(X, x)));
    std::size_t k = w.size();
    std::vector<std::vector<S>> Q(k, std::vector<S>(k, S(0)));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j)
            Q[i][j] = i == j ? top_pair(xi[i], w[i]) : scale(top_pair(xi[i], w[j]) + top_pair(xi[j], w[i]), Rational(1, 2));
    return Q;
}

template <class S>
S p21i_bilinear(const Form<S>& alpha, const Form<S>& F, const Form<S>& rho, const Form<S>& sigma) {
    return p21i_matrix(alpha, F, std::vector<Form<S>>{rho, sigma})[0][1];
}

template <class S>
S p21ii_bilinear(const Form<S>& F, const std::vector<S>& X, const Form<S>& rho, const Form<S>& sigma) {
    return p21ii_matrix(F, X, std::vector<Form<S>>{rho, sigma})[0][1];
}

}  // namespace shf
