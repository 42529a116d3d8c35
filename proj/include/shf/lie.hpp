#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "shf/expr.hpp"
#include "shf/form.hpp"
#include "shf/linalg.hpp"

namespace shf {

// multiply a scalar of any supported kind by a rational
inline Rational scale(const Rational& x, const Rational& r) { return x * r; }
inline Quadratic scale(const Quadratic& x, const Rational& r) { return x * Quadratic(r); }
template <class C>
Polynomial<C> scale(const Polynomial<C>& x, const Rational& r) {
    return x.scaled(C(r));
}

class LieAlgebra {
public:
    // de[i] is d e^{i+1}; all must be 2-forms on the same space
    explicit LieAlgebra(std::vector<Form<Rational>> de, std::string name = {}, Bindings params = {});

    static LieAlgebra abelian(int n);

    int dim() const { return static_cast<int>(de_.size()); }
    const Form<Rational>& de(int i) const { return de_.at(i - 1); }
    const std::vector<Form<Rational>>& differentials() const { return de_; }
    const std::string& name() const { return name_; }
    const Bindings& parameters() const { return params_; }
    std::string equations() const;

    // Chevalley-Eilenberg differential, extended as an antiderivation
    template <class S>
    Form<S> d(const Form<S>& a) const {
        if (a.dim() != dim()) throw DomainError("form and algebra have different dimension");
        Form<S> out(dim());
        for (const auto& [m, c] : a.terms())
            for (const auto& [mm, r] : table_[m]) out.add(mm, scale(c, r));
        return out;
    }

    // c^k_{ij} with [e_i, e_j] = sum_k c^k_{ij} e_k
    Rational structure_constant(int i, int j, int k) const;

    friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) { return a.de_ == b.de_; }

private:
    std::vector<Form<Rational>> de_;
    std::string name_;
    Bindings params_;
    std::vector<std::vector<std::pair<Mask, Rational>>> table_;  // d of each basis monomial
};

// Structure equations with unevaluated parameter expressions.
class LieFamily {
public:
    explicit LieFamily(std::string_view text);

    int dim() const { return static_cast<int>(entries_.size()); }
    const std::string& text() const { return text_; }
    const std::set<std::string>& parameters() const { return params_; }
    LieAlgebra instantiate(const Bindings& env, std::string name = {}) const;

private:
    std::string text_;
    std::vector<FormExpr> entries_;
    std::set<std::string> params_;
};

LieAlgebra parse_structure_equations(std::string_view text, const Bindings& env = {});

struct JacobiReport {
    bool ok = true;
    std::vector<std::pair<int, Form<Rational>>> failures;  // generator index, d(de^i)
};

JacobiReport jacobi_check(const LieAlgebra& g);
bool is_unimodular(const LieAlgebra& g);
// trace of ad_{e_i}
Rational ad_trace(const LieAlgebra& g, int i);

struct ClosedFormBasis {
    int degree = 0;
    std::vector<Form<Rational>> basis;

    int dim() const { return static_cast<int>(basis.size()); }
    // sum_i x_i basis_i with variables named prefix1, prefix2, ...
    Form<Poly> generic(const std::string& prefix) const;
};

// matrix of d : Lambda^k -> Lambda^{k+1} in canonical monomial bases
Matrix<Rational> differential_matrix(const LieAlgebra& g, int k);
ClosedFormBasis closed_forms(const LieAlgebra& g, int k);

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b);
LieAlgebra extend_by_line(const LieAlgebra& g);

// Pull a form back along the coframe substitution e^j -> sum_k A(j,k) f^k.
template <class S>
Form<S> substitute_coframe(const Form<S>& a, const Matrix<Rational>& A) {
    int n = a.dim();
    std::vector<Form<S>> img;
    for (int j = 0; j < n; ++j) {
        Form<S> f(n);
        for (int k = 0; k < n; ++k)
            if (!is_zero(A(j, k))) f.add(index_mask(k + 1), S(A(j, k)));
        img.push_back(std::move(f));
    }
    Form<S> out(n);
    for (const auto& [m, c] : a.terms()) {
        Form<S> t = Form<S>::constant(n, c);
        for (int i : mask_indices(m)) t = wedge(t, img[i - 1]);
        out += t;
    }
    return out;
}

// New coframe f = M e (f^i = sum_j M(i,j) e^j); returns the structure
// equations in terms of f. Forms transport with transport_form.
LieAlgebra change_basis(const LieAlgebra& g, const Matrix<Rational>& M);

template <class S>
Form<S> transport_form(const Form<S>& a, const Matrix<Rational>& M) {
    return substitute_coframe(a, inverse(M));
}

}  // namespace shf
