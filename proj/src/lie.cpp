#include "shf/lie.hpp"

#include "shf/linalg.hpp"

namespace shf {

LieAlgebra::LieAlgebra(std::vector<Form<Rational>> de, std::string name, Bindings params)
    : de_(std::move(de)), name_(std::move(name)), params_(std::move(params)) {
    int n = dim();
    if (n < 1 || n > 9) throw DomainError("Lie algebra dimension must be in 1..9");
    for (int i = 0; i < n; ++i) {
        if (de_[i].dim() != n) throw DomainError("de" + std::to_string(i + 1) + " lives on the wrong space");
        if (!de_[i].is_homogeneous(2)) throw DomainError("de" + std::to_string(i + 1) + " is not a 2-form");
    }
    // d(e^i ^ rest) = de^i ^ rest - e^i ^ d(rest), i the lowest index
    std::vector<Form<Rational>> dm(std::size_t{1} << n, Form<Rational>(n));
    for (Mask m = 1; m < (Mask{1} << n); ++m) {
        Mask low = m & (~m + 1);
        Mask rest = m ^ low;
        int i = std::countr_zero(low);
        Form<Rational> er(n), ei(n);
        er.add(rest, 1);
        ei.add(low, 1);
        dm[m] = wedge(de_[i], er) - wedge(ei, dm[rest]);
    }
    table_.resize(dm.size());
    for (std::size_t m = 0; m < dm.size(); ++m) table_[m].assign(dm[m].terms().begin(), dm[m].terms().end());
}

LieAlgebra LieAlgebra::abelian(int n) {
    return LieAlgebra(std::vector<Form<Rational>>(n, Form<Rational>(n)), "abelian(" + std::to_string(n) + ")");
}

std::string LieAlgebra::equations() const {
    std::string out = "(";
    for (int i = 0; i < dim(); ++i) out += (i ? ", " : "") + to_string(de_[i]);
    return out + ")";
}

Rational LieAlgebra::structure_constant(int i, int j, int k) const {
    if (i == j) return 0;
    int sign = -1;
    if (i > j) {
        std::swap(i, j);
        sign = 1;
    }
    Rational c = de(k).coefficient(index_mask(i) | index_mask(j));
    return sign < 0 ? Rational(-c) : c;
}

LieFamily::LieFamily(std::string_view text) : text_(text), entries_(parse_tuple(text)) {
    int n = dim();
    if (n < 1 || n > 9) throw ParseError("structure equations need between 1 and 9 entries");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].max_index() > n)
            throw ParseError("entry " + std::to_string(i + 1) + " uses an index beyond " + std::to_string(n));
        for (const auto& p : entries_[i].parameters()) params_.insert(p);
    }
}

LieAlgebra LieFamily::instantiate(const Bindings& env, std::string name) const {
    for (const auto& p : params_)
        if (!env.count(p)) throw DomainError("unbound parameter '" + p + "'");
    std::vector<Form<Rational>> de;
    for (const auto& e : entries_) de.push_back(evaluate_rational(e, dim(), env));
    Bindings used;
    for (const auto& p : params_) used[p] = env.at(p);
    return LieAlgebra(std::move(de), std::move(name), std::move(used));
}

LieAlgebra parse_structure_equations(std::string_view text, const Bindings& env) {
    return LieFamily(text).instantiate(env);
}

JacobiReport jacobi_check(const LieAlgebra& g) {
    JacobiReport r;
    for (int i = 1; i <= g.dim(); ++i) {
        Form<Rational> dd = g.d(g.de(i));
        if (!dd.is_zero()) {
            r.ok = false;
            r.failures.emplace_back(i, std::move(dd));
        }
    }
    return r;
}

Rational ad_trace(const LieAlgebra& g, int i) {
    Rational t = 0;
    for (int k = 1; k <= g.dim(); ++k) t += g.structure_constant(i, k, k);
    return t;
}

bool is_unimodular(const LieAlgebra& g) {
    for (int i = 1; i <= g.dim(); ++i)
        if (!is_zero(ad_trace(g, i))) return false;
    return true;
}

Form<Poly> ClosedFormBasis::generic(const std::string& prefix) const {
    if (basis.empty()) return Form<Poly>();
    Form<Poly> out(basis.front().dim());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        Poly x = Poly::var(prefix + std::to_string(i + 1));
        for (const auto& [m, c] : basis[i].terms()) out.add(m, x.scaled(c));
    }
    return out;
}

Matrix<Rational> differential_matrix(const LieAlgebra& g, int k) {
    int n = g.dim();
    auto cols = basis_masks(n, k), rows = basis_masks(n, k + 1);
    std::map<Mask, int> row_of;
    for (std::size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = static_cast<int>(i);
    Matrix<Rational> m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
        Form<Rational> e(n);
        e.add(cols[j], 1);
        Form<Rational> de = g.d(e);
        for (const auto& [mm, c] : de.terms()) m(row_of.at(mm), static_cast<int>(j)) = c;
    }
    return m;
}

ClosedFormBasis closed_forms(const LieAlgebra& g, int k) {
    int n = g.dim();
    if (k < 0 || k > n) throw DomainError("form degree out of range");
    ClosedFormBasis z;
    z.degree = k;
    auto cols = basis_masks(n, k);
    if (k == n) {
        z.basis.push_back(Form<Rational>::basis(n, mask_indices(cols[0])));
        return z;
    }
    for (const auto& v : nullspace_fraction_free(differential_matrix(g, k))) {
        Form<Rational> f(n);
        for (std::size_t j = 0; j < cols.size(); ++j) f.add(cols[j], v[j]);
        z.basis.push_back(std::move(f));
    }
    return z;
}

namespace {

Form<Rational> shifted(const Form<Rational>& a, int n, int shift) {
    Form<Rational> out(n);
    for (const auto& [m, c] : a.terms()) out.add(m << shift, c);
    return out;
}

}  // namespace

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
    int n = a.dim() + b.dim();
    std::vector<Form<Rational>> de;
    for (const auto& f : a.differentials()) de.push_back(shifted(f, n, 0));
    for (const auto& f : b.differentials()) de.push_back(shifted(f, n, a.dim()));
    std::string name = a.name().empty() || b.name().empty() ? std::string() : a.name() + "+" + b.name();
    return LieAlgebra(std::move(de), std::move(name));
}

LieAlgebra extend_by_line(const LieAlgebra& g) {
    int n = g.dim() + 1;
    std::vector<Form<Rational>> de;
    for (const auto& f : g.differentials()) de.push_back(shifted(f, n, 0));
    de.emplace_back(n);
    return LieAlgebra(std::move(de), g.name().empty() ? std::string() : g.name() + "+R", g.parameters());
}

LieAlgebra change_basis(const LieAlgebra& g, const Matrix<Rational>& M) {
    int n = g.dim();
    if (M.rows() != n || M.cols() != n) throw DomainError("basis change matrix has the wrong shape");
    Matrix<Rational> Minv = inverse(M);
    std::vector<Form<Rational>> de;
    for (int i = 0; i < n; ++i) {
        Form<Rational> f(n);
        for (int j = 0; j < n; ++j)
            if (!is_zero(M(i, j))) f += g.de(j + 1).scaled(M(i, j));
        de.push_back(substitute_coframe(f, Minv));
    }
    return LieAlgebra(std::move(de), g.name(), g.parameters());
}

}  // namespace shf
