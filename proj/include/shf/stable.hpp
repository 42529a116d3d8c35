#pragma once

#include <optional>
#include <string>

#include "shf/lie.hpp"
#include "shf/linalg.hpp"

namespace shf {

inline Form<Rational> default_volume(int n = 6) { return volume_form<Rational>(n); }

// nonzero coefficient of the reference volume
inline Rational volume_coefficient(const Form<Rational>& nu) {
    Mask top = (Mask{1} << nu.dim()) - 1;
    if (nu.size() != 1 || nu.terms().begin()->first != top) throw DomainError("reference volume must be a nonzero top form");
    return nu.terms().begin()->second;
}

namespace detail {

// Y with iota_Y nu = omega for a 5-form omega (on a 6-dim space)
template <class S>
std::vector<S> vector_of_five_form(const Form<S>& omega, const Rational& nu_inv, int n) {
    Mask top = (Mask{1} << n) - 1;
    std::vector<S> y(n, S(0));
    for (const auto& [m, c] : omega.terms()) {
        if (degree_of(m) != n - 1) continue;
        int k = std::countr_zero(top ^ m);  // missing index k+1
        S v = scale(c, nu_inv);
        y[k] = (k % 2 == 0) ? v : S(-v);
    }
    return y;
}

}  // namespace detail

// Polarization of K: columns (iota_j rho ^ sigma + iota_j sigma ^ rho) / 2 read through nu.
template <class S>
Matrix<S> k_bilinear(const Form<S>& rho, const Form<S>& sigma, const Form<Rational>& nu) {
    int n = rho.dim();
    if (n != 6) throw DomainError("stable 3-forms are only handled in dimension 6");
    rho.same_dim(sigma);
    if (!rho.is_homogeneous(3) || !sigma.is_homogeneous(3)) throw DomainError("k_bilinear needs 3-forms");
    Rational inv = Rational(1) / volume_coefficient(nu);
    Matrix<S> K(n, n);
    for (int j = 1; j <= n; ++j) {
        auto e = basis_vector<S>(n, j);
        Form<S> w = wedge(contract(e, rho), sigma) + wedge(contract(e, sigma), rho);
        auto y = detail::vector_of_five_form(w, inv / 2, n);
        for (int k = 0; k < n; ++k) K(k, j - 1) = y[k];
    }
    return K;
}

// K~ with iota_{K~ X} nu = iota_X rho ^ rho
template <class S>
Matrix<S> k_endomorphism(const Form<S>& rho, const Form<Rational>& nu) {
    int n = rho.dim();
    if (n != 6) throw DomainError("stable 3-forms are only handled in dimension 6");
    if (!rho.is_homogeneous(3)) throw DomainError("k_endomorphism needs a 3-form");
    Rational inv = Rational(1) / volume_coefficient(nu);
    Matrix<S> K(n, n);
    for (int j = 1; j <= n; ++j) {
        auto e = basis_vector<S>(n, j);
        auto y = detail::vector_of_five_form(wedge(contract(e, rho), rho), inv, n);
        for (int k = 0; k < n; ++k) K(k, j - 1) = y[k];
    }
    return K;
}

template <class S>
S lambda_of(const Matrix<S>& K) {
    return scale((K * K).trace(), Rational(1, 6));
}

template <class S>
S lambda_invariant(const Form<S>& rho, const Form<Rational>& nu) {
    return lambda_of(k_endomorphism(rho, nu));
}

// J~ on vectors and J~* on covector coefficient vectors; J~* alpha = alpha o K~ and J~ = -K~.
template <class S>
struct DualMap {
    Matrix<S> on_vectors;
    Matrix<S> on_covectors;  // acts on the column of coefficients of alpha

    std::vector<S> apply(const std::vector<S>& X) const { return on_vectors * X; }
    Form<S> apply(const Form<S>& alpha) const {
        int n = alpha.dim();
        std::vector<S> a(n, S(0));
        for (const auto& [m, c] : alpha.terms()) {
            if (degree_of(m) != 1) throw DomainError("dual map acts on 1-forms");
            a[std::countr_zero(m)] = c;
        }
        auto b = on_covectors * a;
        Form<S> out(n);
        for (int i = 0; i < n; ++i) out.add(index_mask(i + 1), b[i]);
        return out;
    }
};

template <class S>
DualMap<S> dual_map_of(const Matrix<S>& K) {
    return {K.scaled(S(-1)), K.transpose()};
}

template <class S>
DualMap<S> dual_map(const Form<S>& rho, const Form<Rational>& nu) {
    return dual_map_of(k_endomorphism(rho, nu));
}

// F(X, Y) for a 2-form F
template <class S>
S evaluate_two_form(const Form<S>& F, const std::vector<S>& X, const std::vector<S>& Y) {
    S acc(0);
    for (const auto& [m, c] : F.terms()) {
        if (degree_of(m) != 2) throw DomainError("evaluate_two_form needs a 2-form");
        int p = std::countr_zero(m), q = 31 - std::countl_zero(m);
        S v = X[p] * Y[q] - X[q] * Y[p];
        if (!is_zero(v)) acc += c * v;
    }
    return acc;
}

// Gram matrix G(i,j) = F(A e_i, e_j)
template <class S>
Matrix<S> gram_of(const Form<S>& F, const Matrix<S>& A) {
    int n = F.dim();
    Matrix<S> G(n, n);
    for (int i = 0; i < n; ++i) {
        auto Ae = A.column(i);
        for (int j = 0; j < n; ++j) G(i, j) = evaluate_two_form(F, Ae, basis_vector<S>(n, j + 1));
    }
    return G;
}

// c with F^3 = 6 c nu
template <class S>
S stability_coefficient(const Form<S>& F, const Form<Rational>& nu) {
    Form<S> f3 = wedge(F, wedge(F, F));
    Mask top = (Mask{1} << F.dim()) - 1;
    return scale(f3.coefficient(top), Rational(1) / (6 * volume_coefficient(nu)));
}

struct NormalizedJ {
    Matrix<Rational> J;
    Rational c;       // F^3 = 6 c nu' with the orientation nu' giving c > 0
    Rational lambda;  // lambda~ relative to nu'
    int orientation;  // nu' = orientation * nu
};

// J = K~(nu')/sqrt|lambda~|; throws when lambda~ >= 0 or |lambda~| is not a rational square
NormalizedJ normalized_j(const Form<Rational>& F, const Form<Rational>& rho, const Form<Rational>& nu);

struct Normalization {
    bool normalized = false;
    Rational ratio;  // lambda~ / (-4 c^2)
};

Normalization is_normalized(const Form<Rational>& F, const Form<Rational>& rho, const Form<Rational>& nu);

struct Metric {
    Matrix<Rational> gram;
    bool normalized = false;  // false: positive multiple F(K~(nu') e_i, e_j) of g
};

Metric induced_metric(const Form<Rational>& F, const Form<Rational>& rho, const Form<Rational>& nu);

bool is_symmetric(const Matrix<Rational>& m);
// Sylvester: all leading principal minors positive
bool positive_definite(const Matrix<Rational>& m);

struct StructureReport {
    bool dF = false;
    bool drho = false;
    bool F_stable = false;
    Rational c;  // F^3 = 6 c nu
    Rational lambda;
    bool lambda_negative = false;
    bool compatible = false;
    std::optional<Rational> ratio;
    bool normalized = false;
    bool metric_symmetric = false;
    bool metric_positive = false;
    bool metric_exact = false;  // normalized J was available
    std::string note;

    bool ok() const { return dF && drho && F_stable && lambda_negative && compatible && metric_positive; }
};

StructureReport shf_check(const LieAlgebra& g, const Form<Rational>& F, const Form<Rational>& rho,
                          const Form<Rational>& nu);
inline StructureReport shf_check(const LieAlgebra& g, const Form<Rational>& F, const Form<Rational>& rho) {
    return shf_check(g, F, rho, default_volume(g.dim()));
}

// rho^ = J rho with J acting on each covector factor, so that Psi = rho + i rho^
Form<Rational> imaginary_part(const Form<Rational>& F, const Form<Rational>& rho, const Form<Rational>& nu);

template <class S>
Form<S> raise_dimension(const Form<S>& a, int n) {
    if (n < a.dim()) throw DomainError("cannot lower the dimension of a form");
    Form<S> out(n);
    for (const auto& [m, c] : a.terms()) out.add(m, c);
    return out;
}

struct G2Result {
    LieAlgebra algebra;
    Form<Rational> phi;
    Form<Rational> dphi;
    bool closed() const { return dphi.is_zero(); }
};

// phi = F ^ e^7 + rho on g + R
G2Result g2_form(const LieAlgebra& g, const Form<Rational>& F, const Form<Rational>& rho);
// same construction without the structure precondition
G2Result g2_closure(const LieAlgebra& g, const Form<Rational>& F, const Form<Rational>& rho);

}  // namespace shf
