#include "shf/stable.hpp"

namespace shf {

NormalizedJ normalized_j(const Form<Rational>& F, const Form<Rational>& rho, const Form<Rational>& nu) {
    Rational c = stability_coefficient(F, nu);
    if (is_zero(c)) throw DomainError("F is not stable (F^3 = 0)");
    int orient = sgn(c) > 0 ? 1 : -1;
    Form<Rational> nu2 = nu.scaled(orient);
    Matrix<Rational> K = k_endomorphism(rho, nu2);
    Rational lam = lambda_of(K);
    if (sgn(lam) >= 0) throw DomainError("lambda~ = " + to_string(lam) + " is not negative");
    Rational root;
    if (!rational_sqrt(Rational(-lam), root))
        throw DomainError("irrational normalization (|lambda~| = " + to_string(Rational(-lam)) + "); use unnormalized J~");
    return {K.scaled(Rational(1) / root), c * orient, lam, orient};
}

Normalization is_normalized(const Form<Rational>& F, const Form<Rational>& rho, const Form<Rational>& nu) {
    Rational c = stability_coefficient(F, nu);
    if (is_zero(c)) throw DomainError("F is not stable (F^3 = 0)");
    Rational lam = lambda_invariant(rho, nu);
    Normalization n;
    n.ratio = lam / (-4 * c * c);
    n.normalized = n.ratio == 1;
    return n;
}

Metric induced_metric(const Form<Rational>& F, const Form<Rational>& rho, const Form<Rational>& nu) {
    Rational c = stability_coefficient(F, nu);
    if (is_zero(c)) throw DomainError("F is not stable (F^3 = 0)");
    Metric m;
    try {
        m.gram = gram_of(F, normalized_j(F, rho, nu).J);
        m.normalized = true;
    } catch (const DomainError&) {
        Matrix<Rational> K = k_endomorphism(rho, nu.scaled(sgn(c) > 0 ? 1 : -1));
        m.gram = gram_of(F, K);
    }
    return m;
}

bool is_symmetric(const Matrix<Rational>& m) { return m == m.transpose(); }

bool positive_definite(const Matrix<Rational>& m) {
    if (!is_symmetric(m)) return false;
    for (int k = 1; k <= m.rows(); ++k) {
        Matrix<Rational> sub(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) sub(i, j) = m(i, j);
        if (sgn(determinant(sub)) <= 0) return false;
    }
    return true;
}

StructureReport shf_check(const LieAlgebra& g, const Form<Rational>& F, const Form<Rational>& rho,
                          const Form<Rational>& nu) {
    StructureReport r;
    if (!F.is_homogeneous(2) || !rho.is_homogeneous(3)) throw DomainError("shf_check needs a 2-form F and a 3-form rho");
    r.dF = g.d(F).is_zero();
    r.drho = g.d(rho).is_zero();
    r.c = stability_coefficient(F, nu);
    r.F_stable = !is_zero(r.c);
    r.lambda = lambda_invariant(rho, nu);
    r.lambda_negative = sgn(r.lambda) < 0;
    r.compatible = wedge(F, rho).is_zero();
    if (!r.F_stable) {
        r.note = "F^3 = 0";
        return r;
    }
    r.ratio = r.lambda / (-4 * r.c * r.c);
    r.normalized = *r.ratio == 1;
    if (!r.lambda_negative) {
        r.note = "rho is not of complex type";
        return r;
    }
    Metric m = induced_metric(F, rho, nu);
    r.metric_exact = m.normalized;
    r.metric_symmetric = is_symmetric(m.gram);
    r.metric_positive = positive_definite(m.gram);
    if (!m.normalized) r.note = "metric checked up to a positive factor (irrational normalization)";
    return r;
}

Form<Rational> imaginary_part(const Form<Rational>& F, const Form<Rational>& rho, const Form<Rational>& nu) {
    // J acts on covectors by alpha -> alpha o J^{-1} = -alpha o J
    return substitute_coframe(rho, normalized_j(F, rho, nu).J.scaled(Rational(-1)));
}

G2Result g2_form(const LieAlgebra& g, const Form<Rational>& F, const Form<Rational>& rho) {
    StructureReport r = shf_check(g, F, rho);
    if (!r.ok()) throw DomainError("g2_form needs a symplectic half-flat pair");
    return g2_closure(g, F, rho);
}

G2Result g2_closure(const LieAlgebra& g, const Form<Rational>& F, const Form<Rational>& rho) {
    int n = g.dim() + 1;
    LieAlgebra h = extend_by_line(g);
    Form<Rational> phi = wedge(raise_dimension(F, n), Form<Rational>::basis(n, {n})) + raise_dimension(rho, n);
    Form<Rational> dphi = h.d(phi);
    return {std::move(h), std::move(phi), std::move(dphi)};
}

}  // namespace shf
