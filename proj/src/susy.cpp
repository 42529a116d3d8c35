#include "shf/susy.hpp"

namespace shf {

ComplexForm::ComplexForm(Form<Rational> r, Form<Rational> i) : re(std::move(r)), im(std::move(i)) {
    re.same_dim(im);
    if (!re.is_zero() && !im.is_zero()) {
        int d = degree_of(re.terms().begin()->first);
        if (!re.is_homogeneous(d) || !im.is_homogeneous(d)) throw DomainError("real and imaginary parts have different degrees");
    }
}

ComplexForm wedge(const ComplexForm& a, const ComplexForm& b) {
    return {wedge(a.re, b.re) - wedge(a.im, b.im), wedge(a.re, b.im) + wedge(a.im, b.re)};
}

ComplexForm operator+(const ComplexForm& a, const ComplexForm& b) { return {a.re + b.re, a.im + b.im}; }

ComplexForm scaled(const ComplexForm& a, const Rational& r) { return {a.re.scaled(r), a.im.scaled(r)}; }

std::string to_string(const ComplexForm& a) { return "(" + to_string(a.re) + ") + i(" + to_string(a.im) + ")"; }

SU3Embedding embed_su3(const SU2Structure& s) {
    ComplexForm psi = wedge(s.alpha, s.Omega);
    return {s.omega + wedge(s.alpha.re, s.alpha.im), psi.re, psi.im};
}

std::vector<Rational> metric_dual(const Matrix<Rational>& gram, const Form<Rational>& beta) {
    int n = beta.dim();
    std::vector<Rational> b(n, Rational(0));
    for (const auto& [m, c] : beta.terms()) {
        if (degree_of(m) != 1) throw DomainError("metric_dual needs a 1-form");
        b[std::countr_zero(m)] = c;
    }
    return inverse(gram) * b;
}

namespace {

Rational dot(const std::vector<Rational>& x, const Form<Rational>& beta) {
    Rational acc(0);
    for (const auto& [m, c] : beta.terms()) acc += c * x[std::countr_zero(m)];
    return acc;
}

// contraction with the complex vector a + i b
ComplexForm contract_complex(const std::vector<Rational>& a, const std::vector<Rational>& b, const ComplexForm& X) {
    return {contract(a, X.re) - contract(b, X.im), contract(a, X.im) + contract(b, X.re)};
}

}  // namespace

SU2Report su2_axioms_check(const SU2Structure& s) {
    SU2Report r;
    Form<Rational> w2 = wedge(s.omega, s.omega);
    ComplexForm OO = wedge(s.Omega, s.Omega.conj());
    r.omega_squared = OO.im.is_zero() && w2 == OO.re.scaled(Rational(1, 2));
    r.nondegenerate = !w2.is_zero();
    ComplexForm wO = wedge(ComplexForm(s.omega, Form<Rational>(s.omega.dim())), s.Omega);
    r.omega_Omega = wO.re.is_zero() && wO.im.is_zero();
    ComplexForm OmOm = wedge(s.Omega, s.Omega);
    r.Omega_Omega = OmOm.re.is_zero() && OmOm.im.is_zero();

    SU3Embedding e = embed_su3(s);
    Form<Rational> nu = default_volume(s.omega.dim());
    try {
        Metric m = induced_metric(e.F, e.rho, nu);
        if (!positive_definite(m.gram)) {
            r.note = "induced metric is not positive definite";
            return r;
        }
        r.metric_available = true;
        auto a = metric_dual(m.gram, s.alpha.re), b = metric_dual(m.gram, s.alpha.im);
        ComplexForm iO = contract_complex(a, b, s.Omega);
        r.iota_Omega = iO.re.is_zero() && iO.im.is_zero();
        r.iota_omega = contract(a, s.omega).is_zero() && contract(b, s.omega).is_zero();
        if (m.normalized) {
            r.norm = dot(a, s.alpha.re) + dot(b, s.alpha.im);
            r.norm_two = *r.norm == 2;
        } else {
            r.note = "metric known only up to a positive factor; |alpha|^2 unavailable";
        }
    } catch (const DomainError& ex) {
        r.note = std::string("induced SU(3) structure is degenerate: ") + ex.what();
    }
    return r;
}

SU2Structure extract_su2(const SU3Embedding& su3, const ComplexForm& alpha) {
    Form<Rational> nu = default_volume(su3.F.dim());
    Metric m = induced_metric(su3.F, su3.rho, nu);
    if (!m.normalized) throw DomainError("extract_su2 needs a normalized SU(3) structure");
    auto a = metric_dual(m.gram, alpha.re), b = metric_dual(m.gram, alpha.im);
    Rational norm = dot(a, alpha.re) + dot(b, alpha.im);
    if (norm != 2) throw DomainError("|alpha|^2 = " + to_string(norm) + ", expected 2");
    std::vector<Rational> mb(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) mb[i] = -b[i];
    ComplexForm Omega = scaled(contract_complex(a, mb, ComplexForm(su3.rho, su3.rho_hat)), Rational(1, 2));
    return {alpha, su3.F - wedge(alpha.re, alpha.im), Omega};
}

RotationAngle::RotationAngle(Rational kpar, Rational kperp) : k_par(std::move(kpar)), k_perp(std::move(kperp)) {
    if (k_par * k_par + k_perp * k_perp != 1)
        throw ConfigError("k_par^2 + k_perp^2 = " + to_string(Rational(k_par * k_par + k_perp * k_perp)) + ", expected 1");
}

SU2Structure rotate(const SU2Structure& s, const Rational& c, const Rational& sn) {
    if (c * c + sn * sn != 1) throw ConfigError("rotation (cos 2phi, sin 2phi) is not on the unit circle");
    SU2Structure r = s;
    r.omega = s.omega.scaled(c) + s.Omega.re.scaled(sn);
    r.Omega = ComplexForm(s.omega.scaled(-sn) + s.Omega.re.scaled(c), s.Omega.im);
    return r;
}

OmegaSplit re_omega_split(const Form<Rational>& omega, const Form<Rational>& re_Omega, const Rational& c, const Rational& sn) {
    if (c * c + sn * sn != 1) throw ConfigError("rotation (cos 2phi, sin 2phi) is not on the unit circle");
    Rational half(1, 2);
    return {(re_Omega.scaled(Rational(1 - c)) + omega.scaled(sn)).scaled(half), (re_Omega.scaled(Rational(1 + c)) - omega.scaled(sn)).scaled(half)};
}

SusyReport susy_check(const SusyData& data, const LieAlgebra& g) {
    if (!data.angle.intermediate()) throw DomainError("SU(2) structure is not intermediate: k_par * k_perp = 0");
    const auto& a = data.alpha;
    SusyReport r;
    r.residual1 = g.d(a.re);
    r.residual2 = g.d(data.re_Omega_perp) - wedge(a.re, g.d(a.im)).scaled(data.angle.k_par * data.angle.k_perp);
    r.residual3 = wedge(g.d(data.im_Omega), a.re) + g.d(wedge(a.im, data.re_Omega_par));
    return r;
}

SusyData from_shf(const SU2Structure& hat, const RotationAngle& angle, const LieAlgebra& g) {
    if (!angle.intermediate()) throw DomainError("SU(2) structure is not intermediate: k_par * k_perp = 0");
    SU3Embedding e = embed_su3(hat);
    if (!shf_check(g, e.F, e.rho).ok()) throw DomainError("from_shf needs a symplectic half-flat SU(2) structure");
    if (!g.d(hat.alpha.re).is_zero()) throw DomainError("from_shf needs d Re(alpha) = 0");
    return {ComplexForm(hat.alpha.re, hat.alpha.im.scaled(Rational(1) / angle.k_par)), hat.Omega.im.scaled(-angle.k_par),
            hat.omega.scaled(angle.k_perp), hat.Omega.re, angle};
}

SusyPipeline run_susy(const SU2Structure& s, const LieAlgebra& g, const RotationAngle& angle) {
    SusyPipeline p;
    p.axioms = su2_axioms_check(s);
    p.embedding = embed_su3(s);
    p.structure = shf_check(g, p.embedding.F, p.embedding.rho);
    p.re_alpha_closed = g.d(s.alpha.re).is_zero();
    if (!angle.intermediate()) {
        p.failure = "SU(2) structure is not intermediate: k_par * k_perp = 0";
        return p;
    }
    if (!p.structure.ok()) {
        p.failure = "embedded SU(3) structure is not symplectic half-flat";
        return p;
    }
    if (!p.re_alpha_closed) {
        p.failure = "Re(alpha) is not closed";
        return p;
    }
    p.equations = susy_check(from_shf(s, angle, g), g);
    return p;
}

}  // namespace shf
