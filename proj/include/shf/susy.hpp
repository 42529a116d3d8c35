#pragma once

#include <optional>
#include <string>

#include "shf/stable.hpp"

namespace shf {

struct ComplexForm {
    Form<Rational> re;
    Form<Rational> im;

    ComplexForm(Form<Rational> r, Form<Rational> i);
    explicit ComplexForm(int n = 6) : re(n), im(n) {}

    int dim() const { return re.dim(); }
    ComplexForm conj() const { return {re, -im}; }
    friend bool operator==(const ComplexForm& a, const ComplexForm& b) { return a.re == b.re && a.im == b.im; }
};

ComplexForm wedge(const ComplexForm& a, const ComplexForm& b);
ComplexForm operator+(const ComplexForm& a, const ComplexForm& b);
ComplexForm scaled(const ComplexForm& a, const Rational& r);
std::string to_string(const ComplexForm& a);

struct SU2Structure {
    ComplexForm alpha;
    Form<Rational> omega;
    ComplexForm Omega;
};

struct SU3Embedding {
    Form<Rational> F;
    Form<Rational> rho;      // Re Psi
    Form<Rational> rho_hat;  // Im Psi
};

// F = omega + Re(alpha) ^ Im(alpha) (that is omega + (i/2) alpha ^ conj(alpha)), Psi = alpha ^ Omega
SU3Embedding embed_su3(const SU2Structure& s);

struct SU2Report {
    bool omega_squared = false;  // omega^2 = Omega ^ conj(Omega) / 2
    bool nondegenerate = false;  // omega^2 != 0
    bool omega_Omega = false;    // omega ^ Omega = 0
    bool Omega_Omega = false;    // Omega ^ Omega = 0
    bool metric_available = false;
    std::optional<bool> iota_Omega;
    std::optional<bool> iota_omega;
    std::optional<Rational> norm;  // |alpha|^2
    std::optional<bool> norm_two;
    std::string note;

    bool algebraic_ok() const { return omega_squared && nondegenerate && omega_Omega && Omega_Omega; }
    bool ok() const { return algebraic_ok() && iota_Omega.value_or(false) && iota_omega.value_or(false) && norm_two.value_or(false); }
};

// metric-dependent checks use the metric induced by embed_su3
SU2Report su2_axioms_check(const SU2Structure& s);

// vector g-dual to a 1-form
std::vector<Rational> metric_dual(const Matrix<Rational>& gram, const Form<Rational>& beta);

// omega = F - Re(alpha) ^ Im(alpha), Omega = (1/2) iota_{conj(alpha)} (rho + i rho^); needs |alpha|^2 = 2
SU2Structure extract_su2(const SU3Embedding& su3, const ComplexForm& alpha);

// (k_par, k_perp) = (cos phi, sin phi) on the rational unit circle
struct RotationAngle {
    Rational k_par;
    Rational k_perp;

    RotationAngle(Rational kpar, Rational kperp);
    Rational cos2() const { return k_par * k_par - k_perp * k_perp; }
    Rational sin2() const { return 2 * k_par * k_perp; }
    bool intermediate() const { return !is_zero(k_par) && !is_zero(k_perp); }
};

// rotation by (cos 2phi, sin 2phi) = (c, s)
SU2Structure rotate(const SU2Structure& s, const Rational& c, const Rational& sn);
inline SU2Structure rotate(const SU2Structure& s, const RotationAngle& a) { return rotate(s, a.cos2(), a.sin2()); }

struct OmegaSplit {
    Form<Rational> parallel;
    Form<Rational> perp;
};
OmegaSplit re_omega_split(const Form<Rational>& omega, const Form<Rational>& re_Omega, const Rational& c, const Rational& sn);

struct SusyData {
    ComplexForm alpha;
    Form<Rational> re_Omega_par;
    Form<Rational> re_Omega_perp;
    Form<Rational> im_Omega;
    RotationAngle angle;
};

struct SusyReport {
    Form<Rational> residual1;  // d Re(alpha)
    Form<Rational> residual2;  // d Re(Omega)_perp - k_par k_perp Re(alpha) ^ d Im(alpha)
    Form<Rational> residual3;  // d Im(Omega) ^ Re(alpha) + d(Im(alpha) ^ Re(Omega)_par)
    bool ok() const { return residual1.is_zero() && residual2.is_zero() && residual3.is_zero(); }
};

SusyReport susy_check(const SusyData& data, const LieAlgebra& g);

// Solution of the SUSY system from a symplectic half-flat SU(2) structure with d Re(alpha^) = 0.
SusyData from_shf(const SU2Structure& hat, const RotationAngle& angle, const LieAlgebra& g);

struct SusyPipeline {
    SU2Report axioms;
    SU3Embedding embedding;
    StructureReport structure;
    bool re_alpha_closed = false;
    std::optional<SusyReport> equations;
    std::string failure;
    bool ok() const { return failure.empty() && axioms.ok() && structure.ok() && re_alpha_closed && equations && equations->ok(); }
};

// axioms -> embedding -> shf_check -> from_shf -> susy_check
SusyPipeline run_susy(const SU2Structure& s, const LieAlgebra& g, const RotationAngle& angle);

}  // namespace shf
