#include "doctest.h"
#include "support.hpp"

using namespace shf;
using test::entry;
using test::form;

namespace {

ComplexForm cf(const std::string& re, const std::string& im) { return {form(re), form(im)}; }

// alpha = e5 + i e6, omega = e12 + e34, Omega = (e1 + i e2)(e3 + i e4)
SU2Structure flat() { return {cf("e5", "e6"), form("e12 + e34"), cf("e13 - e24", "e14 + e23")}; }

const std::vector<std::string>& examples() {
    static const std::vector<std::string> names{"e(1,1)+e(1,1)", "g_{6,38}^0", "g_{6,54}^{0,-1}", "g_{6,118}^{0,-1,-1}",
                                                "A_{5,7}^{-1,-1,1}+R", "A_{5,17}^{a,-a,1}+R", "g_{5,1}+R", "g_{6,N3}"};
    return names;
}

}  // namespace

TEST_SUITE("susy") {

TEST_CASE("SU(2) axioms") {
    auto r = su2_axioms_check(flat());
    CHECK(r.ok());
    REQUIRE(r.norm);
    CHECK(*r.norm == 2);

    // e(1,1)+e(1,1): omega^2 = 4 e2356 = Omega ^ conj(Omega) / 2
    ComplexForm e2 = cf("e2", "e3"), e5 = cf("e5 - e6", "e5 + e6");
    SU2Structure s{cf("e1", "e4"), form("e23 + 2e56"), wedge(e2, e5)};
    CHECK(wedge(s.omega, s.omega) == form("4e2356"));
    ComplexForm OO = wedge(s.Omega, s.Omega.conj());
    CHECK(OO.re.scaled(Rational(1, 2)) == form("4e2356"));
    CHECK(OO.im.is_zero());
    CHECK(su2_axioms_check(s).ok());

    SU2Structure real = flat();
    real.Omega = ComplexForm(form("e13 + e24"), Form<Rational>(6));
    CHECK(wedge(real.Omega, real.Omega).re == form("-2e1234"));
    CHECK_FALSE(su2_axioms_check(real).ok());
}

TEST_CASE("embedding into SU(3)") {
    SU3Embedding e = embed_su3(flat());
    CHECK(e.F == test::F0());
    CHECK(e.rho == test::rho0());
    CHECK(e.rho_hat == imaginary_part(e.F, e.rho, default_volume()));

    auto g54 = entry("g_{6,54}^{0,-1}");
    REQUIRE(g54.su2);
    auto e54 = embed_su3(*g54.su2);
    CHECK(e54.F == form("e14 + e23 + e56"));
    CHECK(e54.rho == form("e125 - e136 + e246 + e345"));
    auto g118 = entry("g_{6,118}^{0,-1,-1}");
    REQUIRE(g118.su2);
    CHECK(embed_su3(*g118.su2).F == form("e14 + e23 - e56"));
}

TEST_CASE("extraction inverts the embedding") {
    for (const auto& name : {std::string("g_{6,54}^{0,-1}"), std::string("g_{5,1}+R")}) {
        auto inst = entry(name);
        REQUIRE(inst.su2);
        SU2Structure back = extract_su2(embed_su3(*inst.su2), inst.su2->alpha);
        CHECK(back.omega == inst.su2->omega);
        CHECK(back.Omega == inst.su2->Omega);
    }
    SU2Structure f = extract_su2(embed_su3(flat()), flat().alpha);
    CHECK(f.omega == flat().omega);
    CHECK(f.Omega == flat().Omega);
    CHECK_THROWS_WITH_AS(extract_su2(embed_su3(flat()), cf("2e5", "2e6")), "|alpha|^2 = 8, expected 2", DomainError);
}

TEST_CASE("rotation") {
    SU2Structure s = flat();
    SU2Structure id = rotate(s, Rational(1), Rational(0));
    CHECK(id.omega == s.omega);
    CHECK(id.Omega == s.Omega);
    SU2Structure q = rotate(s, Rational(0), Rational(1));
    CHECK(q.omega == s.Omega.re);
    CHECK(q.Omega.re == -s.omega);
    CHECK(q.Omega.im == s.Omega.im);
    CHECK(su2_axioms_check(rotate(s, Rational(-7, 25), Rational(24, 25))).ok());
    CHECK_THROWS_AS(rotate(s, Rational(1), Rational(1)), ConfigError);

    RotationAngle a(Rational(3, 5), Rational(4, 5));
    CHECK(a.cos2() == Rational(-7, 25));
    CHECK(a.sin2() == Rational(24, 25));
    CHECK(a.intermediate());
    CHECK_FALSE(RotationAngle(Rational(1), Rational(0)).intermediate());
    CHECK_THROWS_AS(RotationAngle(Rational(1, 2), Rational(1, 2)), ConfigError);
}

TEST_CASE("splitting Re Omega") {
    Rng rng(51);
    for (int t = 0; t < 20; ++t) {
        auto w = test::random_form(rng, 6, 2), r = test::random_form(rng, 6, 2);
        RotationAngle a(Rational(3, 5), Rational(4, 5));
        OmegaSplit sp = re_omega_split(w, r, a.cos2(), a.sin2());
        CHECK(sp.parallel + sp.perp == r);
    }
    OmegaSplit trivial = re_omega_split(form("e12"), form("e34"), Rational(1), Rational(0));
    CHECK(trivial.parallel.is_zero());
    CHECK(trivial.perp == form("e34"));
}

TEST_CASE("SUSY equations") {
    LieAlgebra ab = LieAlgebra::abelian(6);
    for (auto [p, q] : {std::pair{3, 4}, std::pair{4, 3}}) {
        RotationAngle a(Rational(p, 5), Rational(q, 5));
        CHECK(susy_check(from_shf(flat(), a, ab), ab).ok());
    }
    auto g51 = entry("g_{5,1}+R");
    REQUIRE(g51.su2);
    RotationAngle a(Rational(3, 5), Rational(4, 5));
    SusyData data = from_shf(*g51.su2, a, g51.algebra);
    CHECK(susy_check(data, g51.algebra).ok());
    // perturb Im Omega by a 2-form whose differential survives the wedge with Re(alpha)
    auto g54 = entry("g_{6,54}^{0,-1}");
    REQUIRE(g54.su2);
    SusyData base = from_shf(*g54.su2, a, g54.algebra);
    REQUIRE(susy_check(base, g54.algebra).ok());
    std::optional<Form<Rational>> beta;
    for (auto m : basis_masks(6, 2)) {
        Form<Rational> b = Form<Rational>::basis(6, mask_indices(m));
        if (!wedge(g54.algebra.d(b), base.alpha.re).is_zero()) {
            beta = b;
            break;
        }
    }
    REQUIRE(beta);
    SusyData bent = base;
    bent.im_Omega = bent.im_Omega + *beta;
    auto r = susy_check(bent, g54.algebra);
    CHECK(r.residual1.is_zero());
    CHECK_FALSE(r.residual3.is_zero());
    CHECK_THROWS_AS(from_shf(*g51.su2, RotationAngle(Rational(1), Rational(0)), g51.algebra), DomainError);
}

TEST_CASE("pipeline on the SU(2) examples") {
    for (const auto& name : examples())
        for (const auto& env : test::catalog().find(name).parameter_samples())
            for (auto [p, q] : {std::pair{3, 4}, std::pair{4, 3}}) {
                auto inst = entry(name, env);
                REQUIRE(inst.su2);
                const SU2Structure& s = inst.su2_corrected ? *inst.su2_corrected : *inst.su2;
                SusyPipeline run = run_susy(s, inst.algebra, RotationAngle(Rational(p, 5), Rational(q, 5)));
                INFO(name << " " << to_string(env));
                CHECK(run.ok());
                CHECK(g2_closure(inst.algebra, run.embedding.F, run.embedding.rho).closed());
            }
}

TEST_CASE("printed g6,38 SU(2) data does not embed to a closed F") {
    auto inst = entry("g_{6,38}^0");
    REQUIRE(inst.su2);
    auto e = embed_su3(*inst.su2);
    CHECK(inst.algebra.d(e.F) == form("4e236"));
    REQUIRE(inst.su2_corrected);
    REQUIRE(inst.witness);
    CHECK(embed_su3(*inst.su2_corrected).F == inst.witness->F);
    CHECK(embed_su3(*inst.su2_corrected).rho == inst.witness->rho);
}

}
