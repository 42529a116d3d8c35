#include "doctest.h"
#include "support.hpp"

using namespace shf;
using test::entry;
using test::form;

namespace {

Form<Quadratic> covector(const std::string& text, const Bindings& env = {}) { return parse_covector(text, 6, env); }

std::vector<Rational> vec(const std::string& text, int n = 6) { return parse_vector(text, n); }

// F(b) ^ rho(a) = 0 solved at random b, then a random rho in the kernel
struct Pair {
    Form<Rational> F, rho;
};

Pair random_compatible_pair(const GenericPair& gp, Rng& rng) {
    for (;;) {
        std::vector<Rational> b;
        for (std::size_t i = 0; i < gp.b.size(); ++i) b.push_back(test::small_rational(rng));
        Form<Rational> F = gp.F_at(b);
        if (is_zero(stability_coefficient(F, default_volume()))) continue;
        auto kernel = nullspace(gp.compatibility_matrix(b));
        if (kernel.empty()) continue;
        Form<Rational> rho(6);
        for (const auto& k : kernel) {
            Rational c = test::small_rational(rng);
            for (std::size_t i = 0; i < k.size(); ++i) rho += gp.z3.basis[i].scaled(Rational(c * k[i]));
        }
        return {F, rho};
    }
}

}  // namespace

TEST_SUITE("obstruction") {

TEST_CASE("generic pairs") {
    auto gp = generic_pair(entry("g_{6,3}^{0,-1}").algebra);
    CHECK(gp.b.size() == 7);
    CHECK(gp.a.size() == 12);
    auto ab = generic_pair(LieAlgebra::abelian(6));
    CHECK(ab.b.size() == 15);
    CHECK(ab.a.size() == 20);
    auto g70 = generic_pair(entry("g_{6,70}^{0,0}").algebra);
    CHECK(g70.b.size() == 7);
    CHECK(g70.a.size() == 12);
}

TEST_CASE("compatibility solving") {
    auto gp = generic_pair(entry("g_{6,13}^{-1,1/2,0}").algebra);
    Rng rng(41);
    for (int t = 0; t < 20; ++t) {
        Pair p = random_compatible_pair(gp, rng);
        CHECK(wedge(p.F, p.rho).is_zero());
    }
    std::vector<Rational> b{1, 2, 3, 5, 7, 11, 13};
    Compatibility c = solve_compatibility(gp, b);
    CHECK(c.dimension() + static_cast<int>(c.eliminated.size()) == 12);
    CHECK(wedge(form_cast<Poly>(gp.F_at(b)), c.rho).is_zero());
}

TEST_CASE("direct and bilinear evaluations of the obstruction targets agree") {
    Rng rng(42);
    Form<Rational> nu = default_volume();
    std::optional<Rational> ratio_i, ratio_ii;
    for (int t = 0; t < 100; ++t) {
        auto rho = test::random_form(rng, 6, 3, 0.6);
        auto F = test::random_form(rng, 6, 2, 0.6);
        auto a = test::random_form(rng, 6, 1, 0.8);
        auto X = test::random_vector(rng, 6);
        auto J = dual_map(rho, nu);
        // alpha ^ J*alpha ^ F^2, read against e^{123456}
        Rational direct_i = top_pair(wedge(a, J.apply(a)), wedge(F, F));
        Rational fast_i = p21i_bilinear(a, F, rho, rho);
        Rational direct_ii = evaluate_two_form(F, J.apply(X), X);
        Rational fast_ii = p21ii_bilinear(F, X, rho, rho);
        CHECK(is_zero(direct_i) == is_zero(fast_i));
        CHECK(is_zero(direct_ii) == is_zero(fast_ii));
        if (!is_zero(direct_i)) {
            Rational r = fast_i / direct_i;
            if (!ratio_i) ratio_i = r;
            CHECK(r == *ratio_i);
        }
        if (!is_zero(direct_ii)) {
            Rational r = fast_ii / direct_ii;
            if (!ratio_ii) ratio_ii = r;
            CHECK(r == *ratio_ii);
        }
    }
    REQUIRE(ratio_ii);
    // q enters only through its sign
    CHECK(sgn(*ratio_ii) > 0);
}

TEST_CASE("obstruction (i)") {
    auto c = certify_p21i(entry("g_{6,3}^{0,-1}").algebra, covector("e6"));
    CHECK(c.verdict == Verdict::Certified);
    CHECK(c.mode == "randomized");
    CHECK(c.failure_bound < Rational(1, 1099511627776));  // 2^-40
    CHECK(certify_p21i(entry("e(2)+r_2+R").algebra, covector("e4")).valid());
    Bindings one{{"a", Rational(1)}, {"b", Rational(1)}};
    auto n61 = certify_p21i(entry("N_{6,1}^{a,b,-a,-b}", one).algebra, covector("(2+sqrt3)*e5 + e6"));
    CHECK(n61.valid());
    CHECK(n61.field == "Q(sqrt3)");
    CHECK(certify_p21i(entry("r_2+r_2+r_2").algebra, covector("e1 + e3")).valid());

    LieAlgebra g38 = entry("g_{6,38}^0").algebra;
    for (auto a : {"e1", "e6", "e1 + e2 - e5"}) CHECK(certify_p21i(g38, covector(a)).verdict == Verdict::Falsified);
}

TEST_CASE("obstruction (i) in exact mode") {
    CertifyConfig cfg;
    cfg.exact = true;
    auto c = certify_p21i(entry("g_{6,3}^{0,-1}").algebra, covector("e6"), cfg);
    CHECK(c.verdict == Verdict::Certified);
    CHECK(c.mode == "exact");
    CHECK(c.failure_bound == 0);
}

TEST_CASE("obstruction (i) survives a change of basis") {
    LieAlgebra g = entry("g_{6,3}^{0,-1}").algebra;
    Rng rng(43);
    for (int t = 0; t < 3; ++t) {
        Matrix<Rational> M = test::random_invertible(rng, 6);
        LieAlgebra h = change_basis(g, M);
        CHECK(certify_p21i(h, transport_form(covector("e6"), M)).valid());
    }
}

TEST_CASE("obstruction (ii)") {
    auto g13 = certify_p21ii(entry("g_{6,13}^{-1,1/2,0}").algebra, vec("e1"), vec("e1"));
    CHECK(g13.valid());
    CHECK(g13.kind == "P21-ii-zero");
    auto g70 = certify_p21ii(entry("g_{6,70}^{0,0}").algebra, vec("e1"), vec("e2"));
    CHECK(g70.valid());
    CHECK(g70.kind == "P21-ii-antisym");
    CHECK(certify_p21ii(entry("g_{6,78}").algebra, vec("e1"), vec("e1")).valid());
    LieAlgebra e2e2 = entry("e(2)+e(2)").algebra;
    // the pair printed for e(2)+e(2) does not obstruct; (e2, e3) does
    CHECK(certify_p21ii(e2e2, vec("e1"), vec("e2")).verdict == Verdict::Falsified);
    CHECK(certify_p21ii(e2e2, vec("e2"), vec("e3")).valid());
    // a falsification carries an explicit compatible closed pair
    auto bad = certify_p21ii(e2e2, vec("e1"), vec("e2"));
    REQUIRE(bad.nonempty);
    CHECK(wedge(bad.nonempty->F, bad.nonempty->rho).is_zero());
    CHECK(e2e2.d(bad.nonempty->F).is_zero());
    CHECK(e2e2.d(bad.nonempty->rho).is_zero());
}

TEST_CASE("g6,70 printed identities on the compatible locus") {
    // q(e1) = -q(e2) holds on every compatible closed pair
    auto gp = generic_pair(entry("g_{6,70}^{0,0}").algebra);
    Rng rng(44);
    Form<Rational> nu = default_volume();
    auto e1 = basis_vector<Rational>(6, 1), e2 = basis_vector<Rational>(6, 2);
    for (int t = 0; t < 50; ++t) {
        Pair p = random_compatible_pair(gp, rng);
        auto J = dual_map(p.rho, nu);
        CHECK(evaluate_two_form(p.F, J.apply(e1), e1) == -evaluate_two_form(p.F, J.apply(e2), e2));
    }
}

TEST_CASE("calibrated G2 obstruction") {
    auto c = certify_p22(entry("A_{6,39}^{3/2,-3/2}").algebra, vec("e1"));
    CHECK(c.valid());
    CHECK(c.mode == "exact");
    CHECK_FALSE(c.degenerate_form.empty());
    // the proof's contraction a1e46 + a2e56 + a3e35 - a5e45 + 2a7e57 - a8e36 - a14e67 is degenerate
    Rng rng(45);
    for (int t = 0; t < 20; ++t) {
        Bindings env;
        for (auto v : {"a1", "a2", "a3", "a5", "a7", "a8", "a14"}) env[v] = test::small_rational(rng);
        auto w = evaluate_rational(parse_form("a1*e46 + a2*e56 + a3*e35 - a5*e45 + 2*a7*e57 - a8*e36 - a14*e67"), 7, env);
        CHECK(wedge(w, wedge(w, w)).is_zero());
    }
    CHECK(certify_p22(entry("A_{6,54}^{a,a-1}", {{"a", Rational(1, 2)}}).algebra, vec("e1")).valid());
    LieAlgebra g51 = entry("g_{5,1}+R").algebra;
    for (int i = 1; i <= 6; ++i) CHECK(certify_p22(g51, basis_vector<Rational>(6, i)).verdict == Verdict::Falsified);
    CHECK(certify_p22(entry("N_{6,17}^0").algebra, vec("e3")).valid());
}

TEST_CASE("witness search") {
    // the exact G2 test is tried first, so g6,3 yields X = e1 rather than alpha = e6
    auto c = search_witness(entry("g_{6,3}^{0,-1}").algebra);
    REQUIRE(c);
    CHECK(c->valid());
    CHECK(c->kind == "P22");
    CHECK(c->witness.front() == "e1");
    auto p = search_witness(entry("N_{6,17}^0").algebra);
    REQUIRE(p);
    CHECK(p->kind == "P22");
    CHECK(p->witness.front() == "e3");
    SearchBudget small;
    small.candidates = 60;
    CHECK_FALSE(search_witness(entry("g_{6,38}^0").algebra, small));
}

TEST_CASE("certificates are reproducible") {
    LieAlgebra g = entry("g_{6,13}^{-1,1/2,0}").algebra;
    CertifyConfig cfg;
    cfg.seed = 7;
    CHECK(to_json_text(certify_p21ii(g, vec("e1"), vec("e1"), cfg)) == to_json_text(certify_p21ii(g, vec("e1"), vec("e1"), cfg)));
    cfg.trials = 0;
    CHECK_THROWS_AS(certify_p21ii(g, vec("e1"), vec("e1"), cfg), ConfigError);
}

}
