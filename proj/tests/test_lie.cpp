#include "doctest.h"
#include "support.hpp"

using namespace shf;
using test::algebra;
using test::entry;
using test::form;

namespace {

Matrix<Rational> coordinates(const std::vector<Form<Rational>>& forms, int n, int k) {
    auto masks = basis_masks(n, k);
    Matrix<Rational> m(static_cast<int>(forms.size()), static_cast<int>(masks.size()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m(i, j) = forms[i].coefficient(masks[j]);
    return m;
}

bool same_span(const ClosedFormBasis& a, const ClosedFormBasis& b) {
    if (a.dim() != b.dim()) return false;
    auto all = a.basis;
    all.insert(all.end(), b.basis.begin(), b.basis.end());
    int n = a.basis.empty() ? 6 : a.basis.front().dim();
    return rank(coordinates(all, n, a.degree)) == a.dim();
}

}  // namespace

TEST_SUITE("lie") {

TEST_CASE("structure equation parsing") {
    LieAlgebra g = algebra("(0,-e13,-e12,0,-e46,-e45)");
    CHECK(g.de(2) == form("-e13"));
    CHECK(g.de(5) == form("-e46"));
    CHECK(algebra("(0,0,0,0,e12,e13)") == entry("g_{5,1}+R").algebra);
    CHECK_THROWS_AS(algebra("(e1,0,0,0,0,0)"), ParseError);
    CHECK_THROWS_AS(algebra("(0,0,0,0,e12,e13"), ParseError);
    CHECK_THROWS_AS(algebra("(0,0,0,0,e12,e17)"), Error);
}

TEST_CASE("Chevalley-Eilenberg differential") {
    LieAlgebra g = algebra("(0,-e13,-e12,0,-e46,-e45)");
    CHECK(g.d(form("e24")) == form("-e134"));
    CHECK(g.d(form("e56")).is_zero());
    CHECK(entry("g_{6,38}^0").algebra.d(form("e1")) == form("e23"));
    // bracket convention: de^2 = -e^13 means [e1, e3] = e2
    CHECK(g.structure_constant(1, 3, 2) == 1);
}

TEST_CASE("d is an antiderivation and squares to zero on every catalog algebra") {
    Rng rng(21);
    for (const auto& e : test::catalog().entries())
        for (const auto& env : e.parameter_samples()) {
            LieAlgebra g = instantiate(e, env).algebra;
            for (int t = 0; t < 5; ++t) {
                int p = static_cast<int>(rng.range(1, 3));
                auto a = test::random_form(rng, 6, p), b = test::random_form(rng, 6, 2);
                CHECK(g.d(g.d(a)).is_zero());
                Form<Rational> rhs = wedge(g.d(a), b) + (p % 2 ? -wedge(a, g.d(b)) : wedge(a, g.d(b)));
                CHECK(g.d(wedge(a, b)) == rhs);
            }
        }
}

TEST_CASE("Jacobi identity") {
    for (const auto& e : test::catalog().entries())
        for (const auto& env : e.parameter_samples()) {
            INFO(e.name);
            CHECK(jacobi_check(instantiate(e, env).algebra).ok);
        }
    auto bad = jacobi_check(LieAlgebra({form("e23", 3), form("e12", 3), Form<Rational>(3)}));
    REQUIRE_FALSE(bad.ok);
    REQUIRE(bad.failures.size() >= 1);
    CHECK(bad.failures.front().first == 1);
    CHECK(bad.failures.front().second == form("e123", 3));
    CHECK(jacobi_check(LieAlgebra::abelian(6)).ok);
}

TEST_CASE("unimodularity") {
    CHECK(is_unimodular(entry("g_{6,38}^0").algebra));
    CHECK_FALSE(is_unimodular(entry("A_{6,54}^{2,1}").algebra));
    CHECK(is_unimodular(LieAlgebra::abelian(6)));
    // flags stored in the catalog agree with the trace computation
    for (const auto& e : test::catalog().entries())
        for (const auto& env : e.parameter_samples()) {
            INFO(e.name);
            CHECK(is_unimodular(instantiate(e, env).algebra) == e.unimodular);
        }
}

TEST_CASE("closed forms") {
    LieAlgebra g = entry("g_{6,3}^{0,-1}").algebra;
    CHECK(closed_forms(g, 2).dim() == 7);
    CHECK(closed_forms(g, 3).dim() == 12);
    CHECK(closed_forms(LieAlgebra::abelian(6), 2).dim() == 15);
    CHECK(closed_forms(LieAlgebra::abelian(6), 3).dim() == 20);
    for (const auto& f : closed_forms(g, 3).basis) CHECK(g.d(f).is_zero());
    // the kernel basis is a function of the algebra only
    CHECK(closed_forms(g, 2).basis == closed_forms(g, 2).basis);
}

TEST_CASE("printed closed-form families on g6,70 span Z^2 and Z^3") {
    LieAlgebra g = entry("g_{6,70}^{0,0}").algebra;
    ClosedFormBasis z2{2, {}}, z3{3, {}};
    for (auto s : {"e13+e24", "e16+e45", "e26-e35", "e34", "e36", "e46", "e56"}) z2.basis.push_back(form(s));
    for (auto s : {"e125", "e135+e245", "e136", "e145-e235", "e146+e236", "e156", "e246", "e256", "e345", "e346", "e356", "e456"})
        z3.basis.push_back(form(s));
    CHECK(same_span(z2, closed_forms(g, 2)));
    CHECK(same_span(z3, closed_forms(g, 3)));
}

TEST_CASE("shared closed-form spaces among the 5+1 algebras") {
    for (const char* c : {"1/2", "1/3", "2/3"})
        for (const char* b : {"1/2", "1/4"}) {
            Bindings cb{{"c", parse_rational(c)}}, bb{{"b", parse_rational(b)}};
            LieAlgebra a513 = entry("A_{5,13}^{-1,0,c}+R", cb).algebra;
            LieAlgebra a517 = entry("A_{5,17}^{0,0,c}+R", cb).algebra;
            LieAlgebra a57 = entry("A_{5,7}^{-1,b,-b}+R", bb).algebra;
            for (int k : {2, 3}) {
                CAPTURE(c);
                CAPTURE(b);
                CAPTURE(k);
                CHECK(same_span(closed_forms(a513, k), closed_forms(a57, k)));
                CHECK(same_span(closed_forms(a517, k), closed_forms(a57, k)));
            }
        }
    for (int k : {2, 3}) CHECK(same_span(closed_forms(entry("A_{5,14}^0+R").algebra, k), closed_forms(entry("A_{5,8}^{-1}+R").algebra, k)));
}

TEST_CASE("direct sums and extensions") {
    LieAlgebra e11 = algebra("(0,-e13,-e12)");
    CHECK(direct_sum(e11, e11).equations() == "(0, -e13, -e12, 0, -e46, -e45)");
    CHECK(extend_by_line(LieAlgebra::abelian(6)) == LieAlgebra::abelian(7));
    LieAlgebra g7 = extend_by_line(entry("g_{6,38}^0").algebra);
    CHECK(g7.dim() == 7);
    CHECK(g7.de(7).is_zero());
}

TEST_CASE("change of basis") {
    LieAlgebra g = entry("g_{5,1}+R").algebra;
    CHECK(change_basis(g, Matrix<Rational>::identity(6)) == g);
    Matrix<Rational> swap = Matrix<Rational>::identity(6);
    swap(4, 4) = swap(5, 5) = 0;
    swap(4, 5) = swap(5, 4) = 1;
    LieAlgebra h = change_basis(g, swap);
    CHECK(h.de(5) == form("e13"));
    CHECK(h.de(6) == form("e12"));
    auto w = test::entry("g_{5,1}+R").su2;
    REQUIRE(w);
    auto emb = embed_su3(*w);
    CHECK(shf_check(g, emb.F, emb.rho).ok());
    CHECK(shf_check(h, transport_form(emb.F, swap), transport_form(emb.rho, swap)).ok());

    Rng rng(22);
    for (int t = 0; t < 20; ++t) {
        LieAlgebra a = entry("g_{6,13}^{-1,1/2,0}").algebra;
        Matrix<Rational> M = test::random_invertible(rng, 6);
        LieAlgebra b = change_basis(a, M);
        CHECK(jacobi_check(b).ok);
        auto f = test::random_form(rng, 6, 2);
        CHECK(transport_form(a.d(f), M) == b.d(transport_form(f, M)));
    }
}

}
