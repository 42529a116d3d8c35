#include "doctest.h"
#include "support.hpp"

#include <algorithm>

using namespace shf;
using test::form;

namespace {

// sign of a permutation by counting inversions
int permutation_sign(const std::vector<int>& p) {
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
    return inv % 2 ? -1 : 1;
}

}  // namespace

TEST_SUITE("exterior") {

TEST_CASE("wedge on basis monomials") {
    CHECK(wedge(form("e1"), form("e2")) == form("e12"));
    CHECK(wedge(form("e2"), form("e1")) == form("-e12"));
    CHECK(wedge(form("e13"), form("e12")).is_zero());
    CHECK(to_string(wedge(form("e12 + e34"), form("e12 + e34"))) == "2*e1234");
}

TEST_CASE("wedge agrees with an index-sorting oracle") {
    Rng rng(11);
    for (int t = 0; t < 200; ++t) {
        int n = 6;
        std::vector<int> a, b;
        for (int i = 1; i <= n; ++i) {
            auto r = rng.below(3);
            if (r == 1) a.push_back(i);
            if (r == 2) b.push_back(i);
        }
        std::shuffle(a.begin(), a.end(), std::mt19937_64(rng.next()));
        std::shuffle(b.begin(), b.end(), std::mt19937_64(rng.next()));
        std::vector<int> all = a;
        all.insert(all.end(), b.begin(), b.end());
        std::vector<int> sorted = all;
        std::sort(sorted.begin(), sorted.end());
        Rational expected = permutation_sign(all);
        Form<Rational> w = wedge(Form<Rational>::basis(n, a), Form<Rational>::basis(n, b));
        Mask m = 0;
        for (int i : sorted) m |= index_mask(i);
        CHECK(w.coefficient(m) == expected);
        CHECK(w.size() == 1);
    }
}

TEST_CASE("graded commutativity and associativity") {
    Rng rng(12);
    for (int t = 0; t < 100; ++t) {
        int p = static_cast<int>(rng.range(1, 3)), q = static_cast<int>(rng.range(1, 3));
        auto a = test::random_form(rng, 6, p), b = test::random_form(rng, 6, q), c = test::random_form(rng, 6, 1);
        Form<Rational> ba = wedge(b, a);
        CHECK(wedge(a, b) == ((p * q) % 2 ? -ba : ba));
        CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    }
}

TEST_CASE("contraction") {
    CHECK(contract(basis_vector<Rational>(6, 1), form("e123")) == form("e23"));
    CHECK(contract(basis_vector<Rational>(6, 2), form("e13")).is_zero());
    std::vector<Rational> X = basis_vector<Rational>(6, 1);
    X[2] = 1;
    CHECK(contract(X, form("e13")) == form("e3 - e1"));
}

TEST_CASE("contraction is an antiderivation") {
    Rng rng(13);
    for (int t = 0; t < 100; ++t) {
        int p = static_cast<int>(rng.range(1, 3));
        auto a = test::random_form(rng, 6, p), b = test::random_form(rng, 6, 2);
        auto X = test::random_vector(rng, 6);
        Form<Rational> rhs = wedge(contract(X, a), b) + (p % 2 ? -wedge(a, contract(X, b)) : wedge(a, contract(X, b)));
        CHECK(contract(X, wedge(a, b)) == rhs);
        CHECK(contract(X, contract(X, a)).is_zero());
    }
}

TEST_CASE("top coefficient") {
    Form<Rational> nu = default_volume(6);
    CHECK(top_coefficient(nu.scaled(Rational(12)), nu) == 12);
    CHECK(top_coefficient(Form<Rational>(6), nu) == 0);
    std::vector<Form<Rational>> parts{form("e14"), form("e23"), form("2*e56")};
    std::vector<int> order{0, 1, 2};
    Form<Rational> sum(6);
    do sum += wedge(wedge(parts[order[0]], parts[order[1]]), parts[order[2]]);
    while (std::next_permutation(order.begin(), order.end()));
    // each ordering is 2 * sign(1,4,2,3,5,6) = 2
    CHECK(top_coefficient(sum, nu) == 6 * 2 * permutation_sign({1, 4, 2, 3, 5, 6}));
    CHECK_THROWS_AS(top_coefficient(form("e12"), nu), DomainError);
}

TEST_CASE("form parsing and printing") {
    CHECK(to_string(form("e21")) == "-e12");
    CHECK(to_string(form("1/2*e13 - e13 + e24")) == "-1/2*e13 + e24");
    CHECK(form("e11").is_zero());
    CHECK_THROWS_AS(form("e17"), Error);
    CHECK_THROWS_AS(parse_form("e1 +"), ParseError);
    auto f = evaluate(parse_form("(2+sqrt3)*e5 + e6"), 6, {});
    CHECK(f.coefficient(index_mask(5)) == Quadratic(Rational(2), Rational(1), 3));
}

TEST_CASE("quadratic field arithmetic") {
    Quadratic a(Rational(2), Rational(1), 3), b = a.conjugate();
    CHECK(a * b == Quadratic(1));
    CHECK(a.inverse() == b);
    CHECK(a.sign() > 0);
    CHECK(Quadratic(Rational(1), Rational(-1), 2).sign() < 0);
    CHECK_THROWS_AS(a + Quadratic::sqrt_of(2), ContextError);
    CHECK_THROWS_AS(a.to_rational(), Error);
}

}
