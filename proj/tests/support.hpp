#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "shf/catalog.hpp"
#include "shf/rng.hpp"

namespace shf::test {

inline Form<Rational> form(const std::string& text, int n = 6) { return evaluate_rational(parse_form(text), n, {}); }

inline LieAlgebra algebra(const std::string& equations) { return parse_structure_equations(equations); }

inline const Catalog& catalog() {
    static const Catalog c = Catalog::load(Catalog::default_path());
    return c;
}

inline Instance entry(const std::string& name, const Bindings& env = {}) { return instantiate(catalog().find(name), env); }

inline const Form<Rational>& rho0() {
    static const Form<Rational> r = form("e135 - e146 - e236 - e245");
    return r;
}

inline const Form<Rational>& F0() {
    static const Form<Rational> f = form("e12 + e34 + e56");
    return f;
}

// small random rationals p/q with |p| <= h, 1 <= q <= h
inline Rational small_rational(Rng& rng, long h = 9) {
    Rational x(rng.range(-h, h), rng.range(1, h));
    x.canonicalize();
    return x;
}

inline Form<Rational> random_form(Rng& rng, int n, int k, double density = 0.5) {
    Form<Rational> f(n);
    for (Mask m : basis_masks(n, k))
        if (rng.below(1000) < static_cast<std::uint64_t>(density * 1000)) f.add(m, small_rational(rng));
    return f;
}

inline std::vector<Rational> random_vector(Rng& rng, int n) {
    std::vector<Rational> v;
    for (int i = 0; i < n; ++i) v.push_back(small_rational(rng));
    return v;
}

inline Matrix<Rational> random_invertible(Rng& rng, int n) {
    for (;;) {
        Matrix<Rational> m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = Rational(rng.range(-3, 3));
        if (is_invertible(m)) return m;
    }
}

// Oracle for K~ from the component formula
//   K~^i_j = (1/12) eps^{i b c d e f} rho_{jbc} rho_{def},
// with rho stored as a fully antisymmetric 6x6x6 array and nu = e^{123456}.
inline Matrix<Rational> k_tensor_oracle(const Form<Rational>& rho) {
    std::array<Rational, 216> t{};
    auto at = [&](int a, int b, int c) -> Rational& { return t[(a * 6 + b) * 6 + c]; };
    for (const auto& [m, coef] : rho.terms()) {
        auto idx = mask_indices(m);
        int p[3] = {idx[0] - 1, idx[1] - 1, idx[2] - 1};
        int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
        for (int s = 0; s < 6; ++s) at(p[perms[s][0]], p[perms[s][1]], p[perms[s][2]]) = s < 3 ? coef : Rational(-coef);
    }
    std::array<int, 6> perm{0, 1, 2, 3, 4, 5};
    Matrix<Rational> K(6, 6);
    do {
        int inv = 0;
        for (int a = 0; a < 6; ++a)
            for (int b = a + 1; b < 6; ++b) inv += perm[a] > perm[b];
        int sign = inv % 2 ? -1 : 1;
        int i = perm[0], b = perm[1], c = perm[2], d = perm[3], e = perm[4], f = perm[5];
        Rational tail = at(d, e, f);
        if (is_zero(tail)) continue;
        for (int j = 0; j < 6; ++j) K(i, j) += sign * at(j, b, c) * tail;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return K.scaled(Rational(1, 12));
}

}  // namespace shf::test
