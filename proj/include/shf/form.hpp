#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "shf/error.hpp"
#include "shf/polynomial.hpp"
#include "shf/quadratic.hpp"
#include "shf/rational.hpp"

namespace shf {

// bit i-1 set <=> index i present; e^{i1..ik} with i1 < ... < ik
using Mask = std::uint32_t;

inline int degree_of(Mask m) { return std::popcount(m); }

inline std::vector<int> mask_indices(Mask m) {
    std::vector<int> out;
    for (int i = 0; m; ++i, m >>= 1u)
        if (m & 1u) out.push_back(i + 1);
    return out;
}

inline Mask index_mask(int i) { return Mask{1} << (i - 1); }

// Canonical order of basis monomials: by degree, then lexicographic in the
// increasing index tuple.
inline bool canonical_less(Mask a, Mask b) {
    int da = degree_of(a), db = degree_of(b);
    if (da != db) return da < db;
    while (a != b) {
        Mask la = a & (~a + 1), lb = b & (~b + 1);
        if (la != lb) return la < lb;
        a ^= la;
        b ^= lb;
    }
    return false;
}

// All masks of degree k on n indices in canonical order.
std::vector<Mask> basis_masks(int n, int k);

// sign of e^A ^ e^B for disjoint A, B when rewritten as e^{A|B}
inline int wedge_sign(Mask a, Mask b) {
    int swaps = 0;
    for (Mask bb = b; bb; bb &= bb - 1) {
        Mask low = bb & (~bb + 1);
        swaps += std::popcount(a & ~((low << 1) - 1));
    }
    return (swaps & 1) ? -1 : 1;
}

template <class S>
class Form {
public:
    using Scalar = S;
    using Terms = std::map<Mask, S>;

    explicit Form(int n = 6) : n_(n) {
        if (n < 1 || n > 9) throw DomainError("form dimension must be in 1..9");
    }

    // e^{idx[0]} ^ e^{idx[1]} ^ ... scaled by c; unsorted indices pick up the permutation sign
    static Form basis(int n, const std::vector<int>& idx, const S& c = S(1)) {
        Form f(n);
        Mask m = 0;
        int sign = 1;
        for (int i : idx) {
            if (i < 1 || i > n) throw DomainError("index " + std::to_string(i) + " out of range 1.." + std::to_string(n));
            Mask bit = index_mask(i);
            if (m & bit) return f;
            if (std::popcount(m & ~((bit << 1) - 1)) & 1) sign = -sign;
            m |= bit;
        }
        f.add(m, sign > 0 ? c : S(-c));
        return f;
    }
    static Form constant(int n, const S& c) {
        Form f(n);
        f.add(0, c);
        return f;
    }

    int dim() const { return n_; }
    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t size() const { return t_.size(); }

    S coefficient(Mask m) const {
        auto it = t_.find(m);
        return it == t_.end() ? S(0) : it->second;
    }

    void add(Mask m, const S& c) {
        if (shf::is_zero(c)) return;
        auto [it, fresh] = t_.try_emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (shf::is_zero(it->second)) t_.erase(it);
        }
    }

    bool is_homogeneous(int k) const {
        return std::all_of(t_.begin(), t_.end(), [k](const auto& kv) { return degree_of(kv.first) == k; });
    }
    Form part(int k) const {
        Form r(n_);
        for (const auto& [m, c] : t_)
            if (degree_of(m) == k) r.t_.emplace_hint(r.t_.end(), m, c);
        return r;
    }

    Form operator-() const {
        Form r(*this);
        for (auto& [m, c] : r.t_) c = -c;
        return r;
    }
    Form& operator+=(const Form& o) {
        same_dim(o);
        for (const auto& [m, c] : o.t_) add(m, c);
        return *this;
    }
    Form& operator-=(const Form& o) {
        same_dim(o);
        for (const auto& [m, c] : o.t_) add(m, S(-c));
        return *this;
    }
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend bool operator==(const Form& a, const Form& b) { return a.n_ == b.n_ && a.t_ == b.t_; }
    friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

    Form scaled(const S& c) const {
        Form r(n_);
        if (shf::is_zero(c)) return r;
        for (const auto& [m, x] : t_) r.add(m, S(x * c));
        return r;
    }

    void same_dim(const Form& o) const {
        if (o.n_ != n_) throw DomainError("forms live on spaces of different dimension");
    }

private:
    int n_;
    Terms t_;
};

template <class T, class S>
Form<T> form_cast(const Form<S>& f) {
    Form<T> r(f.dim());
    for (const auto& [m, c] : f.terms()) r.add(m, T(c));
    return r;
}

template <class S>
Form<S> wedge(const Form<S>& a, const Form<S>& b) {
    a.same_dim(b);
    Form<S> r(a.dim());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            if (ma & mb) continue;
            S c = ca * cb;
            if (wedge_sign(ma, mb) < 0) c = -c;
            r.add(ma | mb, c);
        }
    return r;
}

// interior product with X = sum X[i] e_{i+1}
template <class S>
Form<S> contract(const std::vector<S>& X, const Form<S>& a) {
    if (static_cast<int>(X.size()) != a.dim()) throw DomainError("vector length does not match form dimension");
    Form<S> r(a.dim());
    for (const auto& [m, c] : a.terms())
        for (int i = 0; i < a.dim(); ++i) {
            Mask bit = Mask{1} << i;
            if (!(m & bit) || shf::is_zero(X[i])) continue;
            S v = X[i] * c;
            if (std::popcount(m & (bit - 1)) & 1) v = -v;
            r.add(m ^ bit, v);
        }
    return r;
}

template <class S>
std::vector<S> basis_vector(int n, int i, const S& c = S(1)) {
    std::vector<S> v(n, S(0));
    v.at(i - 1) = c;
    return v;
}

// c with a = c * nu for top-degree a
template <class S>
S top_coefficient(const Form<S>& a, const Form<S>& nu) {
    a.same_dim(nu);
    Mask top = (Mask{1} << a.dim()) - 1;
    if (!a.is_homogeneous(a.dim())) throw DomainError("top_coefficient needs a top-degree form");
    if (nu.size() != 1 || nu.terms().begin()->first != top) throw DomainError("reference volume must be a nonzero top form");
    if (a.is_zero()) return S(0);
    return S(a.terms().begin()->second / nu.terms().begin()->second);
}

template <class S>
Form<S> volume_form(int n) {
    return Form<S>::basis(n, [n] {
        std::vector<int> v(n);
        for (int i = 0; i < n; ++i) v[i] = i + 1;
        return v;
    }());
}

inline std::string mask_label(Mask m) {
    std::string s = "e";
    for (int i : mask_indices(m)) s += std::to_string(i);
    return m ? s : "1";
}

template <class S>
std::string to_string(const Form<S>& f) {
    if (f.is_zero()) return "0";
    std::vector<std::pair<Mask, S>> terms(f.terms().begin(), f.terms().end());
    std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return canonical_less(x.first, y.first); });
    std::string out;
    for (const auto& [m, c] : terms) {
        std::string cs = to_string(c);
        bool compound = cs.find_first_of("+- ", 1) != std::string::npos;
        bool neg = !compound && cs[0] == '-';
        if (neg) cs.erase(0, 1);
        if (!out.empty()) out += neg ? " - " : " + ";
        else if (neg) out += "-";
        if (compound) cs = "(" + cs + ")";
        if (m == 0) out += cs;
        else out += (cs == "1" ? "" : cs + "*") + mask_label(m);
    }
    return out;
}

}  // namespace shf
