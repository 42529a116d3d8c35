#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "shf/error.hpp"
#include "shf/quadratic.hpp"
#include "shf/rational.hpp"

namespace shf {

using VarId = std::uint32_t;

// Interned indeterminate names; ids are stable for the lifetime of the process.
VarId variable(std::string_view name);
const std::string& variable_name(VarId id);

class Monomial {
public:
    using Factor = std::pair<VarId, unsigned>;

    Monomial() = default;
    static Monomial of(VarId v, unsigned e = 1) {
        Monomial m;
        if (e) {
            m.f_.emplace_back(v, e);
            m.deg_ = e;
        }
        return m;
    }

    unsigned degree() const { return deg_; }
    bool is_one() const { return f_.empty(); }
    const std::vector<Factor>& factors() const { return f_; }
    unsigned exponent(VarId v) const {
        for (const auto& [w, e] : f_)
            if (w == v) return e;
        return 0;
    }

    bool divides(const Monomial& m) const {
        std::size_t j = 0;
        for (const auto& [v, e] : f_) {
            while (j < m.f_.size() && m.f_[j].first < v) ++j;
            if (j == m.f_.size() || m.f_[j].first != v || m.f_[j].second < e) return false;
        }
        return true;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r;
        r.f_.reserve(a.f_.size() + b.f_.size());
        std::size_t i = 0, j = 0;
        while (i < a.f_.size() || j < b.f_.size()) {
            if (j == b.f_.size() || (i < a.f_.size() && a.f_[i].first < b.f_[j].first)) {
                r.f_.push_back(a.f_[i++]);
            } else if (i == a.f_.size() || b.f_[j].first < a.f_[i].first) {
                r.f_.push_back(b.f_[j++]);
            } else {
                r.f_.emplace_back(a.f_[i].first, a.f_[i].second + b.f_[j].second);
                ++i;
                ++j;
            }
        }
        r.deg_ = a.deg_ + b.deg_;
        return r;
    }

    // requires b | a
    friend Monomial operator/(const Monomial& a, const Monomial& b) {
        Monomial r;
        std::size_t j = 0;
        for (const auto& [v, e] : a.f_) {
            unsigned sub = 0;
            if (j < b.f_.size() && b.f_[j].first == v) sub = b.f_[j++].second;
            if (e > sub) r.f_.emplace_back(v, e - sub);
        }
        r.deg_ = a.deg_ - b.deg_;
        return r;
    }

    // graded lexicographic, smaller variable id is more significant
    friend bool operator<(const Monomial& a, const Monomial& b) {
        if (a.deg_ != b.deg_) return a.deg_ < b.deg_;
        std::size_t n = std::min(a.f_.size(), b.f_.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (a.f_[i].first != b.f_[i].first) return a.f_[i].first > b.f_[i].first;
            if (a.f_[i].second != b.f_[i].second) return a.f_[i].second < b.f_[i].second;
        }
        return a.f_.size() < b.f_.size();
    }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.f_ == b.f_; }

private:
    std::vector<Factor> f_;
    unsigned deg_ = 0;
};

std::string to_string(const Monomial& m);

template <class C>
class Polynomial {
public:
    using Coeff = C;
    using Terms = std::map<Monomial, C>;

    Polynomial() = default;
    Polynomial(const C& c) {  // NOLINT: constants are polynomials
        if (!shf::is_zero(c)) t_.emplace(Monomial{}, c);
    }
    Polynomial(long c) : Polynomial(C(c)) {}  // NOLINT
    Polynomial(const Rational& c)             // NOLINT
        requires(!std::is_same_v<C, Rational>)
        : Polynomial(C(c)) {}

    static Polynomial var(VarId v, unsigned e = 1) {
        Polynomial p;
        p.t_.emplace(Monomial::of(v, e), C(1));
        return p;
    }
    static Polynomial var(std::string_view name) { return var(variable(name)); }
    static Polynomial term(const Monomial& m, const C& c) {
        Polynomial p;
        if (!shf::is_zero(c)) p.t_.emplace(m, c);
        return p;
    }

    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one()); }
    C constant_term() const {
        auto it = t_.find(Monomial{});
        return it == t_.end() ? C(0) : it->second;
    }
    unsigned total_degree() const { return t_.empty() ? 0 : t_.rbegin()->first.degree(); }
    unsigned degree_in(VarId v) const {
        unsigned d = 0;
        for (const auto& [m, c] : t_) d = std::max(d, m.exponent(v));
        return d;
    }
    std::set<VarId> variables() const {
        std::set<VarId> s;
        for (const auto& [m, c] : t_)
            for (const auto& [v, e] : m.factors()) s.insert(v);
        return s;
    }
    const Monomial& leading_monomial() const { return t_.rbegin()->first; }
    const C& leading_coefficient() const { return t_.rbegin()->second; }

    Polynomial operator-() const {
        Polynomial r(*this);
        for (auto& [m, c] : r.t_) c = -c;
        return r;
    }
    Polynomial& operator+=(const Polynomial& o) {
        for (const auto& [m, c] : o.t_) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        for (const auto& [m, c] : o.t_) add_term(m, C(-c));
        return *this;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial r;
        if (a.is_zero() || b.is_zero()) return r;
        if (b.is_constant()) return a.scaled(b.t_.begin()->second);
        if (a.is_constant()) return b.scaled(a.t_.begin()->second);
        for (const auto& [ma, ca] : a.t_)
            for (const auto& [mb, cb] : b.t_) r.add_term(ma * mb, C(ca * cb));
        return r;
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.t_ == b.t_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    Polynomial scaled(const C& c) const {
        Polynomial r;
        if (shf::is_zero(c)) return r;
        for (const auto& [m, x] : t_) r.t_.emplace_hint(r.t_.end(), m, C(x * c));
        return r;
    }

    void add_term(const Monomial& m, const C& c) {
        if (shf::is_zero(c)) return;
        auto [it, fresh] = t_.try_emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (shf::is_zero(it->second)) t_.erase(it);
        }
    }

    Polynomial derivative(VarId v) const {
        Polynomial r;
        for (const auto& [m, c] : t_) {
            unsigned e = m.exponent(v);
            if (e == 0) continue;
            r.add_term(m / Monomial::of(v), C(c * C(static_cast<long>(e))));
        }
        return r;
    }

    // full evaluation; every variable must be bound
    template <class Map>
    C evaluate(const Map& values) const {
        C acc(0);
        for (const auto& [m, c] : t_) {
            C term = c;
            for (const auto& [v, e] : m.factors()) {
                auto it = values.find(v);
                if (it == values.end()) throw DomainError("unbound indeterminate " + variable_name(v));
                for (unsigned k = 0; k < e; ++k) term *= it->second;
            }
            acc += term;
        }
        return acc;
    }

    // simultaneous substitution; unbound variables stay symbolic
    Polynomial substitute(const std::map<VarId, Polynomial>& values) const {
        Polynomial r;
        for (const auto& [m, c] : t_) {
            Polynomial term(c);
            Monomial keep;
            for (const auto& [v, e] : m.factors()) {
                auto it = values.find(v);
                if (it == values.end()) {
                    keep = keep * Monomial::of(v, e);
                } else {
                    for (unsigned k = 0; k < e; ++k) term = term * it->second;
                }
            }
            r += term * Polynomial::term(keep, C(1));
        }
        return r;
    }

private:
    Terms t_;
};

template <class C>
bool is_zero(const Polynomial<C>& p) {
    return p.is_zero();
}

// a / b when b divides a exactly; throws DomainError otherwise
template <class C>
Polynomial<C> exact_divide(Polynomial<C> a, const Polynomial<C>& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    Polynomial<C> q;
    const Monomial& lb = b.leading_monomial();
    const C& cb = b.leading_coefficient();
    while (!a.is_zero()) {
        const Monomial& la = a.leading_monomial();
        if (!lb.divides(la)) throw DomainError("polynomial division is not exact");
        auto t = Polynomial<C>::term(la / lb, C(a.leading_coefficient() / cb));
        q += t;
        a -= t * b;
    }
    return q;
}

template <class C>
std::string to_string(const Polynomial<C>& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        std::string cs = to_string(c);
        bool neg = !cs.empty() && cs[0] == '-';
        if (neg) cs.erase(0, 1);
        if (!out.empty()) out += neg ? " - " : " + ";
        else if (neg) out += "-";
        if (m.is_one()) {
            out += cs;
        } else {
            if (cs != "1") out += cs + "*";
            out += to_string(m);
        }
    }
    return out;
}

using Poly = Polynomial<Rational>;
using QPoly = Polynomial<Quadratic>;

}  // namespace shf
