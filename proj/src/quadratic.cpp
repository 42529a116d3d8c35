#include "shf/quadratic.hpp"

#include "shf/error.hpp"

namespace shf {

Quadratic::Quadratic(const Rational& p, const Rational& q, int d) : p_(p), q_(q), d_(d) {
    if (d < 0) throw ContextError("radicand must be positive");
    if (d == 1) {
        p_ += q_;
        q_ = 0;
        d_ = 0;
    }
    if (d_ == 0 && sgn(q_) != 0) throw ContextError("radical part without radicand");
}

int Quadratic::join(const Quadratic& o) const {
    if (d_ == 0) return o.d_;
    if (o.d_ == 0 || o.d_ == d_) return d_;
    throw ContextError("mixing Q(sqrt " + std::to_string(d_) + ") with Q(sqrt " + std::to_string(o.d_) + ")");
}

Rational Quadratic::to_rational() const {
    if (!is_rational()) throw ContextError("irrational value " + to_string(*this) + " where a rational is required");
    return p_;
}

int Quadratic::sign() const {
    int sp = sgn(p_), sq = sgn(q_);
    if (sq == 0) return sp;
    if (sp == 0 || sp == sq) return sq;
    // opposite signs: compare p^2 with d q^2
    int c = cmp(Rational(p_ * p_), Rational(q_ * q_ * d_));
    return c > 0 ? sp : (c < 0 ? sq : 0);
}

Quadratic Quadratic::inverse() const {
    Rational n = norm();
    if (sgn(n) == 0) throw DomainError("division by zero in Q(sqrt d)");
    return {p_ / n, -q_ / n, d_};
}

Quadratic& Quadratic::operator+=(const Quadratic& o) {
    d_ = join(o);
    p_ += o.p_;
    q_ += o.q_;
    return *this;
}

Quadratic& Quadratic::operator-=(const Quadratic& o) {
    d_ = join(o);
    p_ -= o.p_;
    q_ -= o.q_;
    return *this;
}

Quadratic& Quadratic::operator*=(const Quadratic& o) {
    int d = join(o);
    Rational p = p_ * o.p_ + q_ * o.q_ * d;
    Rational q = p_ * o.q_ + q_ * o.p_;
    p_ = std::move(p);
    q_ = std::move(q);
    d_ = d;
    return *this;
}

bool operator==(const Quadratic& a, const Quadratic& b) {
    if (sgn(a.q_) != 0 && sgn(b.q_) != 0) a.join(b);
    return a.p_ == b.p_ && a.q_ == b.q_;
}

std::string to_string(const Quadratic& x) {
    if (x.is_rational()) return to_string(x.rational_part());
    std::string r = "sqrt" + std::to_string(x.radicand());
    const Rational& q = x.radical_part();
    std::string qs = q == 1 ? r : (q == -1 ? "-" + r : to_string(q) + "*" + r);
    if (is_zero(x.rational_part())) return qs;
    std::string ps = to_string(x.rational_part());
    return "(" + ps + (sgn(q) > 0 ? "+" : "") + qs + ")";
}

}  // namespace shf
