#pragma once

#include <string>

#include "shf/rational.hpp"

namespace shf {

// p + q*sqrt(d), d a positive squarefree integer. d == 0 marks an element
// that has not been attached to any extension yet (a plain rational); it is
// promoted on first contact with an element that carries a radicand.
class Quadratic {
public:
    Quadratic() = default;
    Quadratic(const Rational& p) : p_(p) {}  // NOLINT: implicit promotion Q -> Q(sqrt d)
    Quadratic(long p) : p_(p) {}             // NOLINT
    Quadratic(const Rational& p, const Rational& q, int d);

    static Quadratic sqrt_of(int d) { return {Rational(0), Rational(1), d}; }

    const Rational& rational_part() const { return p_; }
    const Rational& radical_part() const { return q_; }
    int radicand() const { return d_; }

    bool is_zero() const { return sgn(p_) == 0 && sgn(q_) == 0; }
    bool is_rational() const { return sgn(q_) == 0; }
    Rational to_rational() const;  // throws unless is_rational()
    int sign() const;

    Quadratic conjugate() const { return {p_, -q_, d_}; }
    Rational norm() const { return p_ * p_ - q_ * q_ * d_; }
    Quadratic inverse() const;

    Quadratic operator-() const { return {-p_, -q_, d_}; }
    Quadratic& operator+=(const Quadratic& o);
    Quadratic& operator-=(const Quadratic& o);
    Quadratic& operator*=(const Quadratic& o);
    Quadratic& operator/=(const Quadratic& o) { return *this *= o.inverse(); }

    friend Quadratic operator+(Quadratic a, const Quadratic& b) { return a += b; }
    friend Quadratic operator-(Quadratic a, const Quadratic& b) { return a -= b; }
    friend Quadratic operator*(Quadratic a, const Quadratic& b) { return a *= b; }
    friend Quadratic operator/(Quadratic a, const Quadratic& b) { return a /= b; }
    friend bool operator==(const Quadratic& a, const Quadratic& b);
    friend bool operator!=(const Quadratic& a, const Quadratic& b) { return !(a == b); }
    friend bool operator<(const Quadratic& a, const Quadratic& b) { return (a - b).sign() < 0; }

private:
    int join(const Quadratic& o) const;

    Rational p_, q_;
    int d_ = 0;
};

std::string to_string(const Quadratic& x);
inline bool is_zero(const Quadratic& x) { return x.is_zero(); }
inline int sign_of(const Quadratic& x) { return x.sign(); }

}  // namespace shf
