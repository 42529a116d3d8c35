#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace shf {

// mpq_class keeps lowest terms with positive denominator once canonicalized
using Rational = mpq_class;
using Integer = mpz_class;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& x);

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline int sign_of(const Rational& x) { return sgn(x); }

// x^e for e >= 0
Rational pow(const Rational& x, unsigned e);

// exact square root if x is the square of a rational
bool rational_sqrt(const Rational& x, Rational& root);

}  // namespace shf
