#include "shf/rational.hpp"

#include <cctype>

#include "shf/error.hpp"

namespace shf {

Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw ParseError("empty rational literal");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    bool slash = false, digits = false;
    for (; i < s.size(); ++i) {
        if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            digits = true;
        } else if (s[i] == '/' && !slash && digits) {
            slash = true;
            digits = false;
        } else {
            throw ParseError("bad rational literal '" + s + "'");
        }
    }
    if (!digits) throw ParseError("bad rational literal '" + s + "'");
    if (s[0] == '+') s.erase(0, 1);
    Rational r;
    if (r.set_str(s, 10) != 0) throw ParseError("bad rational literal '" + s + "'");
    if (sgn(r.get_den()) == 0) throw ParseError("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& x) { return x.get_str(); }

Rational pow(const Rational& x, unsigned e) {
    Rational r = 1, b = x;
    while (e) {
        if (e & 1u) r *= b;
        e >>= 1u;
        if (e) b *= b;
    }
    return r;
}

bool rational_sqrt(const Rational& x, Rational& root) {
    if (sgn(x) < 0) return false;
    if (!mpz_perfect_square_p(x.get_num_mpz_t()) || !mpz_perfect_square_p(x.get_den_mpz_t())) return false;
    Integer n = sqrt(x.get_num()), d = sqrt(x.get_den());
    root = Rational(n, d);
    root.canonicalize();
    return true;
}

}  // namespace shf
