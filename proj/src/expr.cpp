#include "shf/expr.hpp"

#include <cctype>

#include "shf/error.hpp"

namespace shf {

namespace {

enum class Tok { Num, Ident, Basis, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, Cmp, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
    auto is_alpha = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_'; };
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (is_digit(c)) {
            while (i < s.size() && is_digit(s[i])) ++i;
            out.push_back({Tok::Num, std::string(s.substr(start, i - start)), start});
        } else if (c == 'e' && i + 1 < s.size() && is_digit(s[i + 1])) {
            ++i;
            while (i < s.size() && is_digit(s[i])) ++i;
            out.push_back({Tok::Basis, std::string(s.substr(start + 1, i - start - 1)), start});
        } else if (is_alpha(c)) {
            while (i < s.size() && (is_alpha(s[i]) || is_digit(s[i]))) ++i;
            out.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
        } else if (c == '<' || c == '>' || c == '=' || c == '!') {
            ++i;
            if (i < s.size() && s[i] == '=') ++i;
            std::string op(s.substr(start, i - start));
            if (op == "=" || op == "!") throw ParseError("bad comparison operator at position " + std::to_string(start));
            out.push_back({Tok::Cmp, op, start});
        } else {
            Tok k;
            switch (c) {
                case '+': k = Tok::Plus; break;
                case '-': k = Tok::Minus; break;
                case '*': k = Tok::Star; break;
                case '/': k = Tok::Slash; break;
                case '^': k = Tok::Caret; break;
                case '(': k = Tok::LParen; break;
                case ')': k = Tok::RParen; break;
                case ',': k = Tok::Comma; break;
                default: throw ParseError(std::string("unexpected character '") + c + "' at position " + std::to_string(i));
            }
            ++i;
            out.push_back({k, std::string(1, c), start});
        }
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }
ExprPtr num(const Rational& r) {
    Expr e;
    e.num = r;
    return make(std::move(e));
}
ExprPtr binary(Expr::Op op, ExprPtr a, ExprPtr b) {
    Expr e;
    e.op = op;
    e.lhs = std::move(a);
    e.rhs = std::move(b);
    return make(std::move(e));
}
ExprPtr negate(ExprPtr a) {
    Expr e;
    e.op = Expr::Op::Neg;
    e.lhs = std::move(a);
    return make(std::move(e));
}

// Either a scalar or a sum of scalar * basis-monomial terms.
struct Value {
    bool scalar = true;
    ExprPtr s;
    std::vector<FormTerm> terms;
};

class Parser {
public:
    explicit Parser(std::string_view text) : src_(text), toks_(tokenize(text)) {}

    Value sum() {
        Value v;
        bool neg = false;
        if (peek(Tok::Plus) || peek(Tok::Minus)) neg = next().kind == Tok::Minus;
        v = product();
        if (neg) v = negated(v);
        while (peek(Tok::Plus) || peek(Tok::Minus)) {
            bool minus = next().kind == Tok::Minus;
            Value r = product();
            v = add(v, minus ? negated(r) : r);
        }
        return v;
    }

    ExprPtr scalar_sum() {
        Value v = sum();
        if (!v.scalar) fail("basis form where a scalar was expected");
        return v.s;
    }

    bool peek(Tok k) const { return toks_[pos_].kind == k; }
    const Token& current() const { return toks_[pos_]; }
    Token next() { return toks_[pos_++]; }
    void expect(Tok k, const char* what) {
        if (!peek(k)) fail(std::string("expected ") + what);
        ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at position " + std::to_string(toks_[pos_].pos) + " in '" + std::string(src_) + "'");
    }

private:
    bool starts_factor() const {
        return peek(Tok::Num) || peek(Tok::Ident) || peek(Tok::Basis) || peek(Tok::LParen);
    }

    Value product() {
        Value v = power();
        for (;;) {
            if (peek(Tok::Star)) {
                next();
                v = mul(v, power());
            } else if (peek(Tok::Slash)) {
                next();
                Value d = power();
                if (!d.scalar) fail("division by a basis form");
                v = div(v, d.s);
            } else if (starts_factor()) {
                v = mul(v, power());  // implicit product, e.g. 2e15
            } else {
                return v;
            }
        }
    }

    Value power() {
        Value v = atom();
        if (peek(Tok::Caret)) {
            next();
            if (!peek(Tok::Num)) fail("expected integer exponent");
            unsigned p = static_cast<unsigned>(std::stoul(next().text));
            if (!v.scalar) fail("power of a basis form");
            Expr e;
            e.op = Expr::Op::Pow;
            e.lhs = v.s;
            e.power = p;
            v.s = make(std::move(e));
        }
        return v;
    }

    Value atom() {
        Value v;
        if (peek(Tok::Num)) {
            v.s = num(parse_rational(next().text));
        } else if (peek(Tok::Ident)) {
            std::string id = next().text;
            Expr e;
            if (id.rfind("sqrt", 0) == 0 && id.size() > 4 &&
                id.find_first_not_of("0123456789", 4) == std::string::npos) {
                e.op = Expr::Op::Sqrt;
                e.radicand = std::stoi(id.substr(4));
            } else {
                e.op = Expr::Op::Param;
                e.name = id;
            }
            v.s = make(std::move(e));
        } else if (peek(Tok::Basis)) {
            std::string digits = next().text;
            FormTerm t;
            t.coeff = num(1);
            for (char c : digits) t.indices.push_back(c - '0');
            v.scalar = false;
            v.terms.push_back(std::move(t));
        } else if (peek(Tok::LParen)) {
            next();
            v = sum();
            expect(Tok::RParen, "')'");
        } else if (peek(Tok::Minus)) {
            next();
            v = negated(atom());
        } else {
            fail("expected a term");
        }
        return v;
    }

    static Value negated(Value v) {
        if (v.scalar) v.s = negate(v.s);
        else
            for (auto& t : v.terms) t.coeff = negate(t.coeff);
        return v;
    }

    Value add(Value a, const Value& b) {
        if (a.scalar && b.scalar) {
            a.s = binary(Expr::Op::Add, a.s, b.s);
            return a;
        }
        if (a.scalar || b.scalar) fail("sum mixes scalars and basis forms");
        a.terms.insert(a.terms.end(), b.terms.begin(), b.terms.end());
        return a;
    }

    Value mul(Value a, const Value& b) {
        if (a.scalar && b.scalar) {
            a.s = binary(Expr::Op::Mul, a.s, b.s);
            return a;
        }
        if (!a.scalar && !b.scalar) fail("product of two basis forms");
        const Value& sc = a.scalar ? a : b;
        Value f = a.scalar ? b : a;
        for (auto& t : f.terms) t.coeff = binary(Expr::Op::Mul, sc.s, t.coeff);
        return f;
    }

    static Value div(Value a, const ExprPtr& d) {
        if (a.scalar) a.s = binary(Expr::Op::Div, a.s, d);
        else
            for (auto& t : a.terms) t.coeff = binary(Expr::Op::Div, t.coeff, d);
        return a;
    }

    std::string_view src_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

FormExpr to_form_expr(const Value& v, Parser& p) {
    FormExpr f;
    if (v.scalar) {
        // only a literal zero may stand for the zero form
        Quadratic z;
        try {
            z = evaluate(*v.s, {});
        } catch (const Error&) {
            p.fail("scalar where a form was expected");
        }
        if (!z.is_zero()) p.fail("scalar where a form was expected");
        return f;
    }
    f.terms = v.terms;
    return f;
}

}  // namespace

ExprPtr parse_scalar(std::string_view text) {
    Parser p(text);
    ExprPtr e = p.scalar_sum();
    if (!p.peek(Tok::End)) p.fail("trailing input");
    return e;
}

Quadratic evaluate(const Expr& e, const Bindings& env) {
    switch (e.op) {
        case Expr::Op::Num: return e.num;
        case Expr::Op::Param: {
            auto it = env.find(e.name);
            if (it == env.end()) throw DomainError("unbound parameter '" + e.name + "'");
            return it->second;
        }
        case Expr::Op::Sqrt: {
            Rational r;
            if (rational_sqrt(Rational(e.radicand), r)) return r;
            return Quadratic::sqrt_of(e.radicand);
        }
        case Expr::Op::Add: return evaluate(*e.lhs, env) + evaluate(*e.rhs, env);
        case Expr::Op::Sub: return evaluate(*e.lhs, env) - evaluate(*e.rhs, env);
        case Expr::Op::Mul: return evaluate(*e.lhs, env) * evaluate(*e.rhs, env);
        case Expr::Op::Div: {
            Quadratic d = evaluate(*e.rhs, env);
            if (d.is_zero()) throw DomainError("division by zero in '" + to_string(e) + "'");
            return evaluate(*e.lhs, env) / d;
        }
        case Expr::Op::Neg: return -evaluate(*e.lhs, env);
        case Expr::Op::Pow: {
            Quadratic b = evaluate(*e.lhs, env), r(1);
            for (unsigned k = 0; k < e.power; ++k) r *= b;
            return r;
        }
    }
    return {};
}

void collect_parameters(const Expr& e, std::set<std::string>& out) {
    if (e.op == Expr::Op::Param) out.insert(e.name);
    if (e.lhs) collect_parameters(*e.lhs, out);
    if (e.rhs) collect_parameters(*e.rhs, out);
}

std::string to_string(const Expr& e) {
    switch (e.op) {
        case Expr::Op::Num: return to_string(e.num);
        case Expr::Op::Param: return e.name;
        case Expr::Op::Sqrt: return "sqrt" + std::to_string(e.radicand);
        case Expr::Op::Add: return "(" + to_string(*e.lhs) + " + " + to_string(*e.rhs) + ")";
        case Expr::Op::Sub: return "(" + to_string(*e.lhs) + " - " + to_string(*e.rhs) + ")";
        case Expr::Op::Mul: return to_string(*e.lhs) + "*" + to_string(*e.rhs);
        case Expr::Op::Div: return to_string(*e.lhs) + "/" + to_string(*e.rhs);
        case Expr::Op::Neg: return "-" + to_string(*e.lhs);
        case Expr::Op::Pow: return to_string(*e.lhs) + "^" + std::to_string(e.power);
    }
    return {};
}

std::set<std::string> FormExpr::parameters() const {
    std::set<std::string> s;
    for (const auto& t : terms) collect_parameters(*t.coeff, s);
    return s;
}

bool FormExpr::has_degree(int k) const {
    for (const auto& t : terms)
        if (static_cast<int>(t.indices.size()) != k) return false;
    return true;
}

int FormExpr::max_index() const {
    int m = 0;
    for (const auto& t : terms)
        for (int i : t.indices) m = std::max(m, i);
    return m;
}

FormExpr parse_form(std::string_view text) {
    Parser p(text);
    Value v = p.sum();
    if (!p.peek(Tok::End)) p.fail("trailing input");
    return to_form_expr(v, p);
}

Form<Quadratic> evaluate(const FormExpr& f, int n, const Bindings& env) {
    Form<Quadratic> out(n);
    for (const auto& t : f.terms) {
        for (int i : t.indices)
            if (i < 1 || i > n) throw ParseError("index " + std::to_string(i) + " out of range 1.." + std::to_string(n));
        out += Form<Quadratic>::basis(n, t.indices, evaluate(*t.coeff, env));
    }
    return out;
}

Form<Rational> evaluate_rational(const FormExpr& f, int n, const Bindings& env) {
    Form<Rational> out(n);
    Form<Quadratic> q = evaluate(f, n, env);
    for (const auto& [m, c] : q.terms()) out.add(m, c.to_rational());
    return out;
}

std::vector<FormExpr> parse_tuple(std::string_view text) {
    Parser p(text);
    p.expect(Tok::LParen, "'('");
    std::vector<FormExpr> out;
    for (;;) {
        Value v = p.sum();
        FormExpr f = to_form_expr(v, p);
        for (const auto& t : f.terms)
            if (t.indices.size() != 2)
                throw ParseError("entry " + std::to_string(out.size() + 1) + " has a term with " +
                                 std::to_string(t.indices.size()) + " indices; structure equations need exactly two");
        out.push_back(std::move(f));
        if (p.peek(Tok::Comma)) {
            p.next();
            continue;
        }
        p.expect(Tok::RParen, "',' or ')'");
        break;
    }
    if (!p.peek(Tok::End)) p.fail("trailing input");
    return out;
}

bool Constraint::holds(const Bindings& env) const {
    for (std::size_t i = 0; i < ops.size(); ++i) {
        int s = (evaluate(*sides[i], env) - evaluate(*sides[i + 1], env)).sign();
        bool ok = false;
        switch (ops[i]) {
            case Cmp::Lt: ok = s < 0; break;
            case Cmp::Le: ok = s <= 0; break;
            case Cmp::Gt: ok = s > 0; break;
            case Cmp::Ge: ok = s >= 0; break;
            case Cmp::Eq: ok = s == 0; break;
            case Cmp::Ne: ok = s != 0; break;
        }
        if (!ok) return false;
    }
    return true;
}

Constraint parse_constraint(std::string_view text) {
    Constraint c;
    c.text = std::string(text);
    Parser p(text);
    c.sides.push_back(p.scalar_sum());
    while (p.peek(Tok::Cmp)) {
        std::string op = p.next().text;
        if (op == "<") c.ops.push_back(Constraint::Cmp::Lt);
        else if (op == "<=") c.ops.push_back(Constraint::Cmp::Le);
        else if (op == ">") c.ops.push_back(Constraint::Cmp::Gt);
        else if (op == ">=") c.ops.push_back(Constraint::Cmp::Ge);
        else if (op == "==") c.ops.push_back(Constraint::Cmp::Eq);
        else c.ops.push_back(Constraint::Cmp::Ne);
        c.sides.push_back(p.scalar_sum());
    }
    if (c.ops.empty()) p.fail("expected a comparison");
    if (!p.peek(Tok::End)) p.fail("trailing input");
    return c;
}

}  // namespace shf
