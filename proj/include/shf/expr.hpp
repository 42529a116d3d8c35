#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "shf/form.hpp"
#include "shf/quadratic.hpp"

namespace shf {

using Bindings = std::map<std::string, Rational>;

// Scalar expression over rationals, named parameters and sqrt<d>.
struct Expr {
    enum class Op { Num, Param, Sqrt, Add, Sub, Mul, Div, Neg, Pow };
    Op op = Op::Num;
    Rational num;
    std::string name;
    int radicand = 0;
    unsigned power = 0;
    std::shared_ptr<const Expr> lhs, rhs;
};
using ExprPtr = std::shared_ptr<const Expr>;

ExprPtr parse_scalar(std::string_view text);
Quadratic evaluate(const Expr& e, const Bindings& env);
void collect_parameters(const Expr& e, std::set<std::string>& out);
std::string to_string(const Expr& e);

// One term coeff * e^{i1 i2 ...} of a form written in index shorthand.
struct FormTerm {
    ExprPtr coeff;
    std::vector<int> indices;  // as written, possibly unsorted
};

struct FormExpr {
    std::vector<FormTerm> terms;  // empty means the zero form

    std::set<std::string> parameters() const;
    // every term has exactly k indices (vacuous for the zero form)
    bool has_degree(int k) const;
    int max_index() const;
};

FormExpr parse_form(std::string_view text);
Form<Quadratic> evaluate(const FormExpr& f, int n, const Bindings& env);
Form<Rational> evaluate_rational(const FormExpr& f, int n, const Bindings& env);

// "(de1, de2, ...)" with every term of degree two
std::vector<FormExpr> parse_tuple(std::string_view text);

// chained comparison such as "0 < a < 2", "a*b != 0", "s^2 == 1"
struct Constraint {
    enum class Cmp { Lt, Le, Gt, Ge, Eq, Ne };
    std::string text;
    std::vector<ExprPtr> sides;
    std::vector<Cmp> ops;

    bool holds(const Bindings& env) const;
};

Constraint parse_constraint(std::string_view text);

}  // namespace shf
