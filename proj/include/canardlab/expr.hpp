#pragma once

// Arithmetic expressions over named real variables: literals, variables,
// unary minus, + - * / and right-associative ^.  No function calls.
//
// Precedence, tightest first: ^, unary -, * /, + -.  So -u^2 is -(u^2)
// and 2^-1 is 2^(-1).

#include <cmath>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "canardlab/error.hpp"

namespace canardlab {

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum class Kind { Number, Variable, Negate, Add, Sub, Mul, Div, Pow };

    Kind kind = Kind::Number;
    double value = 0.0;  // Number
    std::string name;    // Variable
    int slot = -1;       // Variable, after bind_variables()
    Expr lhs;            // operand for Negate
    Expr rhs;
};

Expr parse(std::string_view text, int first_line = 1);

/// Fully parenthesized text with 17-digit literals; parse(print(e)) evaluates identically.
std::string print(const Expr& e);

/// Names of all variables referenced by `e`, sorted and unique.
std::vector<std::string> variables(const Expr& e);

/// Returns a copy of `e` whose variables carry indices into `names`.
/// Throws DomainError for a variable absent from `names`.
Expr bind_variables(const Expr& e, std::span<const std::string> names);

/// Forward-mode dual number: value and derivative along one seeded direction.
struct Dual {
    double value = 0.0;
    double deriv = 0.0;
};

inline Dual operator+(Dual a, Dual b) { return {a.value + b.value, a.deriv + b.deriv}; }
inline Dual operator-(Dual a, Dual b) { return {a.value - b.value, a.deriv - b.deriv}; }
inline Dual operator-(Dual a) { return {-a.value, -a.deriv}; }
inline Dual operator*(Dual a, Dual b) { return {a.value * b.value, a.value * b.deriv + a.deriv * b.value}; }
inline Dual operator/(Dual a, Dual b) {
    const double q = a.value / b.value;
    return {q, (a.deriv - q * b.deriv) / b.value};
}

double power(double base, double exponent);
Dual power(Dual base, Dual exponent);

namespace detail {
inline double negate(double x) { return -x; }
inline Dual negate(Dual x) { return -x; }
}  // namespace detail

/// Evaluates a bound expression with slot values taken from `slots`.
template <class T>
T evaluate(const ExprNode& n, std::span<const T> slots) {
    using K = ExprNode::Kind;
    switch (n.kind) {
        case K::Number: return T{n.value};
        case K::Variable: return slots[static_cast<std::size_t>(n.slot)];
        case K::Negate: return detail::negate(evaluate(*n.lhs, slots));
        case K::Add: return evaluate(*n.lhs, slots) + evaluate(*n.rhs, slots);
        case K::Sub: return evaluate(*n.lhs, slots) - evaluate(*n.rhs, slots);
        case K::Mul: return evaluate(*n.lhs, slots) * evaluate(*n.rhs, slots);
        case K::Div: return evaluate(*n.lhs, slots) / evaluate(*n.rhs, slots);
        case K::Pow: return power(evaluate(*n.lhs, slots), evaluate(*n.rhs, slots));
    }
    return T{};
}

using Environment = std::map<std::string, double, std::less<>>;

/// Throws DomainError on an unbound variable.  Division by zero yields inf/nan.
double eval(const Expr& e, const Environment& env);

/// Derivative of `e` with respect to variable `wrt`, by dual-number evaluation.
double derivative(const Expr& e, const Environment& env, std::string_view wrt);

inline double d_du(const Expr& e, const Environment& env) { return derivative(e, env, "u"); }
inline double d_dv(const Expr& e, const Environment& env) { return derivative(e, env, "v"); }

}  // namespace canardlab
