#include "canardlab/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <set>

namespace canardlab {

namespace {

using K = ExprNode::Kind;

Expr make_number(double v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = K::Number;
    n->value = v;
    return n;
}

Expr make_variable(std::string name) {
    auto n = std::make_shared<ExprNode>();
    n->kind = K::Variable;
    n->name = std::move(name);
    return n;
}

Expr make_node(K kind, Expr lhs, Expr rhs = nullptr) {
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
}

class Parser {
public:
    Parser(std::string_view text, int first_line) : text_(text), line_(first_line) {}

    Expr parse_all() {
        skip_space();
        if (at_end()) fail("empty expression");
        Expr e = parse_sum();
        skip_space();
        if (!at_end()) {
            if (peek() == ')') fail("unmatched ')'");
            fail(std::string("unexpected character '") + peek() + "'");
        }
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_;
    std::size_t line_start_ = 0;

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    int column_at(std::size_t pos) const { return static_cast<int>(pos - line_start_) + 1; }

    [[noreturn]] void fail(const std::string& msg) const { fail_at(msg, line_, column_at(pos_)); }
    [[noreturn]] static void fail_at(const std::string& msg, int line, int column) {
        throw ParseError(msg, line, column);
    }

    void skip_space() {
        while (!at_end()) {
            const char c = peek();
            if (c == '\n') {
                ++pos_;
                ++line_;
                line_start_ = pos_;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++pos_;
            } else {
                break;
            }
        }
    }

    bool accept(char c) {
        skip_space();
        if (!at_end() && peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr parse_sum() {
        Expr lhs = parse_product();
        for (;;) {
            if (accept('+')) {
                lhs = make_node(K::Add, lhs, parse_product());
            } else if (accept('-')) {
                lhs = make_node(K::Sub, lhs, parse_product());
            } else {
                return lhs;
            }
        }
    }

    Expr parse_product() {
        Expr lhs = parse_unary();
        for (;;) {
            if (accept('*')) {
                lhs = make_node(K::Mul, lhs, parse_unary());
            } else if (accept('/')) {
                lhs = make_node(K::Div, lhs, parse_unary());
            } else {
                return lhs;
            }
        }
    }

    Expr parse_unary() {
        if (accept('-')) return make_node(K::Negate, parse_unary());
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_primary();
        if (accept('^')) return make_node(K::Pow, base, parse_unary());
        return base;
    }

    Expr parse_primary() {
        skip_space();
        if (at_end()) fail("unexpected end of expression");
        const char c = peek();
        if (c == '(') {
            const int open_line = line_;
            const int open_col = column_at(pos_);
            ++pos_;
            Expr inner = parse_sum_or_unclosed(open_line, open_col);
            if (!accept(')')) fail_at("unmatched '('", open_line, open_col);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            skip_space();
            if (!at_end() && peek() == '(') fail("function calls are not supported");
            return make_variable(std::move(name));
        }
        if (c == ')') fail("unexpected ')'");
        fail(std::string("unexpected character '") + c + "'");
    }

    // An expression inside parentheses; reports the open paren if input runs out.
    Expr parse_sum_or_unclosed(int open_line, int open_col) {
        skip_space();
        if (at_end()) fail_at("unmatched '('", open_line, open_col);
        return parse_sum();
    }

    Expr parse_number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
                ++pos_;
                ++n;
            }
            return n;
        };
        std::size_t n = digits();
        if (!at_end() && peek() == '.') {
            ++pos_;
            n += digits();
        }
        if (n == 0) fail("malformed number");
        if (!at_end() && (peek() == 'e' || peek() == 'E')) {
            const std::size_t mark = pos_;
            ++pos_;
            if (!at_end() && (peek() == '+' || peek() == '-')) ++pos_;
            if (digits() == 0) {
                pos_ = mark;
                fail("malformed exponent");
            }
        }
        const std::string literal(text_.substr(start, pos_ - start));
        return make_number(std::strtod(literal.c_str(), nullptr));
    }
};

void print_into(const ExprNode& n, std::string& out) {
    auto binary = [&](const char* op) {
        out += '(';
        print_into(*n.lhs, out);
        out += op;
        print_into(*n.rhs, out);
        out += ')';
    };
    switch (n.kind) {
        case K::Number: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", n.value);
            out += '(';
            out += buf;
            out += ')';
            return;
        }
        case K::Variable: out += n.name; return;
        case K::Negate:
            out += "(-";
            print_into(*n.lhs, out);
            out += ')';
            return;
        case K::Add: binary(" + "); return;
        case K::Sub: binary(" - "); return;
        case K::Mul: binary(" * "); return;
        case K::Div: binary(" / "); return;
        case K::Pow: binary(" ^ "); return;
    }
}

void collect(const ExprNode& n, std::set<std::string>& names) {
    if (n.kind == K::Variable) names.insert(n.name);
    if (n.lhs) collect(*n.lhs, names);
    if (n.rhs) collect(*n.rhs, names);
}

Expr bind_impl(const Expr& e, std::span<const std::string> names) {
    auto copy = std::make_shared<ExprNode>(*e);
    if (copy->kind == K::Variable) {
        auto it = std::find(names.begin(), names.end(), copy->name);
        if (it == names.end()) throw DomainError("unbound variable '" + copy->name + "'");
        copy->slot = static_cast<int>(it - names.begin());
    }
    if (copy->lhs) copy->lhs = bind_impl(copy->lhs, names);
    if (copy->rhs) copy->rhs = bind_impl(copy->rhs, names);
    return copy;
}

bool is_integer(double x) { return std::isfinite(x) && std::floor(x) == x; }

}  // namespace

Expr parse(std::string_view text, int first_line) { return Parser(text, first_line).parse_all(); }

std::string print(const Expr& e) {
    std::string out;
    print_into(*e, out);
    return out;
}

std::vector<std::string> variables(const Expr& e) {
    std::set<std::string> names;
    collect(*e, names);
    return {names.begin(), names.end()};
}

Expr bind_variables(const Expr& e, std::span<const std::string> names) { return bind_impl(e, names); }

double power(double base, double exponent) {
    if (base < 0.0 && !is_integer(exponent)) {
        throw DomainError("negative base raised to a non-integer power");
    }
    return std::pow(base, exponent);
}

Dual power(Dual base, Dual exponent) {
    const double value = power(base.value, exponent.value);
    double deriv = 0.0;
    if (base.deriv != 0.0) {
        if (exponent.value == 0.0) {
            deriv = 0.0;
        } else {
            deriv += exponent.value * power(base.value, exponent.value - 1.0) * base.deriv;
        }
    }
    if (exponent.deriv != 0.0) {
        if (base.value <= 0.0) throw DomainError("variable exponent requires a positive base");
        deriv += value * std::log(base.value) * exponent.deriv;
    }
    return {value, deriv};
}

double eval(const Expr& e, const Environment& env) {
    std::vector<std::string> names;
    std::vector<double> values;
    for (const auto& name : variables(e)) {
        auto it = env.find(name);
        if (it == env.end()) throw DomainError("unbound variable '" + name + "'");
        names.push_back(name);
        values.push_back(it->second);
    }
    const Expr bound = bind_variables(e, names);
    return evaluate<double>(*bound, values);
}

double derivative(const Expr& e, const Environment& env, std::string_view wrt) {
    std::vector<std::string> names;
    std::vector<Dual> values;
    for (const auto& name : variables(e)) {
        auto it = env.find(name);
        if (it == env.end()) throw DomainError("unbound variable '" + name + "'");
        names.push_back(name);
        values.push_back({it->second, name == wrt ? 1.0 : 0.0});
    }
    const Expr bound = bind_variables(e, names);
    return evaluate<Dual>(*bound, values).deriv;
}

}  // namespace canardlab
