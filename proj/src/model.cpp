#include "canardlab/model.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "canardlab/error.hpp"

namespace canardlab {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ValidationError(std::string("parameter '") + name + "' must be positive and finite");
    }
}

// Larger root of the interior-equilibrium quadratic, if it lies in (0, 1).
std::optional<double> solve_interior(const ModelParams& p) {
    const double b = p.a + p.e1 - 1.0;
    const double c = p.a * p.e2 - p.e1;
    const double disc = b * b - 4.0 * c;
    if (disc < 0.0) return std::nullopt;
    const double sq = std::sqrt(disc);
    // Avoid cancellation in -b + sq when b < 0 and c is small.
    double root = (b <= 0.0) ? (-b + sq) / 2.0 : (2.0 * -c) / (b + sq);
    if (!(root > 0.0 && root < 1.0)) return std::nullopt;
    return root;
}

bool holds(double lhs, double rhs, double margin) {
    return margin > 0.0 ? lhs <= (1.0 - margin) * rhs : lhs < rhs;
}

}  // namespace

ModelParams ModelParams::make(double a, double e1, double e2, double eps) {
    require_positive(a, "a");
    require_positive(e1, "e1");
    require_positive(e2, "e2");
    require_positive(eps, "eps");
    if (!(e1 < 1.0)) throw ValidationError("parameter 'e1' must be < 1");
    return ModelParams{a, e1, e2, eps};
}

ModelParams nondimensionalize(const RawParams& raw) {
    require_positive(raw.r1, "r1");
    require_positive(raw.r2, "r2");
    require_positive(raw.a1, "a1");
    require_positive(raw.a2, "a2");
    require_positive(raw.b1, "b1");
    require_positive(raw.k1, "k1");
    require_positive(raw.k2, "k2");
    return ModelParams::make(raw.a1 * raw.r2 / (raw.a2 * raw.r1),
                             raw.b1 * raw.k1 / raw.r1,
                             raw.b1 * raw.k2 / raw.r1,
                             raw.r2 / raw.r1);
}

Vec2 to_nondimensional_state(const RawParams& raw, const Vec2& xy) {
    return {raw.b1 / raw.r1 * xy[0], raw.a2 * raw.b1 / (raw.r1 * raw.r2) * xy[1]};
}

double to_nondimensional_time(const RawParams& raw, double t) { return raw.r1 * t; }

Vec2 vector_field(const ModelParams& p, const Vec2& s) {
    const double u = s[0];
    const double v = s[1];
    if (u + p.e1 == 0.0 || u + p.e2 == 0.0) {
        throw DomainError("vector field pole at u = -e1 or u = -e2");
    }
    return {u * (1.0 - u) - p.a * u * v / (u + p.e1), p.eps * v * (1.0 - v / (u + p.e2))};
}

Vec2 vector_field_log_prey(const ModelParams& p, const Vec2& wv) {
    const double u = std::exp(wv[0]);
    const double v = wv[1];
    return {(1.0 - u) - p.a * v / (u + p.e1), p.eps * v * (1.0 - v / (u + p.e2))};
}

double g(const ModelParams& p, double u) { return (1.0 - u) * (u + p.e1) / p.a; }

double g_prime(const ModelParams& p, double u) { return (1.0 - p.e1 - 2.0 * u) / p.a; }

double interior_equilibrium(const ModelParams& p, double margin) {
    if (!holds(p.a * p.e2, p.e1, margin)) {
        throw ValidationError("a*e2 is not below e1 by the required margin");
    }
    auto root = solve_interior(p);
    if (!root) throw ValidationError("no interior equilibrium in (0, 1)");
    return *root;
}

FixedPoints fixed_points(const ModelParams& p, double margin) {
    const double us = interior_equilibrium(p, margin);
    return FixedPoints{{0.0, 0.0}, {0.0, p.e2}, {1.0, 0.0}, {us, g(p, us)}};
}

ValidationReport validate(const ModelParams& p, double margin) {
    ValidationReport report;
    report.margin = margin;
    auto add = [&](std::string name, double lhs, double rhs, bool ok) {
        report.checks.push_back({std::move(name), ok, lhs, rhs, (1.0 - margin) * rhs - lhs});
    };
    const bool positive = p.a > 0 && p.e1 > 0 && p.e2 > 0 && p.eps > 0;
    add("e1 < 1", p.e1, 1.0, p.e1 < 1.0);
    report.checks.back().slack = 1.0 - p.e1;
    add("a*e2 < e1", p.a * p.e2, p.e1, holds(p.a * p.e2, p.e1, margin));
    if (auto root = solve_interior(p)) {
        report.u_star = *root;
        const double ubar = (1.0 - p.e1) / 2.0;
        add("u* < (1-e1)/2", *root, ubar, holds(*root, ubar, margin));
    } else {
        add("u* < (1-e1)/2", std::nan(""), (1.0 - p.e1) / 2.0, false);
    }
    report.passed = positive;
    for (const auto& c : report.checks) report.passed = report.passed && c.passed;
    return report;
}

void require_valid(const ModelParams& p, double margin) {
    const auto report = validate(p, margin);
    if (!report.passed) throw ValidationError("parameters outside the model regime:\n" + report.to_string());
}

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    char line[256];
    std::snprintf(line, sizeof line, "margin = %.3g\n", margin);
    os << line;
    for (const auto& c : checks) {
        std::snprintf(line, sizeof line, "%-16s %s  lhs=%.10g rhs=%.10g slack=%.3e\n", c.name.c_str(),
                      c.passed ? "PASS" : "FAIL", c.lhs, c.rhs, c.slack);
        os << line;
    }
    if (u_star) {
        std::snprintf(line, sizeof line, "u* = %.15g\n", *u_star);
        os << line;
    }
    os << (passed ? "overall: PASS" : "overall: FAIL") << '\n';
    return os.str();
}

}  // namespace canardlab
