#pragma once

// Modified Leslie-Gower predator-prey model with Holling type II prey uptake.
//
//   u' = u (1 - u) - a u v / (u + e1)
//   v' = eps v (1 - v / (u + e2))
//
// The prey nullcline away from u = 0 is v = g(u) = (1/a)(1 - u)(u + e1).

#include <optional>
#include <string>
#include <vector>

#include "canardlab/types.hpp"

namespace canardlab {

inline constexpr double kDefaultMargin = 0.10;

/// Dimensional rates and capacities.
struct RawParams {
    double r1 = 0.0;  ///< prey growth rate
    double r2 = 0.0;  ///< predator growth rate
    double a1 = 0.0;
    double a2 = 0.0;
    double b1 = 0.0;  ///< prey intra-specific competition
    double k1 = 0.0;
    double k2 = 0.0;
};

/// Nondimensional parameter set.  Construct through `make`, which enforces
/// positivity and e1 < 1; the regime assumptions are checked by `validate`.
struct ModelParams {
    double a = 0.0;
    double e1 = 0.0;
    double e2 = 0.0;
    double eps = 0.0;

    static ModelParams make(double a, double e1, double e2, double eps);
};

struct FixedPoints {
    Vec2 p1;  // (0, 0)
    Vec2 p2;  // (0, e2)
    Vec2 p3;  // (1, 0)
    Vec2 p4;  // (u*, g(u*))
};

struct AssumptionCheck {
    std::string name;
    bool passed = false;
    double lhs = 0.0;
    double rhs = 0.0;
    /// rhs·(1 - margin) - lhs; negative when the assumption fails.
    double slack = 0.0;
};

struct ValidationReport {
    double margin = kDefaultMargin;
    std::vector<AssumptionCheck> checks;
    std::optional<double> u_star;
    bool passed = false;

    std::string to_string() const;
};

ModelParams nondimensionalize(const RawParams& raw);

/// Time rescaling t' = r1 t and the state map (x, y) -> (u, v).
Vec2 to_nondimensional_state(const RawParams& raw, const Vec2& xy);
double to_nondimensional_time(const RawParams& raw, double t);

Vec2 vector_field(const ModelParams& p, const Vec2& state);

/// Same field in log-prey coordinates (w = ln u, v); exact on u > 0.
Vec2 vector_field_log_prey(const ModelParams& p, const Vec2& wv);

double g(const ModelParams& p, double u);
double g_prime(const ModelParams& p, double u);

/// Root in (0, 1) of u^2 + (a + e1 - 1) u + (a e2 - e1) = 0.
/// Throws ValidationError unless a·e2 <= (1 - margin)·e1.
double interior_equilibrium(const ModelParams& p, double margin = kDefaultMargin);

FixedPoints fixed_points(const ModelParams& p, double margin = kDefaultMargin);

ValidationReport validate(const ModelParams& p, double margin = kDefaultMargin);

/// Throws ValidationError carrying the report text if validation fails.
void require_valid(const ModelParams& p, double margin = kDefaultMargin);

}  // namespace canardlab
