#pragma once

// Reference computations kept independent of the library: a fixed-step
// classical RK4 and hand-written fields.

#include <array>
#include <cmath>
#include <functional>

namespace oracle {

using State = std::array<double, 2>;
using Rhs = std::function<State(const State&)>;

inline State rk4(const Rhs& f, State y, double t_span, long n) {
    const double h = t_span / static_cast<double>(n);
    for (long i = 0; i < n; ++i) {
        const State k1 = f(y);
        const State k2 = f({y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]});
        const State k3 = f({y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]});
        const State k4 = f({y[0] + h * k3[0], y[1] + h * k3[1]});
        y[0] += h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
        y[1] += h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
    }
    return y;
}

struct Raw {
    double r1, r2, a1, a2, b1, k1, k2;
};

/// The dimensional predator-prey system in (x, y).
inline State raw_field(const Raw& p, const State& s) {
    const double x = s[0], y = s[1];
    return {(p.r1 - p.b1 * x - p.a1 * y / (x + p.k1)) * x, (p.r2 - p.a2 * y / (x + p.k2)) * y};
}

inline double logistic(double u0, double t) { return 1.0 / (1.0 + (1.0 / u0 - 1.0) * std::exp(-t)); }

}  // namespace oracle
