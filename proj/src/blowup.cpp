#include "canardlab/blowup.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "canardlab/error.hpp"

namespace canardlab {

BlowupConstants blowup_constants(const ModelParams& p) {
    return {(1.0 - p.e1) / p.e1, p.e1 / p.a * (1.0 - p.e1 / (p.a * p.e2))};
}

LocalState to_local(const ModelParams& p, const Vec2& uv) { return {uv[0], uv[1] - p.e1 / p.a}; }

Vec2 from_local(const ModelParams& p, const LocalState& xy) { return {xy.x, p.e1 / p.a + xy.y}; }

ChartK2State to_chart_k2(const LocalState& xy, double eps) {
    if (!(eps > 0.0)) throw DomainError("chart K2 needs eps > 0");
    const double r = std::cbrt(eps);
    return {xy.x / r, xy.y / (r * r), r};
}

LocalState from_chart_k2(const ChartK2State& s) {
    if (!(s.r2 >= 0.0)) throw DomainError("chart K2 needs r2 >= 0");
    return {s.r2 * s.x2, s.r2 * s.r2 * s.y2};
}

Vec2 local_field(const ModelParams& p, const LocalState& xy, double eps, LocalOrder order) {
    if (order == LocalOrder::Full) {
        const Vec2 f = vector_field(ModelParams{p.a, p.e1, p.e2, eps}, from_local(p, xy));
        return f;
    }
    if (!(std::abs(xy.x) < p.e1)) throw DomainError("second-order local field needs |x| < e1");
    const BlowupConstants bc = blowup_constants(p);
    const double x = xy.x;
    const double y = xy.y;
    const double ratio = p.e1 / (p.a * p.e2);
    return {bc.c1 * x * x - p.a / p.e1 * x * y, eps * (bc.c2 + ratio * ratio * x + (1.0 - 2.0 * ratio) * y)};
}

Vec2 k2_field(const ModelParams& p, const Vec2& s, double r, LocalOrder order) {
    if (!(r >= 0.0)) throw DomainError("chart K2 needs r2 >= 0");
    const BlowupConstants bc = blowup_constants(p);
    const double x2 = s[0];
    const double y2 = s[1];
    if (r == 0.0) return {bc.c1 * x2 * x2, bc.c2};

    if (order == LocalOrder::Second) {
        const double ratio = p.e1 / (p.a * p.e2);
        return {bc.c1 * x2 * x2 - p.a / p.e1 * r * x2 * y2,
                bc.c2 + r * ratio * ratio * x2 + r * r * (1.0 - 2.0 * ratio) * y2};
    }

    const double x = r * x2;
    if (!(x + p.e1 > 0.0) || !(x + p.e2 > 0.0)) {
        char msg[128];
        std::snprintf(msg, sizeof msg, "chart point x = r2*x2 = %.6g reaches a pole of the field", x);
        throw DomainError(msg);
    }
    // F(x, y)/r^2 with the common factor x r^2 cancelled analytically:
    // F = x [x (1 - e1) - x^2 - a y] / (x + e1).
    const double fast = x2 * (x2 * (1.0 - p.e1) - r * x2 * x2 - p.a * r * y2) / (x + p.e1);
    const double v = p.e1 / p.a + r * r * y2;
    const double slow = v * (1.0 - v / (x + p.e2));
    return {fast, slow};
}

double k2_blowup_time(const ModelParams& p, double x2_0) {
    if (x2_0 <= 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / (blowup_constants(p).c1 * x2_0);
}

Vec2 k2_exact(const ModelParams& p, double x2_0, double y2_0, double t) {
    const BlowupConstants bc = blowup_constants(p);
    const double t_star = k2_blowup_time(p, x2_0);
    if (x2_0 > 0.0 && t >= t_star) throw BlowUpError(t_star);
    const double x2 = x2_0 == 0.0 ? 0.0 : 1.0 / (1.0 / x2_0 - bc.c1 * t);
    return {x2, y2_0 + bc.c2 * t};
}

double exit_value(const ModelParams& p, double x2_0, double y2_0) {
    if (!(x2_0 > 0.0)) throw DomainError("exit value needs x2(0) > 0");
    const BlowupConstants bc = blowup_constants(p);
    return y2_0 + bc.c2 / (bc.c1 * x2_0);
}

double predict_fiber(const ModelParams& p, double k, double alpha) {
    if (!(k > 0.0)) throw DomainError("k must be positive");
    const BlowupConstants bc = blowup_constants(p);
    return p.e1 / p.a + alpha + bc.c2 / (bc.c1 * k);
}

double k_from_descent(const ModelParams& p, double descent) {
    if (!(descent > 0.0)) throw DomainError("descent depth must be positive");
    const BlowupConstants bc = blowup_constants(p);
    return -bc.c2 / (bc.c1 * descent);
}

std::vector<K2Orbit> k2_orbit_family(const ModelParams& p, const std::vector<double>& x2_starts, double y2_0,
                                     const K2FamilyOptions& opt) {
    if (!(opt.r2 >= 0.0)) throw DomainError("chart K2 needs r2 >= 0");
    double x2_max = opt.x2_max;
    if (opt.r2 > 0.0) x2_max = std::min(x2_max, 1.0 / (2.0 * opt.r2));
    const Field field = [&p, r = opt.r2, order = opt.order](double, const Vec2& s) {
        return k2_field(p, s, r, order);
    };
    std::vector<K2Orbit> out;
    for (double x0 : x2_starts) {
        if (!(x0 > 0.0)) throw DomainError("orbit family needs x2(0) > 0");
        if (!(x0 < x2_max)) throw DomainError("x2(0) must lie below the stopping value");
        K2Orbit orbit;
        orbit.x2_0 = x0;
        orbit.y2_0 = y2_0;
        orbit.t_star = k2_blowup_time(p, x0);
        // For r2 = 0 the orbit reaches x2_max strictly before t*; for r2 > 0
        // allow a generous horizon in case the perturbed orbit is slower.
        const double horizon = opt.r2 == 0.0 ? orbit.t_star : 100.0 * orbit.t_star;
        const Section stop{Axis::U, x2_max, Direction::Up};
        orbit.trajectory = integrate_to_section(field, {x0, y2_0}, stop, 0.0, horizon, opt.integrator).trajectory;
        out.push_back(std::move(orbit));
    }
    return out;
}

}  // namespace canardlab
