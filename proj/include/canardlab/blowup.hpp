#pragma once

// Local analysis near the canard point P = (0, e1/a).
//
// Local coordinates: x = u, y = v - e1/a.  Blow-up chart K2 (ε̄ = 1):
// x = r x2, y = r^2 y2, ε = r^3, with time desingularized by r.

#include <vector>

#include "canardlab/integrate.hpp"
#include "canardlab/model.hpp"
#include "canardlab/types.hpp"

namespace canardlab {

struct BlowupConstants {
    double c1 = 0.0;  ///< (1 - e1)/e1
    double c2 = 0.0;  ///< (e1/a)(1 - e1/(a e2))
};

BlowupConstants blowup_constants(const ModelParams& p);

struct LocalState {
    double x = 0.0;
    double y = 0.0;
};

LocalState to_local(const ModelParams& p, const Vec2& uv);
Vec2 from_local(const ModelParams& p, const LocalState& xy);

struct ChartK2State {
    double x2 = 0.0;
    double y2 = 0.0;
    double r2 = 0.0;  ///< eps^(1/3)
};

ChartK2State to_chart_k2(const LocalState& xy, double eps);
LocalState from_chart_k2(const ChartK2State& s);

enum class LocalOrder {
    Second,  ///< normal form truncated after the quadratic terms
    Full,    ///< the exact translated field
};

/// Local field (x', y') at the given eps.  Second order requires |x| < e1.
Vec2 local_field(const ModelParams& p, const LocalState& xy, double eps, LocalOrder order);

/// Chart-K2 field in desingularized time.  `Full` is the exact pushforward
/// of the translated field; `Second` is the blow-up of the truncated normal
/// form, whose O(r2) terms are the explicit linear-in-(x, y) corrections.
/// At r2 = 0 both reduce exactly to (c1 x2^2, c2).
Vec2 k2_field(const ModelParams& p, const Vec2& x2y2, double r2, LocalOrder order = LocalOrder::Full);

/// Closed-form r2 = 0 orbit.  Throws BlowUpError for t >= 1/(c1 x2_0) when x2_0 > 0.
Vec2 k2_exact(const ModelParams& p, double x2_0, double y2_0, double t);

/// Blow-up time 1/(c1 x2_0), or +inf for x2_0 <= 0.
double k2_blowup_time(const ModelParams& p, double x2_0);

/// Limit of y2 as x2 -> +inf: y2_0 + c2/(c1 x2_0).  Requires x2_0 > 0.
double exit_value(const ModelParams& p, double x2_0, double y2_0);

/// v-level of the fast fiber taken after passing P with crossing constant k.
double predict_fiber(const ModelParams& p, double k, double alpha = 0.0);

/// Crossing constant implied by a measured descent depth D: k = -c2/(c1 D).
double k_from_descent(const ModelParams& p, double descent);

struct K2Orbit {
    double x2_0 = 0.0;
    double y2_0 = 0.0;
    double t_star = 0.0;  ///< blow-up time of the r2 = 0 orbit
    Trajectory trajectory;
};

struct K2FamilyOptions {
    double r2 = 0.0;
    LocalOrder order = LocalOrder::Full;
    /// Integration stops when x2 reaches this value.  For r2 > 0 it is
    /// capped at 1/(2 r2), i.e. original x = 1/2.
    double x2_max = 1e7;
    IntegratorConfig integrator{1e-12, {1e-14, 1e-14}};
};

/// Integrates the chart-K2 field from each (x2_0, y2_0).
std::vector<K2Orbit> k2_orbit_family(const ModelParams& p, const std::vector<double>& x2_starts, double y2_0,
                                     const K2FamilyOptions& opt);

}  // namespace canardlab
