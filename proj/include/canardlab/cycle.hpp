#pragma once

// Limit-cycle detection through the first-return map on
// V = {u > 0, v = e1/a + α} (downward crossings), and the measurements
// taken on the cycle: crossing constant, descent depth below P, distance
// to the singular cycle, and the study of that distance as eps -> 0.
//
// Along the attracting axis branch u decays like exp(-c/eps), which
// leaves double range for eps ~ 1e-4.  All cycle work is therefore done in
// log-prey coordinates (w = ln u, v); u is recovered as exp(w) and may
// underflow to 0 in reported samples while ln u stays exact.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "canardlab/gspt.hpp"
#include "canardlab/integrate.hpp"
#include "canardlab/model.hpp"

namespace canardlab {

struct CycleConfig {
    /// atol[0] applies to ln u, i.e. it is a relative tolerance on u.
    IntegratorConfig integrator{1e-10, {1e-12, 1e-12}};
    /// Convergence when successive crossings satisfy |Δ ln u| < tolerance.
    double tolerance = 1e-9;
    int max_returns = 500;
    std::size_t min_samples = 4096;
    /// Time allowed per return, in units of 1/eps.
    double return_horizon = 100.0;
};

struct CycleSample {
    double t = 0.0;
    double u = 0.0;
    double v = 0.0;
    double ln_u = 0.0;
};

struct LimitCycle {
    double eps = 0.0;
    double alpha = 0.0;
    double period = 0.0;
    double section_level = 0.0;  ///< e1/a + α
    double ln_u_cross = 0.0;     ///< ln u at the downward crossing of V
    double u_cross = 0.0;        ///< exp(ln_u_cross); may underflow to 0
    int returns = 0;             ///< Poincaré iterations used
    std::vector<double> separations;  ///< |Δ ln u| between successive returns
    std::vector<CycleSample> samples; ///< one period, starting and ending on V

    std::vector<Vec2> curve() const;
};

struct PoincareReturn {
    double time = 0.0;
    Vec2 point{};  ///< (ln u, v) on the section
    Trajectory trajectory;  ///< in (ln u, v)
};

Section cycle_section(const ModelParams& p, double alpha);

/// First return of a point (ln u, v) to the downward section.  Throws
/// NoCrossingError if the orbit does not return within the horizon.
PoincareReturn poincare_map(const ModelParams& p, const Section& section, const Vec2& log_point,
                            const CycleConfig& cfg = {});

/// Iterates the return map from (0.5, e1/a + α + 0.1) until converged and
/// records one period.  Throws NotConvergedError with the separations.
LimitCycle find_limit_cycle(const ModelParams& p, double alpha = 0.0, const CycleConfig& cfg = {});

/// u_cross / eps.  Underflows to 0 when u_cross does; see ln_crossing_k.
double crossing_k(const LimitCycle& cycle);
double ln_crossing_k(const LimitCycle& cycle);

struct Descent {
    double v_fiber = 0.0;  ///< v where du/dt along the cycle is maximal with u < 0.1
    double depth = 0.0;    ///< e1/a - v_fiber
};

Descent descent_depth(const ModelParams& p, const LimitCycle& cycle);

/// Crossing constant implied by the measured fiber through the exit formula:
/// -c2 / (c1 D).
double fiber_k(const ModelParams& p, const LimitCycle& cycle);

/// Largest v-extent of a contiguous sub-arc with u < u_threshold and
/// v_low < v < v_high.  The threshold is given as its logarithm.
double canard_arc_extent(const LimitCycle& cycle, double ln_u_threshold, double v_low, double v_high);

/// Symmetric Hausdorff distance between polylines, from the vertices of
/// each to the segments of the other.  Densify first for a bound on the
/// distance from interior points: the error is at most half the spacing.
double hausdorff(std::span<const Vec2> a, std::span<const Vec2> b);
double directed_hausdorff(std::span<const Vec2> from, std::span<const Vec2> to);

std::vector<Vec2> densify(std::span<const Vec2> polyline, double max_spacing);

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b);

struct ConvergenceRow {
    double eps = 0.0;
    double distance = 0.0;  ///< Hausdorff distance to γ'
    double k_hat = 0.0;     ///< u_cross/eps (crossing_k)
    double ln_k_hat = 0.0;
    double descent = 0.0;   ///< D̂
    double k_fiber = 0.0;   ///< -c2/(c1 D̂)
    double period = 0.0;
};

struct ConvergenceStudy {
    double alpha = 0.0;
    std::vector<ConvergenceRow> rows;  ///< in the order of eps_list
    double reference_k = 0.0;          ///< k used for γ' (fiber_k at the smallest eps)
    SingularCycle reference;
    double slope = 0.0;  ///< least-squares slope of log d against log eps
    bool distances_decreasing = false;
    bool slope_in_band = false;  ///< slope in [0.6, 1.2]
    bool slope_flagged = false;  ///< slope < 0.9
};

struct StudyOptions {
    CycleConfig cycle;
    int parallel = 1;
    /// Spacing used to densify both curves before the Hausdorff distance.
    double hausdorff_spacing = 1e-4;
};

/// Needs at least 3 strictly decreasing eps values; rows follow that order.
ConvergenceStudy convergence_study(const ModelParams& p, double alpha, const std::vector<double>& eps_list,
                                   const StudyOptions& opt = {});

double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace canardlab
