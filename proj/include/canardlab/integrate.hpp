#pragma once

// Adaptive explicit Runge-Kutta integration for planar fields.
//
// Dormand-Prince 5(4) with local extrapolation, a PI step-size controller
// and the fourth-order continuous extension, so every trajectory can be
// evaluated between its nodes and section crossings can be located inside
// a step.

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "canardlab/types.hpp"

namespace canardlab {

using Field = std::function<Vec2(double t, const Vec2& y)>;

enum class Method { DormandPrince54 };

struct IntegratorConfig {
    double rtol = 1e-9;
    Vec2 atol{1e-12, 1e-10};
    double max_step = std::numeric_limits<double>::infinity();
    long max_steps = 100'000'000;
    Method method = Method::DormandPrince54;
    /// 0 selects the initial step automatically.
    double initial_step = 0.0;

    void check() const;
};

/// One accepted step with its continuous-extension coefficients.
struct DenseStep {
    double t0 = 0.0;
    double h = 0.0;
    std::array<Vec2, 5> coeff{};

    Vec2 operator()(double t) const;
};

class Trajectory {
public:
    Trajectory() = default;
    Trajectory(double t0, const Vec2& y0);

    std::span<const double> times() const { return t_; }
    std::span<const Vec2> states() const { return y_; }
    std::span<const DenseStep> steps() const { return dense_; }
    std::size_t size() const { return t_.size(); }
    bool empty() const { return t_.empty(); }

    double t_begin() const { return t_.front(); }
    double t_end() const { return t_.back(); }
    const Vec2& front() const { return y_.front(); }
    const Vec2& back() const { return y_.back(); }

    /// Dense evaluation; returns stored states exactly at node times.
    Vec2 operator()(double t) const;

    void append(const DenseStep& step, double t1, const Vec2& y1);

private:
    std::vector<double> t_;
    std::vector<Vec2> y_;
    std::vector<DenseStep> dense_;
};

/// Single-trajectory adaptive stepper.  Not copyable across threads while stepping.
class Stepper {
public:
    Stepper(Field field, const Vec2& y0, double t0, double t_end, const IntegratorConfig& cfg);

    /// Advances by one accepted step.  Returns false once t_end has been reached.
    bool advance();

    double t() const { return t_; }
    const Vec2& y() const { return y_; }
    const DenseStep& last_step() const { return last_; }
    long steps_taken() const { return n_steps_; }
    long rejections() const { return n_rejected_; }

private:
    Field field_;
    IntegratorConfig cfg_;
    double t_;
    double t_end_;
    Vec2 y_;
    Vec2 k1_;
    double h_;
    double err_old_ = 1e-4;
    bool last_rejected_ = false;
    long n_steps_ = 0;
    long n_rejected_ = 0;
    DenseStep last_;

    double initial_step() const;
};

Trajectory integrate(const Field& field, const Vec2& y0, double t0, double t1, const IntegratorConfig& cfg = {});

/// Classical fixed-step integration with the fifth-order Dormand-Prince solution.
Vec2 integrate_fixed(const Field& field, const Vec2& y0, double t0, double t1, long n_steps);

enum class Axis { U = 0, V = 1 };
enum class Direction { Up, Down, Both };

struct Section {
    Axis axis = Axis::V;
    double level = 0.0;
    Direction direction = Direction::Both;
};

struct SectionHit {
    double t = 0.0;
    Vec2 state{};
    Trajectory trajectory;  ///< ends at the crossing
};

/// Locates the first crossing of `section` in the given direction within
/// [t0, t_max] (strictly after t0).  The crossing is refined on the dense
/// output until |state[axis] - level| < 1e-13 or the time bracket shrinks to
/// rounding level.  A start within 1e-10·max(1, |level|) of the section
/// is not a crossing; the orbit has to leave that band first.  Throws
/// NoCrossingError.
SectionHit integrate_to_section(const Field& field, const Vec2& y0, const Section& section, double t0,
                                double t_max, const IntegratorConfig& cfg = {});

/// Crossing test and refinement for one accepted step; exposed for reuse by
/// callers that drive a Stepper themselves.
bool find_crossing(const DenseStep& step, const Vec2& y0, const Vec2& y1, const Section& section, double& t_cross,
                   Vec2& state);

/// Integrates with the quadrant guard: if u dips below -10·atol_u the run
/// is repeated with atol_u/10, at most three times, then NumericalError.
Trajectory integrate_in_quadrant(const Field& field, const Vec2& y0, double t0, double t1, IntegratorConfig cfg);

}  // namespace canardlab
