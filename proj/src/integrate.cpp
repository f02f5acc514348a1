#include "canardlab/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "canardlab/error.hpp"

namespace canardlab {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
// Difference between the fifth- and fourth-order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// Continuous extension.
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

constexpr double kSafety = 0.9;
constexpr double kBeta = 0.04;
constexpr double kFacMin = 0.2;   // hnew >= h/5
constexpr double kFacMax = 10.0;  // hnew <= 10 h

bool finite(const Vec2& v) { return std::isfinite(v[0]) && std::isfinite(v[1]); }

struct StageResult {
    Vec2 y1;
    Vec2 k7;
    Vec2 err;
    std::array<Vec2, 7> k;
};

StageResult stages(const Field& f, double t, const Vec2& y, const Vec2& k1, double h) {
    StageResult r;
    auto& k = r.k;
    k[0] = k1;
    auto at = [&](auto... terms) {
        Vec2 out = y;
        for (int i = 0; i < 2; ++i) out[i] += h * (... + terms[i]);
        return out;
    };
    k[1] = f(t + c2 * h, at(a21 * k[0]));
    k[2] = f(t + c3 * h, at(a31 * k[0], a32 * k[1]));
    k[3] = f(t + c4 * h, at(a41 * k[0], a42 * k[1], a43 * k[2]));
    k[4] = f(t + c5 * h, at(a51 * k[0], a52 * k[1], a53 * k[2], a54 * k[3]));
    k[5] = f(t + h, at(a61 * k[0], a62 * k[1], a63 * k[2], a64 * k[3], a65 * k[4]));
    r.y1 = at(a71 * k[0], a73 * k[2], a74 * k[3], a75 * k[4], a76 * k[5]);
    k[6] = f(t + h, r.y1);
    r.k7 = k[6];
    for (int i = 0; i < 2; ++i) {
        r.err[i] = h * (e1 * k[0][i] + e3 * k[2][i] + e4 * k[3][i] + e5 * k[4][i] + e6 * k[5][i] + e7 * k[6][i]);
    }
    return r;
}

}  // namespace

void IntegratorConfig::check() const {
    if (!(rtol > 0.0) || !(atol[0] > 0.0) || !(atol[1] > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "integrator tolerances must be positive");
    }
    if (!(max_step > 0.0)) throw Error(ErrorCode::InvalidArgument, "max_step must be positive");
    if (max_steps <= 0) throw Error(ErrorCode::InvalidArgument, "max_steps must be positive");
}

Vec2 DenseStep::operator()(double t) const {
    const double th = (t - t0) / h;
    const double th1 = 1.0 - th;
    Vec2 out;
    for (int i = 0; i < 2; ++i) {
        out[i] = coeff[0][i] + th * (coeff[1][i] + th1 * (coeff[2][i] + th * (coeff[3][i] + th1 * coeff[4][i])));
    }
    return out;
}

Trajectory::Trajectory(double t0, const Vec2& y0) : t_{t0}, y_{y0} {}

void Trajectory::append(const DenseStep& step, double t1, const Vec2& y1) {
    t_.push_back(t1);
    y_.push_back(y1);
    dense_.push_back(step);
}

Vec2 Trajectory::operator()(double t) const {
    if (t_.empty()) throw Error(ErrorCode::InvalidArgument, "empty trajectory");
    if (t < t_.front() || t > t_.back()) throw DomainError("time outside the trajectory span");
    auto it = std::lower_bound(t_.begin(), t_.end(), t);
    const auto idx = static_cast<std::size_t>(it - t_.begin());
    if (*it == t) return y_[idx];
    return dense_[idx - 1](t);
}

Stepper::Stepper(Field field, const Vec2& y0, double t0, double t_end, const IntegratorConfig& cfg)
    : field_(std::move(field)), cfg_(cfg), t_(t0), t_end_(t_end), y_(y0) {
    cfg_.check();
    if (!(t_end >= t0)) throw Error(ErrorCode::InvalidArgument, "integration span must satisfy t1 >= t0");
    if (!finite(y0)) throw NumericalError("initial state is not finite");
    k1_ = field_(t_, y_);
    if (!finite(k1_)) throw NumericalError("field is not finite at the initial state");
    h_ = cfg_.initial_step > 0.0 ? cfg_.initial_step : initial_step();
}

double Stepper::initial_step() const {
    // Hairer, Norsett & Wanner, starting step heuristic.
    auto scaled_norm = [&](const Vec2& v, const Vec2& ref) {
        double s = 0.0;
        for (int i = 0; i < 2; ++i) {
            const double sk = cfg_.atol[i] + cfg_.rtol * std::abs(ref[i]);
            s += (v[i] / sk) * (v[i] / sk);
        }
        return std::sqrt(s / 2.0);
    };
    const double span = t_end_ - t_;
    if (span <= 0.0) return 0.0;
    const double dnf = scaled_norm(k1_, y_);
    const double dny = scaled_norm(y_, y_);
    double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * dny / dnf;
    h = std::min({h, cfg_.max_step, span});
    const Vec2 y1 = y_ + h * k1_;
    const Vec2 f1 = field_(t_ + h, y1);
    if (!finite(f1)) return h * 1e-3;
    const double der2 = scaled_norm(f1 - k1_, y_) / h;
    const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
    const double h1 = der12 <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der12, 0.2);
    return std::min({100.0 * h, h1, cfg_.max_step, span});
}

bool Stepper::advance() {
    if (t_ >= t_end_) return false;
    for (;;) {
        if (n_steps_ + n_rejected_ >= cfg_.max_steps) {
            throw NumericalError("maximum number of steps (" + std::to_string(cfg_.max_steps) + ") exceeded at t = " +
                                 std::to_string(t_));
        }
        double h = std::min(h_, cfg_.max_step);
        bool last = false;
        if (t_ + h >= t_end_ || t_ + 1.01 * h >= t_end_) {
            h = t_end_ - t_;
            last = true;
        }
        if (h < 1e-14 * std::abs(t_) || h <= std::numeric_limits<double>::denorm_min()) {
            char msg[256];
            std::snprintf(msg, sizeof msg,
                          "step size underflow (h = %.3e at t = %.17g): the problem is too stiff for the "
                          "explicit method at rtol = %.1e; loosen rtol or report the parameters",
                          h, t_, cfg_.rtol);
            throw NumericalError(msg);
        }

        const StageResult s = stages(field_, t_, y_, k1_, h);
        double err = 0.0;
        if (!finite(s.y1) || !finite(s.k7)) {
            err = std::numeric_limits<double>::infinity();
        } else {
            for (int i = 0; i < 2; ++i) {
                const double sk = cfg_.atol[i] + cfg_.rtol * std::max(std::abs(y_[i]), std::abs(s.y1[i]));
                err += (s.err[i] / sk) * (s.err[i] / sk);
            }
            err = std::sqrt(err / 2.0);
        }

        if (err <= 1.0) {
            // PI controller.
            const double fac11 = std::pow(err, 0.2 - kBeta * 0.75);
            double fac = fac11 / std::pow(err_old_, kBeta) / kSafety;
            fac = std::clamp(fac, 1.0 / kFacMax, 1.0 / kFacMin);
            double h_new = h / fac;
            if (last_rejected_) h_new = std::min(h_new, h);
            err_old_ = std::max(err, 1e-4);

            last_.t0 = t_;
            last_.h = h;
            const auto& k = s.k;
            for (int i = 0; i < 2; ++i) {
                const double ydiff = s.y1[i] - y_[i];
                const double bspl = h * k[0][i] - ydiff;
                last_.coeff[0][i] = y_[i];
                last_.coeff[1][i] = ydiff;
                last_.coeff[2][i] = bspl;
                last_.coeff[3][i] = ydiff - h * k[6][i] - bspl;
                last_.coeff[4][i] = h * (d1 * k[0][i] + d3 * k[2][i] + d4 * k[3][i] + d5 * k[4][i] + d6 * k[5][i] +
                                         d7 * k[6][i]);
            }
            t_ = last ? t_end_ : t_ + h;
            y_ = s.y1;
            k1_ = s.k7;
            if (!last) h_ = h_new;
            last_rejected_ = false;
            ++n_steps_;
            return true;
        }

        ++n_rejected_;
        last_rejected_ = true;
        if (!std::isfinite(err)) {
            h_ = h * 0.1;
        } else {
            const double fac11 = std::pow(err, 0.2 - kBeta * 0.75);
            h_ = h / std::min(1.0 / kFacMin, fac11 / kSafety);
        }
    }
}

Trajectory integrate(const Field& field, const Vec2& y0, double t0, double t1, const IntegratorConfig& cfg) {
    Stepper stepper(field, y0, t0, t1, cfg);
    Trajectory traj(t0, y0);
    while (stepper.advance()) traj.append(stepper.last_step(), stepper.t(), stepper.y());
    return traj;
}

Vec2 integrate_fixed(const Field& field, const Vec2& y0, double t0, double t1, long n_steps) {
    if (n_steps <= 0) throw Error(ErrorCode::InvalidArgument, "n_steps must be positive");
    const double h = (t1 - t0) / static_cast<double>(n_steps);
    Vec2 y = y0;
    Vec2 k1 = field(t0, y);
    for (long n = 0; n < n_steps; ++n) {
        const double t = t0 + static_cast<double>(n) * h;
        const StageResult s = stages(field, t, y, k1, h);
        y = s.y1;
        k1 = s.k7;
    }
    return y;
}

bool find_crossing(const DenseStep& step, const Vec2& y0, const Vec2& y1, const Section& section, double& t_cross,
                   Vec2& state) {
    const auto ax = static_cast<std::size_t>(section.axis);
    const double g0 = y0[ax] - section.level;
    const double g1 = y1[ax] - section.level;
    const bool down = g0 > 0.0 && g1 <= 0.0;
    const bool up = g0 < 0.0 && g1 >= 0.0;
    const bool hit = (section.direction == Direction::Down && down) || (section.direction == Direction::Up && up) ||
                     (section.direction == Direction::Both && (up || down));
    if (!hit) return false;

    const double ta = step.t0;
    const double tb = step.t0 + step.h;
    if (g1 == 0.0) {
        t_cross = tb;
        state = y1;
        return true;
    }
    // Illinois-modified regula falsi on the continuous extension.
    double a = ta, b = tb, fa = g0, fb = g1;
    int side = 0;
    double t = b;
    Vec2 y = y1;
    for (int iter = 0; iter < 200; ++iter) {
        t = (a * fb - b * fa) / (fb - fa);
        if (!(t > a && t < b)) t = 0.5 * (a + b);
        y = step(t);
        const double ft = y[ax] - section.level;
        if (std::abs(ft) < 1e-13 || b - a <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(b)) break;
        if ((ft > 0.0) == (fa > 0.0)) {
            a = t;
            fa = ft;
            if (side == -1) fb *= 0.5;
            side = -1;
        } else {
            b = t;
            fb = ft;
            if (side == 1) fa *= 0.5;
            side = 1;
        }
    }
    t_cross = t;
    state = y;
    return true;
}

SectionHit integrate_to_section(const Field& field, const Vec2& y0, const Section& section, double t0, double t_max,
                                const IntegratorConfig& cfg) {
    if (!std::isfinite(section.level)) throw Error(ErrorCode::InvalidArgument, "section level must be finite");
    Stepper stepper(field, y0, t0, t_max, cfg);
    SectionHit hit;
    hit.trajectory = Trajectory(t0, y0);
    Vec2 prev = y0;
    // A start on the section (e.g. the previous return) must not count as a
    // crossing: rounding can put it a hair on either side.  Crossings are
    // only accepted once the orbit has left a thin band around the level.
    const auto ax = static_cast<std::size_t>(section.axis);
    const double band = 1e-10 * std::max(1.0, std::abs(section.level));
    bool armed = std::abs(y0[ax] - section.level) > band;
    while (stepper.advance()) {
        double tc = 0.0;
        Vec2 yc{};
        if (!armed) {
            armed = std::abs(stepper.y()[ax] - section.level) > band;
        } else if (find_crossing(stepper.last_step(), prev, stepper.y(), section, tc, yc)) {
            hit.t = tc;
            hit.state = yc;
            if (tc > hit.trajectory.t_end()) hit.trajectory.append(stepper.last_step(), tc, yc);
            return hit;
        }
        hit.trajectory.append(stepper.last_step(), stepper.t(), stepper.y());
        prev = stepper.y();
    }
    throw NoCrossingError("no crossing of the section within the time span");
}

Trajectory integrate_in_quadrant(const Field& field, const Vec2& y0, double t0, double t1, IntegratorConfig cfg) {
    for (int attempt = 0; attempt <= 3; ++attempt) {
        Trajectory traj = integrate(field, y0, t0, t1, cfg);
        double min_u = std::numeric_limits<double>::infinity();
        for (const auto& s : traj.states()) min_u = std::min(min_u, s[0]);
        if (min_u >= -10.0 * cfg.atol[0]) return traj;
        cfg.atol[0] /= 10.0;
    }
    throw NumericalError("trajectory left the quadrant u >= 0 after 3 tolerance refinements");
}

}  // namespace canardlab
