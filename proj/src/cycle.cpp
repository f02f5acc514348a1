#include "canardlab/cycle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>
#include <thread>

#include "canardlab/blowup.hpp"
#include "canardlab/error.hpp"

namespace canardlab {

namespace {

constexpr double kFiberWindowU = 0.1;

Field log_prey_field(const ModelParams& p) {
    return [p](double, const Vec2& wv) { return vector_field_log_prey(p, wv); };
}

std::vector<CycleSample> sample_trajectory(const Trajectory& traj, std::size_t min_samples) {
    const std::size_t steps = traj.steps().size();
    const std::size_t sub = steps == 0 ? 1 : std::max<std::size_t>(1, (min_samples + steps - 1) / steps);
    std::vector<CycleSample> out;
    out.reserve(steps * sub + 1);
    auto push = [&out](double t, const Vec2& wv) { out.push_back({t, std::exp(wv[0]), wv[1], wv[0]}); };
    push(traj.t_begin(), traj.front());
    for (std::size_t i = 0; i < steps; ++i) {
        const DenseStep& st = traj.steps()[i];
        const double t_end = traj.times()[i + 1];
        for (std::size_t j = 1; j < sub; ++j) {
            const double t = traj.times()[i] + (t_end - traj.times()[i]) * static_cast<double>(j) / sub;
            push(t, st(t));
        }
        push(t_end, traj.states()[i + 1]);
    }
    return out;
}

}  // namespace

std::vector<Vec2> LimitCycle::curve() const {
    std::vector<Vec2> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back({s.u, s.v});
    return out;
}

Section cycle_section(const ModelParams& p, double alpha) {
    return Section{Axis::V, p.e1 / p.a + alpha, Direction::Down};
}

PoincareReturn poincare_map(const ModelParams& p, const Section& section, const Vec2& log_point,
                            const CycleConfig& cfg) {
    const double horizon = cfg.return_horizon / p.eps;
    SectionHit hit = integrate_to_section(log_prey_field(p), log_point, section, 0.0, horizon, cfg.integrator);
    return PoincareReturn{hit.t, hit.state, std::move(hit.trajectory)};
}

LimitCycle find_limit_cycle(const ModelParams& p, double alpha, const CycleConfig& cfg) {
    require_valid(p);
    if (!(alpha >= 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be non-negative");
    const Section section = cycle_section(p, alpha);
    const Field field = log_prey_field(p);

    // Reach the section from the standard initial guess.
    const Vec2 start{std::log(0.5), section.level + 0.1};
    Vec2 point =
        integrate_to_section(field, start, section, 0.0, cfg.return_horizon / p.eps, cfg.integrator).state;

    LimitCycle cycle;
    cycle.eps = p.eps;
    cycle.alpha = alpha;
    cycle.section_level = section.level;

    bool converged = false;
    for (int n = 0; n < cfg.max_returns; ++n) {
        const PoincareReturn next = poincare_map(p, section, point, cfg);
        const double sep = std::abs(next.point[0] - point[0]);
        cycle.separations.push_back(sep);
        point = next.point;
        cycle.returns = n + 1;
        if (sep < cfg.tolerance) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        std::string msg = "limit cycle search did not converge in " + std::to_string(cfg.max_returns) +
                          " returns; last separations:";
        const std::size_t from = cycle.separations.size() > 5 ? cycle.separations.size() - 5 : 0;
        for (std::size_t i = from; i < cycle.separations.size(); ++i) {
            char buf[32];
            std::snprintf(buf, sizeof buf, " %.3e", cycle.separations[i]);
            msg += buf;
        }
        throw NotConvergedError(msg);
    }

    const PoincareReturn period = poincare_map(p, section, point, cfg);
    cycle.period = period.time;
    cycle.ln_u_cross = point[0];
    cycle.u_cross = std::exp(point[0]);
    cycle.samples = sample_trajectory(period.trajectory, cfg.min_samples);

    // Closure: the recorded period must end where it started.
    const auto& first = cycle.samples.front();
    const auto& last = cycle.samples.back();
    const double du_rel = std::abs(last.ln_u - first.ln_u);
    const double dv_rel = std::abs(last.v - first.v) / std::abs(first.v);
    if (du_rel > 1e-8 || dv_rel > 1e-8) {
        char msg[160];
        std::snprintf(msg, sizeof msg, "recorded cycle is not closed: |d ln u| = %.3e, |dv|/v = %.3e", du_rel, dv_rel);
        throw NotConvergedError(msg);
    }
    const double tol = 10.0 * cfg.integrator.atol[1];
    for (const auto& s : cycle.samples) {
        if (s.u > 1.0 + tol || s.v < -tol) throw NumericalError("limit cycle left the invariant quadrant");
    }
    return cycle;
}

double ln_crossing_k(const LimitCycle& cycle) { return cycle.ln_u_cross - std::log(cycle.eps); }

double crossing_k(const LimitCycle& cycle) { return std::exp(ln_crossing_k(cycle)); }

Descent descent_depth(const ModelParams& p, const LimitCycle& cycle) {
    double best = -std::numeric_limits<double>::infinity();
    double v_fiber = std::nan("");
    for (const auto& s : cycle.samples) {
        if (!(s.u < kFiberWindowU)) continue;
        const double du = vector_field(p, {s.u, s.v})[0];
        if (du > best) {
            best = du;
            v_fiber = s.v;
        }
    }
    if (std::isnan(v_fiber)) throw NumericalError("cycle never enters u < 0.1");
    return Descent{v_fiber, p.e1 / p.a - v_fiber};
}

double fiber_k(const ModelParams& p, const LimitCycle& cycle) {
    return k_from_descent(p, descent_depth(p, cycle).depth);
}

double canard_arc_extent(const LimitCycle& cycle, double ln_u_threshold, double v_low, double v_high) {
    double best = 0.0;
    bool in_run = false;
    double lo = 0.0;
    double hi = 0.0;
    for (const auto& s : cycle.samples) {
        const bool inside = s.ln_u < ln_u_threshold && s.v > v_low && s.v < v_high;
        if (inside) {
            if (!in_run) {
                lo = hi = s.v;
                in_run = true;
            }
            lo = std::min(lo, s.v);
            hi = std::max(hi, s.v);
            best = std::max(best, hi - lo);
        } else {
            in_run = false;
        }
    }
    return best;
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
    const Vec2 ab = b - a;
    const Vec2 ap = p - a;
    const double len2 = ab[0] * ab[0] + ab[1] * ab[1];
    double s = len2 > 0.0 ? (ap[0] * ab[0] + ap[1] * ab[1]) / len2 : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    const Vec2 q{a[0] + s * ab[0], a[1] + s * ab[1]};
    return norm(p - q);
}

namespace {

// Uniform grid over the segments of a polyline.  Each segment is registered
// in every cell its bounding box touches, so a ring search that has covered
// all cells within Chebyshev radius r has seen every segment closer than
// r * cell to the query point.
class SegmentGrid {
public:
    explicit SegmentGrid(std::span<const Vec2> pts) : pts_(pts) {
        lo_ = hi_ = pts[0];
        for (const auto& q : pts) {
            for (int i = 0; i < 2; ++i) {
                lo_[i] = std::min(lo_[i], q[i]);
                hi_[i] = std::max(hi_[i], q[i]);
            }
        }
        const double w = std::max(hi_[0] - lo_[0], 1e-12);
        const double h = std::max(hi_[1] - lo_[1], 1e-12);
        const double n = static_cast<double>(std::max<std::size_t>(pts.size(), 1));
        cell_ = std::max(std::sqrt(w * h / n), std::max(w, h) / 4096.0);
        nx_ = static_cast<long>(w / cell_) + 1;
        ny_ = static_cast<long>(h / cell_) + 1;
        cells_.assign(static_cast<std::size_t>(nx_ * ny_), {});
        const std::size_t nseg = pts.size() == 1 ? 1 : pts.size() - 1;
        for (std::size_t j = 0; j < nseg; ++j) {
            const Vec2& a = pts[j];
            const Vec2& b = pts.size() == 1 ? pts[0] : pts[j + 1];
            const long x0 = cx(std::min(a[0], b[0])), x1 = cx(std::max(a[0], b[0]));
            const long y0 = cy(std::min(a[1], b[1])), y1 = cy(std::max(a[1], b[1]));
            for (long x = x0; x <= x1; ++x) {
                for (long y = y0; y <= y1; ++y) cells_[idx(x, y)].push_back(static_cast<std::uint32_t>(j));
            }
        }
        stamp_.assign(nseg, 0);
    }

    double nearest(const Vec2& q) {
        ++query_;
        const long qx = cx(q[0]);
        const long qy = cy(q[1]);
        double best = std::numeric_limits<double>::infinity();
        for (long r = 0;; ++r) {
            if (r == 0) {
                scan(qx, qy, q, best);
            } else {
                for (long x = qx - r; x <= qx + r; ++x) {
                    scan(x, qy - r, q, best);
                    scan(x, qy + r, q, best);
                }
                for (long y = qy - r + 1; y <= qy + r - 1; ++y) {
                    scan(qx - r, y, q, best);
                    scan(qx + r, y, q, best);
                }
            }
            // Every unvisited cell lies in one of up to four slabs of the grid
            // box beyond the visited square; stop once none can do better.
            const long xa = qx - r, xb = qx + r, ya = qy - r, yb = qy + r;
            const double X0 = lo_[0], X1 = lo_[0] + static_cast<double>(nx_) * cell_;
            const double Y0 = lo_[1], Y1 = lo_[1] + static_cast<double>(ny_) * cell_;
            double bound = std::numeric_limits<double>::infinity();
            if (xa > 0) bound = std::min(bound, box_distance(q, X0, lo_[0] + static_cast<double>(xa) * cell_, Y0, Y1));
            if (xb < nx_ - 1) bound = std::min(bound, box_distance(q, lo_[0] + static_cast<double>(xb + 1) * cell_, X1, Y0, Y1));
            if (ya > 0) bound = std::min(bound, box_distance(q, X0, X1, Y0, lo_[1] + static_cast<double>(ya) * cell_));
            if (yb < ny_ - 1) bound = std::min(bound, box_distance(q, X0, X1, lo_[1] + static_cast<double>(yb + 1) * cell_, Y1));
            if (best <= bound) break;
        }
        return best;
    }

private:
    std::span<const Vec2> pts_;
    Vec2 lo_{};
    Vec2 hi_{};
    double cell_ = 1.0;
    long nx_ = 1;
    long ny_ = 1;
    std::vector<std::vector<std::uint32_t>> cells_;
    std::vector<std::uint64_t> stamp_;
    std::uint64_t query_ = 0;

    long cx(double x) const { return std::clamp(static_cast<long>((x - lo_[0]) / cell_), 0L, nx_ - 1); }
    long cy(double y) const { return std::clamp(static_cast<long>((y - lo_[1]) / cell_), 0L, ny_ - 1); }
    std::size_t idx(long x, long y) const { return static_cast<std::size_t>(x * ny_ + y); }
    static double box_distance(const Vec2& q, double x0, double x1, double y0, double y1) {
        const double dx = std::max({x0 - q[0], 0.0, q[0] - x1});
        const double dy = std::max({y0 - q[1], 0.0, q[1] - y1});
        return std::hypot(dx, dy);
    }
    void scan(long x, long y, const Vec2& q, double& best) {
        if (x < 0 || y < 0 || x >= nx_ || y >= ny_) return;
        for (std::uint32_t j : cells_[idx(x, y)]) {
            if (stamp_[j] == query_) continue;
            stamp_[j] = query_;
            const Vec2& a = pts_[j];
            const Vec2& b = pts_.size() == 1 ? pts_[0] : pts_[j + 1];
            best = std::min(best, point_segment_distance(q, a, b));
        }
    }
};

}  // namespace

double directed_hausdorff(std::span<const Vec2> from, std::span<const Vec2> to) {
    if (from.empty() || to.empty()) throw Error(ErrorCode::InvalidArgument, "hausdorff needs nonempty curves");
    SegmentGrid grid(to);
    double cmax = 0.0;
    for (const auto& pt : from) cmax = std::max(cmax, grid.nearest(pt));
    return cmax;
}

double hausdorff(std::span<const Vec2> a, std::span<const Vec2> b) {
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

std::vector<Vec2> densify(std::span<const Vec2> polyline, double max_spacing) {
    if (!(max_spacing > 0.0)) throw Error(ErrorCode::InvalidArgument, "spacing must be positive");
    std::vector<Vec2> out;
    if (polyline.empty()) return out;
    out.push_back(polyline[0]);
    for (std::size_t i = 1; i < polyline.size(); ++i) {
        const Vec2& a = polyline[i - 1];
        const Vec2& b = polyline[i];
        const auto pieces = static_cast<long>(std::ceil(norm(b - a) / max_spacing));
        for (long j = 1; j < pieces; ++j) {
            const double s = static_cast<double>(j) / static_cast<double>(pieces);
            out.push_back({a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])});
        }
        out.push_back(b);
    }
    return out;
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw Error(ErrorCode::InvalidArgument, "slope fit needs >= 2 points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergenceStudy convergence_study(const ModelParams& p, double alpha, const std::vector<double>& eps_list,
                                   const StudyOptions& opt) {
    if (eps_list.size() < 3) throw Error(ErrorCode::InvalidArgument, "convergence study needs at least 3 eps values");
    for (std::size_t i = 1; i < eps_list.size(); ++i) {
        if (!(eps_list[i] < eps_list[i - 1])) {
            throw Error(ErrorCode::InvalidArgument, "eps values must be strictly decreasing");
        }
    }
    const std::size_t n = eps_list.size();
    std::vector<std::optional<LimitCycle>> cycles(n);
    std::vector<std::exception_ptr> errors(n);

    auto job = [&](std::size_t i) {
        try {
            cycles[i] = find_limit_cycle(ModelParams::make(p.a, p.e1, p.e2, eps_list[i]), alpha, opt.cycle);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    const auto workers = static_cast<std::size_t>(std::max(1, opt.parallel));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) job(i);
    } else {
        // Static round-robin assignment; results land in their own slot.
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < std::min(workers, n); ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < n; i += workers) job(i);
            });
        }
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    ConvergenceStudy study;
    study.alpha = alpha;
    const ModelParams p_min = ModelParams::make(p.a, p.e1, p.e2, eps_list.back());
    study.reference_k = fiber_k(p_min, *cycles.back());
    study.reference = singular_cycle(p, alpha, study.reference_k);
    const auto reference = densify(study.reference.polyline(), opt.hausdorff_spacing);

    std::vector<double> ds;
    for (std::size_t i = 0; i < n; ++i) {
        const LimitCycle& c = *cycles[i];
        const ModelParams pi = ModelParams::make(p.a, p.e1, p.e2, eps_list[i]);
        ConvergenceRow row;
        row.eps = eps_list[i];
        row.distance = hausdorff(densify(c.curve(), opt.hausdorff_spacing), reference);
        row.k_hat = crossing_k(c);
        row.ln_k_hat = ln_crossing_k(c);
        row.descent = descent_depth(pi, c).depth;
        row.k_fiber = k_from_descent(pi, row.descent);
        row.period = c.period;
        study.rows.push_back(row);
        ds.push_back(row.distance);
    }
    study.slope = fit_loglog_slope(eps_list, ds);
    study.distances_decreasing = true;
    for (std::size_t i = 1; i < n; ++i) study.distances_decreasing &= ds[i] < ds[i - 1];
    study.slope_in_band = study.slope >= 0.6 && study.slope <= 1.2;
    study.slope_flagged = study.slope < 0.9;
    return study;
}

}  // namespace canardlab
