#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <random>

#include "plots.hpp"

namespace canardlab::cli {

namespace {

template <class T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
template <class T, void (*Free)(T*)>
using Handle = std::unique_ptr<T, Deleter<T, Free>>;

using SystemHandle = Handle<cl_system, cl_system_free>;
using TrajectoryHandle = Handle<cl_trajectory, cl_trajectory_free>;
using ManifoldHandle = Handle<cl_manifold, cl_manifold_free>;
using CycleHandle = Handle<cl_cycle, cl_cycle_free>;
using SingularHandle = Handle<cl_singular_cycle, cl_singular_cycle_free>;
using FamilyHandle = Handle<cl_k2_family, cl_k2_family_free>;
using SweepHandle = Handle<cl_sweep, cl_sweep_free>;

void require_params(const RunConfig& rc) {
    if (!rc.has_params) {
        throw ConfigError("this subcommand needs Leslie-Gower parameters; the system file does not declare a, e1 and e2");
    }
}

SystemHandle load_system(const RunConfig& rc) {
    cl_system* s = nullptr;
    check(cl_system_load(rc.system_path.string().c_str(), &s), "loading system");
    return SystemHandle(s);
}

std::string csv_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

double g_of(const cl_params& p, double u) {
    double v = 0.0;
    check(cl_nullcline_g(&p, u, &v), "evaluating g");
    return v;
}

void write_nullclines(const RunConfig& rc, Session& s) {
    if (!rc.has_params) return;
    const cl_params& p = rc.params;
    const int n = 201;
    const double u_bar = (1.0 - p.e1) / 2.0;
    const double v_top = 1.25 * std::max(g_of(p, u_bar), p.e1 / p.a);
    std::string out = "curve,u,v\n";
    auto put = [&](const char* curve, double u, double v) {
        out += curve;
        out += ',' + csv_number(u) + ',' + csv_number(v) + '\n';
    };
    for (int i = 0; i < n; ++i) put("u=0", 0.0, v_top * i / (n - 1));
    for (int i = 0; i < n; ++i) put("v=0", static_cast<double>(i) / (n - 1), 0.0);
    for (int i = 0; i < n; ++i) {
        const double u = static_cast<double>(i) / (n - 1);
        put("v=g(u)", u, g_of(p, u));
    }
    for (int i = 0; i < n; ++i) {
        const double u = static_cast<double>(i) / (n - 1);
        put("v=u+e2", u, u + p.e2);
    }
    s.write_text("nullclines.csv", out);
}

void maybe_plot(const RunConfig& rc, Session& s, const char* name, const std::string& script) {
    if (rc.plot) s.write_text(name, script);
}

nlohmann::ordered_json point_json(const double* uv) { return nlohmann::ordered_json::array({uv[0], uv[1]}); }

const char* tag_name(cl_stability t) {
    switch (t) {
        case CL_ATTRACTIVE: return "Attractive";
        case CL_REPULSIVE: return "Repulsive";
        case CL_FOLD: return "Fold";
    }
    return "?";
}

}  // namespace

// ---- session ---------------------------------------------------------------

std::string Session::output(const std::string& name) {
    if (std::find(outputs_.begin(), outputs_.end(), name) == outputs_.end()) outputs_.push_back(name);
    return (rc_.out_dir / name).string();
}

void Session::write_text(const std::string& name, const std::string& text) {
    const std::string path = output(name);
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) throw ApiFailure(CL_ERR_IO, "cannot write '" + path + "'");
}

void Session::write_json(const std::string& name, const nlohmann::ordered_json& j) {
    write_text(name, j.dump(2) + "\n");
}

int Session::finish(int code, const std::string& error) {
    nlohmann::ordered_json m;
    m["tool"] = "canardlab";
    m["version"] = cl_version();
    m["subcommand"] = rc_.subcommand;
    m["config"] = rc_.config_path.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(rc_.config_path);
    m["model"] = model_json(rc_);
    m["alpha"] = rc_.alpha;
    m["options"] = options_;
    m["tolerances"] = tolerances_;
    m["seed"] = rc_.seed;
    m["parallel"] = rc_.parallel;
    m["outputs"] = outputs_;
    m["exit_code"] = code;
    if (!error.empty()) m["error"] = error;
    const std::string path = (rc_.out_dir / (rc_.subcommand + "_manifest.json")).string();
    std::ofstream out(path, std::ios::binary);
    out << m.dump(2) << "\n";
    if (!out) {
        std::cerr << "error: cannot write manifest '" << path << "'\n";
        return kExitUsage;
    }
    return code;
}

// ---- validate --------------------------------------------------------------

int cmd_validate(const RunConfig& rc, Session& s) {
    require_params(rc);
    s.options()["margin"] = rc.margin;
    cl_validation v{};
    check(cl_validate(&rc.params, rc.margin, &v), "validating");
    size_t needed = 0;
    check(cl_validation_text(&rc.params, rc.margin, nullptr, 0, &needed), "formatting report");
    std::string text(needed + 1, '\0');
    check(cl_validation_text(&rc.params, rc.margin, text.data(), text.size(), nullptr), "formatting report");
    text.resize(needed);
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';

    nlohmann::ordered_json j;
    j["params"] = params_json(rc.params);
    j["margin"] = v.margin;
    j["passed"] = v.passed != 0;
    j["u_star"] = v.has_u_star ? nlohmann::ordered_json(v.u_star) : nlohmann::ordered_json(nullptr);
    auto checks = nlohmann::ordered_json::array();
    for (int i = 0; i < v.n_checks; ++i) {
        const cl_check& c = v.checks[i];
        checks.push_back({{"name", c.name}, {"passed", c.passed != 0}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"slack", c.slack}});
    }
    j["checks"] = checks;
    s.write_json("validate.json", j);
    return v.passed ? kExitOk : kExitNumerical;
}

// ---- simulate --------------------------------------------------------------

int cmd_simulate(const RunConfig& rc, Session& s) {
    const SimulateOptions& o = rc.simulate;
    const cl_integrator_config ic = rc.tuned(cl_integrator_default());
    cl_trajectory* raw = nullptr;
    std::string coords;
    if (rc.source == ModelSource::System) {
        coords = "plain";
        SystemHandle sys = load_system(rc);
        check(cl_system_simulate(sys.get(), o.u0, o.v0, o.t0, o.t1, &ic, &raw), "simulating");
    } else {
        coords = o.coords == "auto" ? (o.u0 > 0.0 ? "log" : "plain") : o.coords;
        check(cl_simulate(&rc.params, o.u0, o.v0, o.t0, o.t1, &ic, coords == "log" ? CL_COORDS_LOG_PREY : CL_COORDS_PLAIN,
                          &raw),
              "simulating");
    }
    TrajectoryHandle tr(raw);
    s.options()["u0"] = o.u0;
    s.options()["v0"] = o.v0;
    s.options()["t0"] = o.t0;
    s.options()["t1"] = o.t1;
    s.options()["coords"] = coords;
    s.tolerances()["integrator"] = integrator_json(ic);

    check(cl_trajectory_write_csv(tr.get(), s.output("trajectory.csv").c_str()), "writing trajectory");
    write_nullclines(rc, s);
    maybe_plot(rc, s, "plot_simulate.py", simulate_plot_script());

    const size_t n = cl_trajectory_size(tr.get());
    std::cout << "samples: " << n << "\n";
    if (n > 0) {
        double t = 0, u = 0, v = 0;
        check(cl_trajectory_sample(tr.get(), n - 1, &t, &u, &v), "reading trajectory");
        std::printf("final state: t = %.10g, u = %.10g, v = %.10g\n", t, u, v);
    }
    return kExitOk;
}

// ---- manifold --------------------------------------------------------------

int cmd_manifold(const RunConfig& rc, Session& s) {
    require_params(rc);
    const ManifoldOptions& o = rc.manifold;
    SystemHandle sys;
    if (rc.source == ModelSource::System) sys = load_system(rc);
    cl_manifold* raw = nullptr;
    check(cl_manifold_sample(&rc.params, sys.get(), o.points, o.v_max, &raw), "sampling the critical manifold");
    ManifoldHandle m(raw);
    s.options()["points_per_branch"] = o.points;
    s.options()["v_max"] = o.v_max;
    s.tolerances()["fold"] = 1e-10;
    s.tolerances()["ad_vs_closed_form"] = 1e-10;

    check(cl_manifold_write_csv(m.get(), s.output("manifold.csv").c_str()), "writing manifold");

    double folds[4];
    check(cl_fold_points(&rc.params, folds), "fold points");
    nlohmann::ordered_json j;
    j["rows"] = cl_manifold_size(m.get());
    j["canard_point"] = point_json(folds);
    j["jump_point"] = point_json(folds + 2);
    auto fold_rows = nlohmann::ordered_json::array();
    auto switches = nlohmann::ordered_json::array();
    double max_gap = 0.0;
    // A switch is reported at the fold row separating two differently tagged runs.
    cl_classification last_tagged{}, last_fold{};
    bool have_tagged = false, have_fold = false;
    for (size_t i = 0; i < cl_manifold_size(m.get()); ++i) {
        cl_classification c{};
        check(cl_manifold_get(m.get(), i, &c), "reading manifold");
        max_gap = std::max(max_gap, std::abs(c.fprime_u - c.fprime_u_closed));
        const char* branch = c.branch == CL_BRANCH_AXIS ? "VerticalAxis" : "Parabola";
        if (have_tagged && last_tagged.branch != c.branch) have_tagged = false;
        if (have_fold && last_fold.branch != c.branch) have_fold = false;
        if (c.tag == CL_FOLD) {
            fold_rows.push_back({{"branch", branch}, {"u", c.u}, {"v", c.v}});
            last_fold = c;
            have_fold = true;
            continue;
        }
        if (have_tagged && last_tagged.tag != c.tag) {
            const cl_classification& at = have_fold ? last_fold : c;
            switches.push_back(
                {{"branch", branch}, {"from", tag_name(last_tagged.tag)}, {"to", tag_name(c.tag)}, {"u", at.u}, {"v", at.v}});
        }
        last_tagged = c;
        have_tagged = true;
        have_fold = false;
    }
    j["fold_rows"] = fold_rows;
    j["tag_switches"] = switches;
    j["max_ad_closed_form_gap"] = max_gap;
    s.write_json("manifold.json", j);
    maybe_plot(rc, s, "plot_manifold.py", manifold_plot_script());

    std::cout << "rows: " << cl_manifold_size(m.get()) << ", fold rows: " << fold_rows.size() << "\n";
    return kExitOk;
}

// ---- cycle -----------------------------------------------------------------

namespace {

nlohmann::ordered_json random_start_check(const RunConfig& rc, double anchor_ln_u, double level) {
    auto starts = nlohmann::ordered_json::array();
    std::mt19937_64 rng(rc.seed);
    const int max_iter = 60;
    for (int k = 0; k < rc.cycle.random_starts; ++k) {
        // Uniform on [0.02, 0.98] from the raw 53-bit draw, so the values do
        // not depend on the standard library's distribution implementation.
        const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const double u0 = 0.02 + 0.96 * unit;
        double point[2] = {std::log(u0), level};
        auto dists = nlohmann::ordered_json::array();
        bool monotone = true;
        double prev = std::numeric_limits<double>::infinity();
        bool converged = false;
        for (int it = 0; it < max_iter; ++it) {
            double next[2];
            check(cl_poincare_map(&rc.params, rc.alpha, point[0], point[1], &rc.cycle.config, next, nullptr),
                  "random-start return map");
            const double d = std::abs(next[0] - anchor_ln_u);
            dists.push_back(d);
            if (it > 0 && d >= prev && prev > 1e-8) monotone = false;
            prev = d;
            point[0] = next[0];
            point[1] = next[1];
            if (d < 1e-8) {
                converged = true;
                break;
            }
        }
        starts.push_back({{"u0", u0}, {"converged", converged}, {"monotone", monotone}, {"ln_u_distances", dists}});
    }
    return starts;
}

}  // namespace

int cmd_cycle(const RunConfig& rc, Session& s) {
    require_params(rc);
    const cl_cycle_config& cfg = rc.cycle.config;
    s.options()["random_starts"] = rc.cycle.random_starts;
    s.tolerances()["integrator"] = integrator_json(cfg.integrator);
    s.tolerances()["return_map"] = cfg.tolerance;
    s.tolerances()["max_returns"] = cfg.max_returns;
    s.tolerances()["min_samples"] = cfg.min_samples;
    s.tolerances()["return_horizon"] = cfg.return_horizon;

    cl_cycle* raw = nullptr;
    check(cl_cycle_find(&rc.params, rc.alpha, &cfg, &raw), "finding the limit cycle");
    CycleHandle c(raw);
    cl_cycle_summary sum{};
    check(cl_cycle_summary_get(c.get(), &sum), "cycle summary");
    cl_blowup_constants bc{};
    check(cl_blowup_constants_get(&rc.params, &bc), "blow-up constants");

    check(cl_cycle_write_csv(c.get(), s.output("cycle.csv").c_str()), "writing cycle");
    write_nullclines(rc, s);

    double u_min = std::numeric_limits<double>::infinity(), u_max = -u_min, v_min = u_min, v_max = -u_min;
    double first[4] = {}, last[4] = {};
    for (size_t i = 0; i < sum.n_samples; ++i) {
        double t, u, v, lu;
        check(cl_cycle_sample(c.get(), i, &t, &u, &v, &lu), "reading cycle");
        u_min = std::min(u_min, u);
        u_max = std::max(u_max, u);
        v_min = std::min(v_min, v);
        v_max = std::max(v_max, v);
        if (i == 0) std::copy_n(std::initializer_list<double>{t, u, v, lu}.begin(), 4, first);
        if (i + 1 == sum.n_samples) std::copy_n(std::initializer_list<double>{t, u, v, lu}.begin(), 4, last);
    }
    auto separations = nlohmann::ordered_json::array();
    for (size_t i = 0; i < sum.n_separations; ++i) {
        double d = 0.0;
        check(cl_cycle_separation(c.get(), i, &d), "reading separations");
        separations.push_back(d);
    }

    const double p_level = rc.params.e1 / rc.params.a;
    const double ln_eps = std::log(rc.params.eps);
    auto arc = [&](double ln_k) {
        const double ln_threshold = std::log(10.0) + ln_k + ln_eps;
        double extent = 0.0;
        check(cl_cycle_canard_arc_extent(c.get(), ln_threshold, sum.v_fiber, p_level, &extent), "canard arc");
        return nlohmann::ordered_json{{"ln_u_threshold", ln_threshold},
                                      {"extent", extent},
                                      {"required", 0.5 * sum.descent},
                                      {"pass", extent >= 0.5 * sum.descent}};
    };

    nlohmann::ordered_json j;
    j["params"] = params_json(rc.params);
    j["alpha"] = sum.alpha;
    j["c1"] = bc.c1;
    j["c2"] = bc.c2;
    j["period"] = sum.period;
    j["section_level"] = sum.section_level;
    j["u_cross"] = sum.u_cross;
    j["ln_u_cross"] = sum.ln_u_cross;
    j["k_hat"] = sum.k_hat;
    j["ln_k_hat"] = sum.ln_k_hat;
    j["v_fiber"] = sum.v_fiber;
    j["D_hat"] = sum.descent;
    j["k_fiber"] = sum.k_fiber;
    j["returns"] = sum.returns;
    j["separations"] = separations;
    j["samples"] = sum.n_samples;
    j["bounding_box"] = {{"u_min", u_min}, {"u_max", u_max}, {"v_min", v_min}, {"v_max", v_max}};
    j["closure"] = {{"ln_u", std::abs(last[3] - first[3])}, {"v", std::abs(last[2] - first[2])}};
    j["canard_arc_crossing_k"] = arc(sum.ln_k_hat);
    j["canard_arc_fiber_k"] = arc(std::log(sum.k_fiber));
    if (rc.cycle.random_starts > 0) j["random_starts"] = random_start_check(rc, sum.ln_u_cross, sum.section_level);
    s.write_json("cycle.json", j);
    maybe_plot(rc, s, "plot_cycle.py", cycle_plot_script());

    std::printf("eps = %g  period = %.10g  returns = %d\n", sum.eps, sum.period, sum.returns);
    std::printf("ln u_cross = %.10g  k_hat = %.6g (ln %.10g)\n", sum.ln_u_cross, sum.k_hat, sum.ln_k_hat);
    std::printf("v_fiber = %.10g  D_hat = %.10g  k_fiber = %.10g\n", sum.v_fiber, sum.descent, sum.k_fiber);
    return kExitOk;
}

// ---- blowup ----------------------------------------------------------------

int cmd_blowup(const RunConfig& rc, Session& s) {
    require_params(rc);
    const BlowupOptions& o = rc.blowup;
    s.options()["x2_starts"] = o.x2_starts;
    s.options()["y2_0"] = o.y2_0;
    s.options()["r2"] = o.k2.r2;
    s.options()["order"] = o.k2.order == CL_ORDER_FULL ? "full" : "second";
    s.options()["x2_max"] = o.k2.x2_max;
    s.tolerances()["integrator"] = integrator_json(o.k2.integrator);

    cl_k2_family* raw = nullptr;
    check(cl_k2_family_compute(&rc.params, o.x2_starts.data(), o.x2_starts.size(), o.y2_0, &o.k2, &raw),
          "integrating chart K2 orbits");
    FamilyHandle f(raw);
    check(cl_k2_family_write_csv(f.get(), s.output("k2_family.csv").c_str()), "writing orbits");

    cl_blowup_constants bc{};
    check(cl_blowup_constants_get(&rc.params, &bc), "blow-up constants");
    nlohmann::ordered_json j;
    j["c1"] = bc.c1;
    j["c2"] = bc.c2;
    j["r2"] = o.k2.r2;
    auto orbits = nlohmann::ordered_json::array();
    for (size_t k = 0; k < cl_k2_family_size(f.get()); ++k) {
        cl_k2_orbit_info info{};
        check(cl_k2_orbit_info_get(f.get(), k, &info), "orbit info");
        double t = 0, x2 = 0, y2 = 0;
        check(cl_k2_orbit_point(f.get(), k, info.n_points - 1, &t, &x2, &y2), "orbit end");
        nlohmann::ordered_json jo;
        jo["x2_0"] = info.x2_0;
        jo["y2_0"] = info.y2_0;
        jo["t_star"] = info.t_star;
        jo["t_end"] = t;
        jo["x2_end"] = x2;
        jo["y2_end"] = y2;
        if (info.x2_0 > 0.0) {
            double ev = 0.0;
            check(cl_exit_value(&rc.params, info.x2_0, info.y2_0, &ev), "exit value");
            jo["exit_value"] = ev;
            // The closed-form exit value and blow-up time describe the r2 = 0 orbit only.
            if (o.k2.r2 == 0.0) jo["exit_error"] = std::abs(y2 - ev);
        }
        if (o.k2.r2 == 0.0) jo["within_domain"] = t < info.t_star;
        orbits.push_back(jo);
        std::printf("x2(0) = %-6g t* = %-12.8g t_end = %-12.8g y2_end = %.10g\n", info.x2_0, info.t_star, t, y2);
    }
    j["orbits"] = orbits;
    s.write_json("blowup.json", j);
    maybe_plot(rc, s, "plot_blowup.py", blowup_plot_script());
    return kExitOk;
}

// ---- sweep -----------------------------------------------------------------

int cmd_sweep(const RunConfig& rc, Session& s) {
    require_params(rc);
    const SweepOptions& o = rc.sweep;
    s.options()["eps_list"] = o.eps_list;
    s.options()["hausdorff_spacing"] = o.sweep.hausdorff_spacing;
    s.tolerances()["integrator"] = integrator_json(o.sweep.cycle.integrator);
    s.tolerances()["return_map"] = o.sweep.cycle.tolerance;

    cl_sweep* raw = nullptr;
    check(cl_sweep_run(&rc.params, rc.alpha, o.eps_list.data(), o.eps_list.size(), &o.sweep, &raw),
          "running the convergence study");
    SweepHandle sw(raw);
    check(cl_sweep_write_csv(sw.get(), s.output("convergence.csv").c_str()), "writing convergence table");
    check(cl_sweep_write_json(sw.get(), s.output("convergence.json").c_str()), "writing convergence summary");
    cl_singular_cycle* ref_raw = nullptr;
    check(cl_sweep_reference(sw.get(), &ref_raw), "reference cycle");
    SingularHandle ref(ref_raw);
    check(cl_singular_cycle_write_csv(ref.get(), s.output("reference_cycle.csv").c_str()), "writing reference cycle");
    maybe_plot(rc, s, "plot_sweep.py", sweep_plot_script());

    cl_sweep_summary sum{};
    check(cl_sweep_summary_get(sw.get(), &sum), "sweep summary");
    std::printf("%-10s %-14s %-14s %-14s\n", "eps", "d", "D_hat", "k_fiber");
    for (size_t i = 0; i < sum.n_rows; ++i) {
        cl_sweep_row r{};
        check(cl_sweep_row_get(sw.get(), i, &r), "sweep row");
        std::printf("%-10g %-14.8g %-14.8g %-14.8g\n", r.eps, r.distance, r.descent, r.k_fiber);
    }
    std::printf("slope = %.6f  decreasing = %s  in band = %s%s\n", sum.slope, sum.distances_decreasing ? "yes" : "no",
                sum.slope_in_band ? "yes" : "no", sum.slope_flagged ? "  (flagged: slope < 0.9)" : "");
    return sum.distances_decreasing && sum.slope_in_band ? kExitOk : kExitNumerical;
}

// ---- singular-cycle --------------------------------------------------------

int cmd_singular_cycle(const RunConfig& rc, Session& s) {
    require_params(rc);
    const SingularCycleOptions& o = rc.singular;
    double k = 0.0;
    nlohmann::ordered_json k_source;
    if (o.k) {
        k = *o.k;
        k_source = {{"kind", "given"}};
    } else {
        // Measure k from a small-eps cycle through the exit relation.
        cl_params p = rc.params;
        p.eps = o.k_eps;
        cl_cycle* raw = nullptr;
        check(cl_cycle_find(&p, rc.alpha, &rc.cycle.config, &raw), "measuring k");
        CycleHandle c(raw);
        cl_cycle_summary sum{};
        check(cl_cycle_summary_get(c.get(), &sum), "cycle summary");
        k = sum.k_fiber;
        k_source = {{"kind", "measured"}, {"eps", o.k_eps}, {"D_hat", sum.descent}, {"k_hat", sum.k_hat}};
        s.tolerances()["integrator"] = integrator_json(rc.cycle.config.integrator);
    }
    s.options()["k"] = k;
    s.options()["arc_samples"] = o.arc_samples;

    cl_singular_cycle* raw = nullptr;
    check(cl_singular_cycle_build(&rc.params, rc.alpha, k, o.arc_samples, &raw), "building the singular cycle");
    SingularHandle sc(raw);
    check(cl_singular_cycle_write_csv(sc.get(), s.output("singular_cycle.csv").c_str()), "writing singular cycle");
    write_nullclines(rc, s);

    cl_singular_cycle_info info{};
    check(cl_singular_cycle_info_get(sc.get(), &info), "singular cycle info");
    std::vector<double> pts(2 * info.n_points);
    check(cl_singular_cycle_points(sc.get(), pts.data(), info.n_points), "singular cycle points");
    const double gap = std::hypot(pts[0] - pts[2 * info.n_points - 2], pts[1] - pts[2 * info.n_points - 1]);

    nlohmann::ordered_json j;
    j["k"] = k;
    j["k_source"] = k_source;
    j["alpha"] = info.alpha;
    j["c1"] = info.c1;
    j["c2"] = info.c2;
    j["fiber_level"] = info.fiber_level;
    j["u_star"] = info.u_star;
    j["A"] = point_json(info.a_vertex);
    j["B"] = point_json(info.b_vertex);
    j["C"] = point_json(info.c_vertex);
    j["D"] = point_json(info.d_vertex);
    j["points"] = info.n_points;
    j["closure_gap"] = gap;
    j["closed"] = gap == 0.0;
    s.write_json("singular_cycle.json", j);
    maybe_plot(rc, s, "plot_singular_cycle.py", singular_cycle_plot_script());

    std::printf("k = %.10g  B' = (0, %.10g)  C = (%.10g, %.10g)\n", k, info.b_vertex[1], info.c_vertex[0], info.c_vertex[1]);
    return kExitOk;
}

}  // namespace canardlab::cli
