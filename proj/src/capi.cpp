#include "canardlab/canardlab.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <cstdio>
#include <limits>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "canardlab/blowup.hpp"
#include "canardlab/cycle.hpp"
#include "canardlab/error.hpp"
#include "canardlab/gspt.hpp"
#include "canardlab/integrate.hpp"
#include "canardlab/io.hpp"
#include "canardlab/model.hpp"
#include "canardlab/sysdef.hpp"

namespace cl = canardlab;

struct cl_system {
    cl::PlanarSlowFastSystem system;
};

struct cl_trajectory {
    cl::Trajectory traj;
    bool log_prey = false;
};

struct cl_manifold {
    std::vector<cl::ManifoldBranch> branches;
    std::vector<cl::ManifoldClassification> flat;
};

struct cl_singular_cycle {
    cl::SingularCycle sc;
    std::vector<cl::Vec2> poly;
};

struct cl_k2_family {
    std::vector<cl::K2Orbit> orbits;
};

struct cl_cycle {
    cl::ModelParams p;
    cl::LimitCycle cycle;
    cl::Descent descent;
    double k_fiber = 0.0;
};

struct cl_sweep {
    cl::ConvergenceStudy study;
};

namespace {

thread_local std::string g_last_error;

cl_status to_status(cl::ErrorCode code) {
    switch (code) {
        case cl::ErrorCode::InvalidArgument: return CL_ERR_INVALID_ARGUMENT;
        case cl::ErrorCode::Validation: return CL_ERR_VALIDATION;
        case cl::ErrorCode::Domain: return CL_ERR_DOMAIN;
        case cl::ErrorCode::Parse: return CL_ERR_PARSE;
        case cl::ErrorCode::Numerical: return CL_ERR_NUMERICAL;
        case cl::ErrorCode::NoCrossing: return CL_ERR_NO_CROSSING;
        case cl::ErrorCode::NotConverged: return CL_ERR_NOT_CONVERGED;
        case cl::ErrorCode::Geometry: return CL_ERR_GEOMETRY;
        case cl::ErrorCode::BlowUp: return CL_ERR_BLOWUP;
        case cl::ErrorCode::Io: return CL_ERR_IO;
    }
    return CL_ERR_INTERNAL;
}

cl_status fail(cl_status s, std::string msg) {
    g_last_error = std::move(msg);
    return s;
}

// Runs `body` and converts any exception into a status plus message.
template <class F>
cl_status guarded(F&& body) {
    try {
        body();
        return CL_OK;
    } catch (const cl::Error& e) {
        return fail(to_status(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(CL_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(CL_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(CL_ERR_INTERNAL, "unknown error");
    }
}

#define CL_REQUIRE(cond)                                                                     \
    do {                                                                                     \
        if (!(cond)) return fail(CL_ERR_INVALID_ARGUMENT, "null or invalid argument: " #cond); \
    } while (0)

cl::ModelParams params(const cl_params* p) { return cl::ModelParams::make(p->a, p->e1, p->e2, p->eps); }

cl::IntegratorConfig integrator(const cl_integrator_config* c) {
    cl::IntegratorConfig cfg;
    if (c == nullptr) return cfg;
    cfg.rtol = c->rtol;
    cfg.atol = {c->atol_u, c->atol_v};
    cfg.max_step = c->max_step > 0.0 ? c->max_step : std::numeric_limits<double>::infinity();
    cfg.max_steps = static_cast<long>(c->max_steps);
    cfg.check();
    return cfg;
}

cl_integrator_config from_integrator(const cl::IntegratorConfig& cfg) {
    cl_integrator_config c{};
    c.rtol = cfg.rtol;
    c.atol_u = cfg.atol[0];
    c.atol_v = cfg.atol[1];
    c.max_step = cfg.max_step;
    c.max_steps = cfg.max_steps;
    return c;
}

cl::CycleConfig cycle_config(const cl_cycle_config* c) {
    cl::CycleConfig cfg;
    if (c == nullptr) return cfg;
    cfg.integrator = integrator(&c->integrator);
    cfg.tolerance = c->tolerance;
    cfg.max_returns = c->max_returns;
    cfg.min_samples = c->min_samples;
    cfg.return_horizon = c->return_horizon;
    if (!(cfg.tolerance > 0.0) || cfg.max_returns < 1 || !(cfg.return_horizon > 0.0)) {
        throw cl::Error(cl::ErrorCode::InvalidArgument, "cycle tolerance, max_returns and return_horizon must be positive");
    }
    return cfg;
}

cl_classification to_c(const cl::ManifoldClassification& m) {
    cl_classification out{};
    out.u = m.point[0];
    out.v = m.point[1];
    out.fprime_u = m.fprime_u;
    out.fprime_u_closed = m.fprime_u_closed;
    out.branch = m.branch == cl::BranchKind::VerticalAxis ? CL_BRANCH_AXIS : CL_BRANCH_PARABOLA;
    switch (m.tag) {
        case cl::Stability::Attractive: out.tag = CL_ATTRACTIVE; break;
        case cl::Stability::Repulsive: out.tag = CL_REPULSIVE; break;
        case cl::Stability::Fold: out.tag = CL_FOLD; break;
    }
    return out;
}

cl::LocalOrder order(cl_local_order o) { return o == CL_ORDER_SECOND ? cl::LocalOrder::Second : cl::LocalOrder::Full; }

void copy2(double dst[2], const cl::Vec2& v) {
    dst[0] = v[0];
    dst[1] = v[1];
}

std::string log_trajectory_csv(const cl::Trajectory& traj) {
    std::string out = "t,u,v\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        out += cl::format_number(traj.times()[i]);
        out += ',';
        out += cl::format_number(std::exp(traj.states()[i][0]));
        out += ',';
        out += cl::format_number(traj.states()[i][1]);
        out += '\n';
    }
    return out;
}

}  // namespace

extern "C" {

const char* cl_version(void) { return "0.1.0"; }

const char* cl_status_string(cl_status status) {
    switch (status) {
        case CL_OK: return "ok";
        case CL_ERR_INVALID_ARGUMENT: return "invalid argument";
        case CL_ERR_VALIDATION: return "validation failed";
        case CL_ERR_DOMAIN: return "domain error";
        case CL_ERR_PARSE: return "parse error";
        case CL_ERR_NUMERICAL: return "numerical failure";
        case CL_ERR_NO_CROSSING: return "no section crossing";
        case CL_ERR_NOT_CONVERGED: return "not converged";
        case CL_ERR_GEOMETRY: return "geometry error";
        case CL_ERR_BLOWUP: return "blow-up";
        case CL_ERR_IO: return "i/o error";
        case CL_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* cl_last_error_message(void) { return g_last_error.c_str(); }

// ---- model -----------------------------------------------------------------

cl_status cl_params_check(const cl_params* p) {
    CL_REQUIRE(p);
    return guarded([&] { (void)params(p); });
}

cl_status cl_nondimensionalize(const cl_raw_params* raw, cl_params* out) {
    CL_REQUIRE(raw && out);
    return guarded([&] {
        const cl::ModelParams m = cl::nondimensionalize({raw->r1, raw->r2, raw->a1, raw->a2, raw->b1, raw->k1, raw->k2});
        *out = {m.a, m.e1, m.e2, m.eps};
    });
}

cl_status cl_vector_field(const cl_params* p, double u, double v, double out[2]) {
    CL_REQUIRE(p && out);
    return guarded([&] { copy2(out, cl::vector_field(params(p), {u, v})); });
}

cl_status cl_nullcline_g(const cl_params* p, double u, double* out) {
    CL_REQUIRE(p && out);
    return guarded([&] { *out = cl::g(params(p), u); });
}

cl_status cl_interior_equilibrium(const cl_params* p, double margin, double* u_star) {
    CL_REQUIRE(p && u_star);
    return guarded([&] { *u_star = cl::interior_equilibrium(params(p), margin); });
}

cl_status cl_fixed_points(const cl_params* p, double margin, double out[8]) {
    CL_REQUIRE(p && out);
    return guarded([&] {
        const cl::FixedPoints fp = cl::fixed_points(params(p), margin);
        copy2(out, fp.p1);
        copy2(out + 2, fp.p2);
        copy2(out + 4, fp.p3);
        copy2(out + 6, fp.p4);
    });
}

cl_status cl_validate(const cl_params* p, double margin, cl_validation* out) {
    CL_REQUIRE(p && out);
    return guarded([&] {
        const cl::ValidationReport r = cl::validate(params(p), margin);
        *out = cl_validation{};
        out->margin = r.margin;
        out->passed = r.passed ? 1 : 0;
        out->has_u_star = r.u_star.has_value() ? 1 : 0;
        out->u_star = r.u_star.value_or(std::numeric_limits<double>::quiet_NaN());
        out->n_checks = static_cast<int>(std::min<std::size_t>(r.checks.size(), CL_MAX_CHECKS));
        for (int i = 0; i < out->n_checks; ++i) {
            const auto& c = r.checks[static_cast<std::size_t>(i)];
            std::snprintf(out->checks[i].name, sizeof out->checks[i].name, "%s", c.name.c_str());
            out->checks[i].passed = c.passed ? 1 : 0;
            out->checks[i].lhs = c.lhs;
            out->checks[i].rhs = c.rhs;
            out->checks[i].slack = c.slack;
        }
    });
}

cl_status cl_validation_text(const cl_params* p, double margin, char* buf, size_t cap, size_t* needed) {
    CL_REQUIRE(p && (buf || cap == 0));
    return guarded([&] {
        const std::string text = cl::validate(params(p), margin).to_string();
        if (needed) *needed = text.size();
        if (cap > 0) {
            const std::size_t n = std::min(cap - 1, text.size());
            std::memcpy(buf, text.data(), n);
            buf[n] = '\0';
        }
    });
}

// ---- systems ---------------------------------------------------------------

cl_status cl_system_parse(const char* text, cl_system** out) {
    CL_REQUIRE(text && out);
    *out = nullptr;
    return guarded([&] { *out = new cl_system{cl::PlanarSlowFastSystem::parse_text(text)}; });
}

cl_status cl_system_load(const char* path, cl_system** out) {
    CL_REQUIRE(path && out);
    *out = nullptr;
    return guarded([&] { *out = new cl_system{cl::PlanarSlowFastSystem::load_file(path)}; });
}

cl_status cl_system_leslie_gower(const cl_params* p, cl_system** out) {
    CL_REQUIRE(p && out);
    *out = nullptr;
    return guarded([&] { *out = new cl_system{cl::leslie_gower_system(params(p))}; });
}

void cl_system_free(cl_system* s) { delete s; }

cl_status cl_system_field(const cl_system* s, double u, double v, double out[2]) {
    CL_REQUIRE(s && out);
    return guarded([&] { copy2(out, s->system.field({u, v})); });
}

cl_status cl_system_jacobian_fast(const cl_system* s, double u, double v, double* df_du, double* df_dv) {
    CL_REQUIRE(s && df_du && df_dv);
    return guarded([&] {
        *df_du = s->system.df_du({u, v});
        *df_dv = s->system.df_dv({u, v});
    });
}

cl_status cl_system_epsilon(const cl_system* s, double* eps) {
    CL_REQUIRE(s && eps);
    *eps = s->system.epsilon();
    return CL_OK;
}

cl_status cl_system_model_params(const cl_system* s, cl_params* out) {
    CL_REQUIRE(s && out);
    return guarded([&] {
        const auto m = s->system.model_params();
        if (!m) throw cl::Error(cl::ErrorCode::InvalidArgument, "system does not declare parameters a, e1 and e2");
        *out = {m->a, m->e1, m->e2, m->eps};
    });
}

// ---- integration -----------------------------------------------------------

cl_integrator_config cl_integrator_default(void) { return from_integrator(cl::IntegratorConfig{}); }

cl_status cl_simulate(const cl_params* p, double u0, double v0, double t0, double t1, const cl_integrator_config* cfg,
                      cl_coordinates coords, cl_trajectory** out) {
    CL_REQUIRE(p && out);
    *out = nullptr;
    return guarded([&] {
        const cl::ModelParams m = params(p);
        const cl::IntegratorConfig ic = integrator(cfg);
        auto tr = std::make_unique<cl_trajectory>();
        tr->log_prey = coords == CL_COORDS_LOG_PREY;
        if (tr->log_prey && !(u0 > 0.0)) throw cl::DomainError("log-prey coordinates need u0 > 0");
        if (!(t1 >= t0)) throw cl::Error(cl::ErrorCode::InvalidArgument, "integration span must satisfy t1 >= t0");
        if (t1 > t0) {
            if (tr->log_prey) {
                auto field = [m](double, const cl::Vec2& wv) { return cl::vector_field_log_prey(m, wv); };
                tr->traj = cl::integrate(field, {std::log(u0), v0}, t0, t1, ic);
            } else {
                auto field = [m](double, const cl::Vec2& uv) { return cl::vector_field(m, uv); };
                tr->traj = cl::integrate_in_quadrant(field, {u0, v0}, t0, t1, ic);
            }
        }
        *out = tr.release();
    });
}

cl_status cl_system_simulate(const cl_system* s, double u0, double v0, double t0, double t1,
                             const cl_integrator_config* cfg, cl_trajectory** out) {
    CL_REQUIRE(s && out);
    *out = nullptr;
    return guarded([&] {
        const cl::IntegratorConfig ic = integrator(cfg);
        auto tr = std::make_unique<cl_trajectory>();
        if (!(t1 >= t0)) throw cl::Error(cl::ErrorCode::InvalidArgument, "integration span must satisfy t1 >= t0");
        if (t1 > t0) {
            const cl::PlanarSlowFastSystem* sys = &s->system;
            auto field = [sys](double, const cl::Vec2& uv) { return sys->field(uv); };
            tr->traj = cl::integrate(field, {u0, v0}, t0, t1, ic);
        }
        *out = tr.release();
    });
}

void cl_trajectory_free(cl_trajectory* tr) { delete tr; }

size_t cl_trajectory_size(const cl_trajectory* tr) { return tr ? tr->traj.size() : 0; }

cl_status cl_trajectory_sample(const cl_trajectory* tr, size_t i, double* t, double* u, double* v) {
    CL_REQUIRE(tr && t && u && v);
    if (i >= tr->traj.size()) return fail(CL_ERR_INVALID_ARGUMENT, "trajectory index out of range");
    *t = tr->traj.times()[i];
    const cl::Vec2& s = tr->traj.states()[i];
    *u = tr->log_prey ? std::exp(s[0]) : s[0];
    *v = s[1];
    return CL_OK;
}

cl_status cl_trajectory_eval(const cl_trajectory* tr, double t, double out[2]) {
    CL_REQUIRE(tr && out);
    if (tr->traj.empty()) return fail(CL_ERR_INVALID_ARGUMENT, "trajectory is empty");
    return guarded([&] {
        cl::Vec2 s = tr->traj(t);
        if (tr->log_prey) s[0] = std::exp(s[0]);
        copy2(out, s);
    });
}

cl_status cl_trajectory_write_csv(const cl_trajectory* tr, const char* path) {
    CL_REQUIRE(tr && path);
    return guarded([&] {
        cl::write_text(path, tr->log_prey ? log_trajectory_csv(tr->traj) : cl::trajectory_csv(tr->traj));
    });
}

// ---- critical manifold -----------------------------------------------------

cl_status cl_classify(const cl_params* p, const cl_system* system, double u, double v, cl_classification* out) {
    CL_REQUIRE(p && out);
    return guarded([&] {
        const cl::ModelParams m = params(p);
        const cl::Classifier c = system ? cl::Classifier(m, system->system) : cl::Classifier(m);
        *out = to_c(c.classify({u, v}));
    });
}

cl_status cl_fold_points(const cl_params* p, double out[4]) {
    CL_REQUIRE(p && out);
    return guarded([&] {
        const cl::FoldData f = cl::fold_points(params(p));
        copy2(out, f.canard_point);
        copy2(out + 2, f.jump_point);
    });
}

cl_status cl_manifold_sample(const cl_params* p, const cl_system* system, int n_per_branch, double v_max,
                             cl_manifold** out) {
    CL_REQUIRE(p && out);
    *out = nullptr;
    return guarded([&] {
        const cl::ModelParams m = params(p);
        const cl::Classifier c = system ? cl::Classifier(m, system->system) : cl::Classifier(m);
        auto mf = std::make_unique<cl_manifold>();
        mf->branches = cl::sample_manifold(c, n_per_branch, v_max);
        for (const auto& b : mf->branches) mf->flat.insert(mf->flat.end(), b.samples.begin(), b.samples.end());
        *out = mf.release();
    });
}

void cl_manifold_free(cl_manifold* m) { delete m; }

size_t cl_manifold_size(const cl_manifold* m) { return m ? m->flat.size() : 0; }

cl_status cl_manifold_get(const cl_manifold* m, size_t i, cl_classification* out) {
    CL_REQUIRE(m && out);
    if (i >= m->flat.size()) return fail(CL_ERR_INVALID_ARGUMENT, "manifold index out of range");
    *out = to_c(m->flat[i]);
    return CL_OK;
}

cl_status cl_manifold_write_csv(const cl_manifold* m, const char* path) {
    CL_REQUIRE(m && path);
    return guarded([&] { cl::write_text(path, cl::manifold_csv(m->branches)); });
}

// ---- singular cycle --------------------------------------------------------

cl_status cl_singular_cycle_build(const cl_params* p, double alpha, double k, int arc_samples,
                                  cl_singular_cycle** out) {
    CL_REQUIRE(p && out);
    *out = nullptr;
    return guarded([&] {
        auto sc = std::make_unique<cl_singular_cycle>();
        sc->sc = cl::singular_cycle(params(p), alpha, k, arc_samples);
        sc->poly = sc->sc.polyline();
        *out = sc.release();
    });
}

void cl_singular_cycle_free(cl_singular_cycle* sc) { delete sc; }

cl_status cl_singular_cycle_info_get(const cl_singular_cycle* sc, cl_singular_cycle_info* out) {
    CL_REQUIRE(sc && out);
    const cl::SingularCycle& s = sc->sc;
    *out = cl_singular_cycle_info{};
    copy2(out->a_vertex, s.a_vertex);
    copy2(out->b_vertex, s.b_vertex);
    copy2(out->c_vertex, s.c_vertex);
    copy2(out->d_vertex, s.d_vertex);
    out->alpha = s.alpha;
    out->k = s.k;
    out->c1 = s.c1;
    out->c2 = s.c2;
    out->fiber_level = s.fiber_level;
    out->u_star = s.u_star;
    out->n_points = sc->poly.size();
    return CL_OK;
}

cl_status cl_singular_cycle_points(const cl_singular_cycle* sc, double* uv, size_t cap_points) {
    CL_REQUIRE(sc && uv);
    if (cap_points < sc->poly.size()) return fail(CL_ERR_INVALID_ARGUMENT, "buffer too small for the polyline");
    for (std::size_t i = 0; i < sc->poly.size(); ++i) copy2(uv + 2 * i, sc->poly[i]);
    return CL_OK;
}

cl_status cl_singular_cycle_write_csv(const cl_singular_cycle* sc, const char* path) {
    CL_REQUIRE(sc && path);
    return guarded([&] { cl::write_text(path, cl::singular_cycle_csv(sc->sc)); });
}

// ---- blow-up ---------------------------------------------------------------

cl_status cl_blowup_constants_get(const cl_params* p, cl_blowup_constants* out) {
    CL_REQUIRE(p && out);
    return guarded([&] {
        const cl::BlowupConstants c = cl::blowup_constants(params(p));
        *out = {c.c1, c.c2};
    });
}

cl_status cl_k2_field(const cl_params* p, double x2, double y2, double r2, cl_local_order ord, double out[2]) {
    CL_REQUIRE(p && out);
    return guarded([&] { copy2(out, cl::k2_field(params(p), {x2, y2}, r2, order(ord))); });
}

cl_status cl_k2_exact(const cl_params* p, double x2_0, double y2_0, double t, double out[2]) {
    CL_REQUIRE(p && out);
    return guarded([&] { copy2(out, cl::k2_exact(params(p), x2_0, y2_0, t)); });
}

cl_status cl_k2_blowup_time(const cl_params* p, double x2_0, double* t_star) {
    CL_REQUIRE(p && t_star);
    return guarded([&] { *t_star = cl::k2_blowup_time(params(p), x2_0); });
}

cl_status cl_exit_value(const cl_params* p, double x2_0, double y2_0, double* out) {
    CL_REQUIRE(p && out);
    return guarded([&] { *out = cl::exit_value(params(p), x2_0, y2_0); });
}

cl_status cl_predict_fiber(const cl_params* p, double k, double alpha, double* v_exit) {
    CL_REQUIRE(p && v_exit);
    return guarded([&] { *v_exit = cl::predict_fiber(params(p), k, alpha); });
}

cl_k2_options cl_k2_options_default(void) {
    const cl::K2FamilyOptions o;
    cl_k2_options c{};
    c.r2 = o.r2;
    c.order = o.order == cl::LocalOrder::Full ? CL_ORDER_FULL : CL_ORDER_SECOND;
    c.x2_max = o.x2_max;
    c.integrator = from_integrator(o.integrator);
    return c;
}

cl_status cl_k2_family_compute(const cl_params* p, const double* x2_starts, size_t n_starts, double y2_0,
                               const cl_k2_options* opt, cl_k2_family** out) {
    CL_REQUIRE(p && out && (x2_starts || n_starts == 0));
    *out = nullptr;
    return guarded([&] {
        cl::K2FamilyOptions o;
        if (opt) {
            o.r2 = opt->r2;
            o.order = order(opt->order);
            o.x2_max = opt->x2_max;
            o.integrator = integrator(&opt->integrator);
        }
        auto f = std::make_unique<cl_k2_family>();
        f->orbits = cl::k2_orbit_family(params(p), std::vector<double>(x2_starts, x2_starts + n_starts), y2_0, o);
        *out = f.release();
    });
}

void cl_k2_family_free(cl_k2_family* f) { delete f; }

size_t cl_k2_family_size(const cl_k2_family* f) { return f ? f->orbits.size() : 0; }

cl_status cl_k2_orbit_info_get(const cl_k2_family* f, size_t orbit, cl_k2_orbit_info* out) {
    CL_REQUIRE(f && out);
    if (orbit >= f->orbits.size()) return fail(CL_ERR_INVALID_ARGUMENT, "orbit index out of range");
    const cl::K2Orbit& o = f->orbits[orbit];
    *out = {o.x2_0, o.y2_0, o.t_star, o.trajectory.size()};
    return CL_OK;
}

cl_status cl_k2_orbit_point(const cl_k2_family* f, size_t orbit, size_t i, double* t, double* x2, double* y2) {
    CL_REQUIRE(f && t && x2 && y2);
    if (orbit >= f->orbits.size()) return fail(CL_ERR_INVALID_ARGUMENT, "orbit index out of range");
    const cl::Trajectory& tr = f->orbits[orbit].trajectory;
    if (i >= tr.size()) return fail(CL_ERR_INVALID_ARGUMENT, "point index out of range");
    *t = tr.times()[i];
    *x2 = tr.states()[i][0];
    *y2 = tr.states()[i][1];
    return CL_OK;
}

cl_status cl_k2_family_write_csv(const cl_k2_family* f, const char* path) {
    CL_REQUIRE(f && path);
    return guarded([&] { cl::write_text(path, cl::k2_family_csv(f->orbits)); });
}

// ---- limit cycles ----------------------------------------------------------

cl_cycle_config cl_cycle_config_default(void) {
    const cl::CycleConfig d;
    cl_cycle_config c{};
    c.integrator = from_integrator(d.integrator);
    c.tolerance = d.tolerance;
    c.max_returns = d.max_returns;
    c.min_samples = d.min_samples;
    c.return_horizon = d.return_horizon;
    return c;
}

cl_status cl_cycle_find(const cl_params* p, double alpha, const cl_cycle_config* cfg, cl_cycle** out) {
    CL_REQUIRE(p && out);
    *out = nullptr;
    return guarded([&] {
        auto c = std::make_unique<cl_cycle>();
        c->p = params(p);
        c->cycle = cl::find_limit_cycle(c->p, alpha, cycle_config(cfg));
        c->descent = cl::descent_depth(c->p, c->cycle);
        c->k_fiber = cl::fiber_k(c->p, c->cycle);
        *out = c.release();
    });
}

void cl_cycle_free(cl_cycle* c) { delete c; }

cl_status cl_cycle_summary_get(const cl_cycle* c, cl_cycle_summary* out) {
    CL_REQUIRE(c && out);
    const cl::LimitCycle& lc = c->cycle;
    *out = cl_cycle_summary{};
    out->eps = lc.eps;
    out->alpha = lc.alpha;
    out->period = lc.period;
    out->section_level = lc.section_level;
    out->ln_u_cross = lc.ln_u_cross;
    out->u_cross = lc.u_cross;
    out->k_hat = cl::crossing_k(lc);
    out->ln_k_hat = cl::ln_crossing_k(lc);
    out->v_fiber = c->descent.v_fiber;
    out->descent = c->descent.depth;
    out->k_fiber = c->k_fiber;
    out->returns = lc.returns;
    out->n_samples = lc.samples.size();
    out->n_separations = lc.separations.size();
    return CL_OK;
}

cl_status cl_cycle_sample(const cl_cycle* c, size_t i, double* t, double* u, double* v, double* ln_u) {
    CL_REQUIRE(c && t && u && v && ln_u);
    if (i >= c->cycle.samples.size()) return fail(CL_ERR_INVALID_ARGUMENT, "sample index out of range");
    const cl::CycleSample& s = c->cycle.samples[i];
    *t = s.t;
    *u = s.u;
    *v = s.v;
    *ln_u = s.ln_u;
    return CL_OK;
}

cl_status cl_cycle_separation(const cl_cycle* c, size_t i, double* out) {
    CL_REQUIRE(c && out);
    if (i >= c->cycle.separations.size()) return fail(CL_ERR_INVALID_ARGUMENT, "separation index out of range");
    *out = c->cycle.separations[i];
    return CL_OK;
}

cl_status cl_cycle_canard_arc_extent(const cl_cycle* c, double ln_u_threshold, double v_low, double v_high,
                                     double* out) {
    CL_REQUIRE(c && out);
    return guarded([&] { *out = cl::canard_arc_extent(c->cycle, ln_u_threshold, v_low, v_high); });
}

cl_status cl_cycle_write_csv(const cl_cycle* c, const char* path) {
    CL_REQUIRE(c && path);
    return guarded([&] { cl::write_text(path, cl::cycle_csv(c->cycle)); });
}

cl_status cl_poincare_map(const cl_params* p, double alpha, double ln_u, double v, const cl_cycle_config* cfg,
                          double out[2], double* return_time) {
    CL_REQUIRE(p && out);
    return guarded([&] {
        const cl::ModelParams m = params(p);
        const cl::PoincareReturn r = cl::poincare_map(m, cl::cycle_section(m, alpha), {ln_u, v}, cycle_config(cfg));
        copy2(out, r.point);
        if (return_time) *return_time = r.time;
    });
}

cl_status cl_hausdorff(const double* a_uv, size_t n_a, const double* b_uv, size_t n_b, double* out) {
    CL_REQUIRE(a_uv && b_uv && out && n_a > 0 && n_b > 0);
    return guarded([&] {
        std::vector<cl::Vec2> a(n_a), b(n_b);
        for (std::size_t i = 0; i < n_a; ++i) a[i] = {a_uv[2 * i], a_uv[2 * i + 1]};
        for (std::size_t i = 0; i < n_b; ++i) b[i] = {b_uv[2 * i], b_uv[2 * i + 1]};
        *out = cl::hausdorff(a, b);
    });
}

// ---- sweep -----------------------------------------------------------------

cl_sweep_options cl_sweep_options_default(void) {
    const cl::StudyOptions d;
    cl_sweep_options o{};
    o.cycle = cl_cycle_config_default();
    o.parallel = d.parallel;
    o.hausdorff_spacing = d.hausdorff_spacing;
    return o;
}

cl_status cl_sweep_run(const cl_params* p, double alpha, const double* eps_list, size_t n_eps,
                       const cl_sweep_options* opt, cl_sweep** out) {
    CL_REQUIRE(p && out && (eps_list || n_eps == 0));
    *out = nullptr;
    return guarded([&] {
        cl::StudyOptions o;
        if (opt) {
            o.cycle = cycle_config(&opt->cycle);
            o.parallel = opt->parallel;
            o.hausdorff_spacing = opt->hausdorff_spacing;
        }
        auto s = std::make_unique<cl_sweep>();
        s->study = cl::convergence_study(params(p), alpha, std::vector<double>(eps_list, eps_list + n_eps), o);
        *out = s.release();
    });
}

void cl_sweep_free(cl_sweep* s) { delete s; }

cl_status cl_sweep_summary_get(const cl_sweep* s, cl_sweep_summary* out) {
    CL_REQUIRE(s && out);
    const cl::ConvergenceStudy& st = s->study;
    *out = {st.alpha,
            st.reference_k,
            st.slope,
            st.distances_decreasing ? 1 : 0,
            st.slope_in_band ? 1 : 0,
            st.slope_flagged ? 1 : 0,
            st.rows.size()};
    return CL_OK;
}

cl_status cl_sweep_row_get(const cl_sweep* s, size_t i, cl_sweep_row* out) {
    CL_REQUIRE(s && out);
    if (i >= s->study.rows.size()) return fail(CL_ERR_INVALID_ARGUMENT, "row index out of range");
    const cl::ConvergenceRow& r = s->study.rows[i];
    *out = {r.eps, r.distance, r.k_hat, r.ln_k_hat, r.descent, r.k_fiber, r.period};
    return CL_OK;
}

cl_status cl_sweep_write_csv(const cl_sweep* s, const char* path) {
    CL_REQUIRE(s && path);
    return guarded([&] { cl::write_text(path, cl::convergence_csv(s->study)); });
}

cl_status cl_sweep_write_json(const cl_sweep* s, const char* path) {
    CL_REQUIRE(s && path);
    return guarded([&] { cl::write_text(path, cl::convergence_json(s->study)); });
}

cl_status cl_sweep_reference(const cl_sweep* s, cl_singular_cycle** out) {
    CL_REQUIRE(s && out);
    *out = nullptr;
    return guarded([&] {
        auto sc = std::make_unique<cl_singular_cycle>();
        sc->sc = s->study.reference;
        sc->poly = sc->sc.polyline();
        *out = sc.release();
    });
}

}  // extern "C"
