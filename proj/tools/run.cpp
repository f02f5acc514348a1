#include "run.hpp"

#include <cstdlib>

namespace canardlab::cli {

void check(cl_status s, const char* context) {
    if (s == CL_OK) return;
    throw ApiFailure(s, std::string(context) + ": " + cl_status_string(s) + ": " + cl_last_error_message());
}

int exit_code_for(cl_status s) {
    switch (s) {
        case CL_OK: return kExitOk;
        case CL_ERR_INVALID_ARGUMENT:
        case CL_ERR_VALIDATION:
        case CL_ERR_PARSE:
        case CL_ERR_IO:
        case CL_ERR_GEOMETRY: return kExitUsage;
        default: return kExitNumerical;
    }
}

namespace {

const std::vector<std::string> kKnownKeys = {
    "model.a", "model.e1", "model.e2", "model.eps", "model.margin", "model.system",
    "raw.r1", "raw.r2", "raw.a1", "raw.a2", "raw.b1", "raw.k1", "raw.k2",
    "integrator.rtol", "integrator.atol_u", "integrator.atol_v", "integrator.max_step", "integrator.max_steps",
    "simulate.u0", "simulate.v0", "simulate.t0", "simulate.t1", "simulate.coords",
    "manifold.points", "manifold.v_max",
    "cycle.alpha", "cycle.tolerance", "cycle.max_returns", "cycle.min_samples", "cycle.return_horizon",
    "cycle.random_starts",
    "blowup.x2_starts", "blowup.y2_0", "blowup.r2", "blowup.order", "blowup.x2_max",
    "sweep.eps_list", "sweep.hausdorff_spacing",
    "singular-cycle.k", "singular-cycle.arc_samples", "singular-cycle.k_eps",
    "output.dir", "output.plot", "output.seed", "output.parallel",
};

template <class T>
void take(T& dst, const std::optional<T>& v) {
    if (v) dst = *v;
}

int to_int(long long x, const char* what) {
    if (x < 0 || x > 1'000'000'000) throw ConfigError(std::string(what) + " is out of range");
    return static_cast<int>(x);
}

double require(const Config& c, const char* section, const char* key) {
    const auto v = c.number(section, key);
    if (!v) throw ConfigError(std::string("missing ") + section + "." + key);
    return *v;
}

void resolve_model(RunConfig& rc, const Config& c, const Flags& f) {
    const bool inline_given = c.has("model", "a") || c.has("model", "e1") || c.has("model", "e2");
    const bool raw_given = c.has("raw", "r1") || c.has("raw", "r2") || c.has("raw", "a1") || c.has("raw", "a2") ||
                           c.has("raw", "b1") || c.has("raw", "k1") || c.has("raw", "k2");
    const bool system_given = c.has("model", "system");
    if (int(inline_given) + int(raw_given) + int(system_given) > 1) {
        throw ConfigError("give exactly one of inline parameters, [raw] rates or model.system");
    }

    if (inline_given) {
        rc.source = ModelSource::Inline;
        rc.params.a = require(c, "model", "a");
        rc.params.e1 = require(c, "model", "e1");
        rc.params.e2 = require(c, "model", "e2");
        take(rc.params.eps, c.number("model", "eps"));
    } else if (raw_given) {
        rc.source = ModelSource::Raw;
        if (c.has("model", "eps")) throw ConfigError("model.eps cannot be combined with [raw]; eps = r2/r1");
        rc.raw = {require(c, "raw", "r1"), require(c, "raw", "r2"), require(c, "raw", "a1"), require(c, "raw", "a2"),
                  require(c, "raw", "b1"), require(c, "raw", "k1"), require(c, "raw", "k2")};
        const cl_status s = cl_nondimensionalize(&rc.raw, &rc.params);
        if (s != CL_OK) throw ConfigError(std::string("[raw]: ") + cl_last_error_message());
    } else if (system_given) {
        rc.source = ModelSource::System;
        std::filesystem::path path = *c.text("model", "system");
        if (path.is_relative()) path = c.base_dir() / path;
        rc.system_path = path;
        if (c.has("model", "eps")) throw ConfigError("model.eps cannot be combined with model.system; use 'epsilon' in the system file");
        cl_system* sys = nullptr;
        check(cl_system_load(path.string().c_str(), &sys), "loading system");
        rc.has_params = cl_system_model_params(sys, &rc.params) == CL_OK;
        cl_system_free(sys);
    } else {
        take(rc.params.eps, c.number("model", "eps"));
    }
    if (f.eps) {
        if (rc.source == ModelSource::System) throw ConfigError("--eps cannot override a system file");
        rc.params.eps = *f.eps;
    }
    take(rc.margin, c.number("model", "margin"));
    if (rc.has_params) {
        const cl_status s = cl_params_check(&rc.params);
        if (s != CL_OK) throw ConfigError(std::string("model parameters: ") + cl_last_error_message());
    }
}

}  // namespace

cl_integrator_config RunConfig::tuned(cl_integrator_config base) const {
    take(base.rtol, overrides.rtol);
    take(base.atol_u, overrides.atol_u);
    take(base.atol_v, overrides.atol_v);
    take(base.max_step, overrides.max_step);
    take(base.max_steps, overrides.max_steps);
    return base;
}

RunConfig resolve(const std::string& subcommand, const Flags& f) {
    Config c;
    if (!f.config_path.empty()) {
        c = Config::load(f.config_path);
        c.reject_unknown(kKnownKeys);
    }

    RunConfig rc;
    rc.subcommand = subcommand;
    rc.config_path = f.config_path;
    resolve_model(rc, c, f);

    take(rc.alpha, c.number("cycle", "alpha"));
    take(rc.alpha, f.alpha);
    if (!(rc.alpha >= 0.0)) throw ConfigError("alpha must be non-negative");

    auto& o = rc.overrides;
    o.rtol = f.rtol ? f.rtol : c.number("integrator", "rtol");
    o.atol_u = f.atol_u ? f.atol_u : c.number("integrator", "atol_u");
    o.atol_v = f.atol_v ? f.atol_v : c.number("integrator", "atol_v");
    o.max_step = c.number("integrator", "max_step");
    o.max_steps = c.integer("integrator", "max_steps");
    for (const auto& v : {o.rtol, o.atol_u, o.atol_v, o.max_step}) {
        if (v && !(*v > 0.0)) throw ConfigError("integrator tolerances and max_step must be positive");
    }
    if (o.max_steps && *o.max_steps <= 0) throw ConfigError("integrator.max_steps must be positive");

    auto& sim = rc.simulate;
    take(sim.u0, c.number("simulate", "u0"));
    take(sim.v0, c.number("simulate", "v0"));
    take(sim.t0, c.number("simulate", "t0"));
    take(sim.t1, c.number("simulate", "t1"));
    take(sim.coords, c.text("simulate", "coords"));
    take(sim.u0, f.u0);
    take(sim.v0, f.v0);
    take(sim.t0, f.t0);
    take(sim.t1, f.t1);
    if (!f.coords.empty()) sim.coords = f.coords;
    if (sim.coords != "auto" && sim.coords != "plain" && sim.coords != "log") {
        throw ConfigError("coords must be auto, plain or log");
    }
    if (!(sim.t1 >= sim.t0)) throw ConfigError("simulate span must satisfy t1 >= t0");

    auto& man = rc.manifold;
    if (auto n = c.integer("manifold", "points")) man.points = to_int(*n, "manifold.points");
    if (f.points) man.points = *f.points;
    take(man.v_max, c.number("manifold", "v_max"));
    if (man.points < 2) throw ConfigError("manifold points must be at least 2");
    if (!(man.v_max > 0.0)) throw ConfigError("manifold.v_max must be positive");

    auto& cyc = rc.cycle;
    cyc.config = cl_cycle_config_default();
    cyc.config.integrator = rc.tuned(cyc.config.integrator);
    take(cyc.config.tolerance, c.number("cycle", "tolerance"));
    if (auto n = c.integer("cycle", "max_returns")) cyc.config.max_returns = to_int(*n, "cycle.max_returns");
    if (auto n = c.integer("cycle", "min_samples")) cyc.config.min_samples = static_cast<size_t>(to_int(*n, "cycle.min_samples"));
    take(cyc.config.return_horizon, c.number("cycle", "return_horizon"));
    if (auto n = c.integer("cycle", "random_starts")) cyc.random_starts = to_int(*n, "cycle.random_starts");

    auto& bl = rc.blowup;
    bl.k2 = cl_k2_options_default();
    take(bl.x2_starts, c.numbers("blowup", "x2_starts"));
    take(bl.y2_0, c.number("blowup", "y2_0"));
    take(bl.k2.r2, c.number("blowup", "r2"));
    take(bl.k2.r2, f.r2);
    if (!(bl.k2.r2 >= 0.0)) throw ConfigError("r2 must be non-negative");
    if (auto ord = c.text("blowup", "order")) {
        if (*ord == "full") {
            bl.k2.order = CL_ORDER_FULL;
        } else if (*ord == "second") {
            bl.k2.order = CL_ORDER_SECOND;
        } else {
            throw ConfigError("blowup.order must be full or second");
        }
    }
    take(bl.k2.x2_max, c.number("blowup", "x2_max"));
    bl.k2.integrator = rc.tuned(bl.k2.integrator);

    auto& sw = rc.sweep;
    sw.sweep = cl_sweep_options_default();
    sw.sweep.cycle = cyc.config;
    take(sw.eps_list, c.numbers("sweep", "eps_list"));
    if (!f.eps_list.empty()) sw.eps_list = f.eps_list;
    take(sw.sweep.hausdorff_spacing, c.number("sweep", "hausdorff_spacing"));

    auto& sc = rc.singular;
    sc.k = c.number("singular-cycle", "k");
    if (f.k) sc.k = f.k;
    if (auto n = c.integer("singular-cycle", "arc_samples")) sc.arc_samples = to_int(*n, "singular-cycle.arc_samples");
    take(sc.k_eps, c.number("singular-cycle", "k_eps"));

    if (auto d = c.text("output", "dir")) {
        rc.out_dir = *d;
        if (rc.out_dir.is_relative()) rc.out_dir = c.base_dir() / rc.out_dir;
    }
    if (!f.out_dir.empty()) rc.out_dir = f.out_dir;
    if (const char* env = std::getenv("CANARDLAB_OUT"); env != nullptr && *env != '\0') rc.out_dir = env;
    take(rc.plot, c.boolean("output", "plot"));
    if (f.plot) rc.plot = true;
    if (auto s = c.integer("output", "seed")) {
        if (*s < 0) throw ConfigError("output.seed must be non-negative");
        rc.seed = static_cast<std::uint64_t>(*s);
    }
    take(rc.seed, f.seed);
    if (auto n = c.integer("output", "parallel")) rc.parallel = to_int(*n, "output.parallel");
    take(rc.parallel, f.parallel);
    if (rc.parallel < 1) throw ConfigError("parallel must be at least 1");
    sw.sweep.parallel = rc.parallel;

    std::error_code ec;
    std::filesystem::create_directories(rc.out_dir, ec);
    if (ec || !std::filesystem::is_directory(rc.out_dir)) {
        throw ConfigError("cannot create output directory '" + rc.out_dir.string() + "'");
    }
    return rc;
}

nlohmann::ordered_json params_json(const cl_params& p) {
    return {{"a", p.a}, {"e1", p.e1}, {"e2", p.e2}, {"eps", p.eps}};
}

nlohmann::ordered_json integrator_json(const cl_integrator_config& c) {
    nlohmann::ordered_json j;
    j["rtol"] = c.rtol;
    j["atol_u"] = c.atol_u;
    j["atol_v"] = c.atol_v;
    if (c.max_step > 0.0 && c.max_step < 1e300) {
        j["max_step"] = c.max_step;
    } else {
        j["max_step"] = nullptr;
    }
    j["max_steps"] = c.max_steps;
    return j;
}

nlohmann::ordered_json model_json(const RunConfig& rc) {
    nlohmann::ordered_json j;
    switch (rc.source) {
        case ModelSource::Default: j["source"] = "default"; break;
        case ModelSource::Inline: j["source"] = "inline"; break;
        case ModelSource::Raw:
            j["source"] = "raw";
            j["raw"] = {{"r1", rc.raw.r1}, {"r2", rc.raw.r2}, {"a1", rc.raw.a1}, {"a2", rc.raw.a2},
                        {"b1", rc.raw.b1}, {"k1", rc.raw.k1}, {"k2", rc.raw.k2}};
            break;
        case ModelSource::System:
            j["source"] = "system";
            j["system"] = rc.system_path.generic_string();
            break;
    }
    if (rc.has_params) {
        j["params"] = params_json(rc.params);
    } else {
        j["params"] = nullptr;
    }
    j["margin"] = rc.margin;
    return j;
}

}  // namespace canardlab::cli
