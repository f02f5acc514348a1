#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "canardlab/canardlab.h"
#include "config.hpp"

namespace canardlab::cli {

enum ExitCode { kExitOk = 0, kExitNumerical = 1, kExitUsage = 2 };

/// A failed C API call, carrying the status and the library's message.
class ApiFailure : public std::runtime_error {
public:
    ApiFailure(cl_status s, const std::string& what) : std::runtime_error(what), status(s) {}
    cl_status status;
};

/// Throws ApiFailure unless `s` is CL_OK.
void check(cl_status s, const char* context);

int exit_code_for(cl_status s);

/// Values given on the command line; unset ones fall back to the config file.
struct Flags {
    std::string config_path;
    std::string out_dir;
    std::optional<double> eps;
    std::optional<double> alpha;
    std::optional<double> rtol;
    std::optional<double> atol_u;
    std::optional<double> atol_v;
    std::optional<std::uint64_t> seed;
    std::optional<int> parallel;
    bool plot = false;

    // subcommand-specific
    std::optional<double> u0, v0, t0, t1;
    std::optional<int> points;
    std::optional<double> r2;
    std::optional<double> k;
    std::vector<double> eps_list;
    std::string coords;
};

enum class ModelSource { Default, Inline, Raw, System };

struct SimulateOptions {
    double u0 = 0.5;
    double v0 = 0.3;
    double t0 = 0.0;
    double t1 = 2000.0;
    std::string coords = "auto";  ///< auto | plain | log
};

struct ManifoldOptions {
    int points = 201;  ///< per branch
    double v_max = 0.4;
};

struct CycleOptions {
    cl_cycle_config config{};
    int random_starts = 0;
};

struct BlowupOptions {
    std::vector<double> x2_starts{0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
    double y2_0 = 0.0;
    cl_k2_options k2{};
};

struct SweepOptions {
    std::vector<double> eps_list{1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
    cl_sweep_options sweep{};
};

struct SingularCycleOptions {
    std::optional<double> k;
    int arc_samples = 512;
    double k_eps = 1e-4;  ///< eps of the cycle measured when k is not given
};

/// Fully resolved run configuration.
struct RunConfig {
    std::string subcommand;
    std::string config_path;
    ModelSource source = ModelSource::Default;
    cl_params params{1.0, 0.08, 0.01, 0.01};
    bool has_params = true;
    cl_raw_params raw{};
    std::filesystem::path system_path;
    double margin = CL_DEFAULT_MARGIN;
    double alpha = 0.0;

    struct IntegratorOverrides {
        std::optional<double> rtol, atol_u, atol_v, max_step;
        std::optional<long long> max_steps;
    } overrides;

    SimulateOptions simulate;
    ManifoldOptions manifold;
    CycleOptions cycle;
    BlowupOptions blowup;
    SweepOptions sweep;
    SingularCycleOptions singular;

    std::filesystem::path out_dir = "canardlab_out";
    std::uint64_t seed = 0;
    int parallel = 1;
    bool plot = false;

    /// Applies the --rtol/--atol-* overrides (if any) to a command's own defaults.
    cl_integrator_config tuned(cl_integrator_config base) const;
};

/// Merges config file, flags and the CANARDLAB_OUT override.  Throws
/// ConfigError for usage problems.
RunConfig resolve(const std::string& subcommand, const Flags& flags);

nlohmann::ordered_json params_json(const cl_params& p);
nlohmann::ordered_json integrator_json(const cl_integrator_config& c);
nlohmann::ordered_json model_json(const RunConfig& rc);

}  // namespace canardlab::cli
