#pragma once

// Text-defined planar slow-fast systems
//
//   u' = f(u, v)          (fast)
//   v' = eps * h(u, v)    (slow)
//
// File format, one statement per line, '#' starts a comment:
//
//   param <name> = <number>
//   fast = <expr>
//   slow = <expr>
//   epsilon = <number>
//   domain = <umin> <umax> <vmin> <vmax>     (optional)

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "canardlab/expr.hpp"
#include "canardlab/model.hpp"
#include "canardlab/types.hpp"

namespace canardlab {

class PlanarSlowFastSystem {
public:
    /// Binds both expressions against u, v and the parameter names.
    PlanarSlowFastSystem(Expr fast, Expr slow, Environment params, double eps,
                         std::optional<std::array<double, 4>> domain = std::nullopt);

    static PlanarSlowFastSystem parse_text(std::string_view text);
    static PlanarSlowFastSystem load_file(const std::filesystem::path& path);

    const Expr& fast() const { return fast_; }
    const Expr& slow() const { return slow_; }
    const Environment& params() const { return params_; }
    double epsilon() const { return eps_; }
    const std::optional<std::array<double, 4>>& domain() const { return domain_; }

    std::optional<double> param(std::string_view name) const;

    double f(const Vec2& s) const;
    double h(const Vec2& s) const;
    /// Full field (f, eps·h).
    Vec2 field(const Vec2& s) const;

    /// Partial derivatives of f by forward-mode AD.
    double df_du(const Vec2& s) const;
    double df_dv(const Vec2& s) const;

    /// Leslie-Gower parameters if the system declares a, e1 and e2.
    std::optional<ModelParams> model_params() const;

private:
    Expr fast_;
    Expr slow_;
    Expr fast_bound_;
    Expr slow_bound_;
    Environment params_;
    std::vector<double> param_values_;
    double eps_;
    std::optional<std::array<double, 4>> domain_;

    template <class T>
    std::vector<T> slots(const T& u, const T& v) const;
};

inline constexpr const char* kLeslieGowerFast = "u*(1-u) - a*u*v/(u+e1)";
inline constexpr const char* kLeslieGowerSlow = "v*(1 - v/(u+e2))";

/// The Leslie-Gower system written in the text DSL.
PlanarSlowFastSystem leslie_gower_system(const ModelParams& p);

/// Text of a system file equivalent to `leslie_gower_system(p)`.
std::string leslie_gower_source(const ModelParams& p);

}  // namespace canardlab
