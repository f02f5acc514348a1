#pragma once

// Deterministic text artifacts.  Numbers are written with 17 significant
// digits in scientific notation, '.' decimal point, ',' separator and '\n'
// line endings.

#include <filesystem>
#include <string>
#include <vector>

#include "canardlab/blowup.hpp"
#include "canardlab/cycle.hpp"
#include "canardlab/gspt.hpp"
#include "canardlab/integrate.hpp"

namespace canardlab {

std::string format_number(double x);

/// Columns t,u,v.
std::string trajectory_csv(const Trajectory& traj);

/// Columns branch,u,v,fprime_u,tag.
std::string manifold_csv(const std::vector<ManifoldBranch>& branches);

/// Columns point,u,v,tag for the closed polyline of γ'.
std::string singular_cycle_csv(const SingularCycle& sc);

/// Columns t,u,v,ln_u.
std::string cycle_csv(const LimitCycle& cycle);

/// Columns orbit,t,x2,y2.
std::string k2_family_csv(const std::vector<K2Orbit>& family);

/// Columns eps,d,k_hat,D_hat,ln_k_hat,k_fiber,period.
std::string convergence_csv(const ConvergenceStudy& study);

/// JSON summary with the fitted slope and pass/fail flags.
std::string convergence_json(const ConvergenceStudy& study);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace canardlab
