#pragma once

// Matplotlib scripts for the figures.  The scripts read the CSV files that
// sit next to them and hold no data of their own.

#include <string>

namespace canardlab::cli {

std::string simulate_plot_script();
std::string manifold_plot_script();
std::string cycle_plot_script();
std::string blowup_plot_script();
std::string sweep_plot_script();
std::string singular_cycle_plot_script();

}  // namespace canardlab::cli
