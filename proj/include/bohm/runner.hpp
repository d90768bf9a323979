#ifndef BOHM_RUNNER_HPP
#define BOHM_RUNNER_HPP

#include "bohm/config.hpp"

namespace bohm {

/// Executes the configured scenario, writes trajectories.csv,
/// density_t<k>.csv, results.csv (where applicable), report.json and SVG
/// plots into config.out_dir. Returns 0 when every gate passes, 1 on gate
/// failure. Configuration problems surface as ConfigError/ConfigErrors.
int run(const RunConfig& config);

} // namespace bohm

#endif
