#pragma once

#include <filesystem>

#include "parl/harness/metrics.hpp"
#include "parl/harness/run_config.hpp"

namespace parl {

/// Runs the configured experiment, one directory per seed under
/// config.out_dir: training metrics CSV, eval report JSON, smoothed-curve
/// SVG, the trained artifact, a resolved-config snapshot, and (for PARL
/// runs) the transcript JSONL. Distinct seeds run on a bounded worker pool.
void run_experiment(const RunConfig& config);

/// Evaluates a trained artifact (prompt policy or baseline parameters) for
/// config.eval_episodes greedy episodes.
EvalReport evaluate(const RunConfig& config, const std::filesystem::path& artifact);

}  // namespace parl
