#pragma once

#include <span>
#include <string>
#include <vector>

#include "floodga/ga.hpp"
#include "floodga/objective.hpp"
#include "floodga/scenario.hpp"
#include "floodga/weights.hpp"

namespace floodga {

/// Percentages are positive when the quantity decreased.
struct SweepResult {
  std::string label;
  WeightVector weights;
  RunResult run;
  double initial_v = 0.0;
  double initial_c = 0.0;
  double delta_v_percent = 0.0;
  double delta_c_percent = 0.0;
};

/// Fitness coefficients for a sweep; baselines are recomputed per weight set.
struct SweepConfig {
  double alpha = 1.0;
  double beta = 1.0;
  double scale = 1.0;
  /// Run the 3n + 1 GA runs concurrently (each run then evaluates serially).
  bool parallel_runs = true;
};

/// One GA run per weight set from generate_weight_sets. Run i uses seed
/// params.seed + i. Results keep weight-set order ("original" first). A failing
/// run aborts the sweep with its label in the message.
std::vector<SweepResult> sweep(const Scenario& scenario, const RatingMatrix& ratings,
                               const AspectPercentages& shares, const SweepConfig& cfg,
                               const GAParams& params);

/// Single entry of a sweep: GA under `weights`, with deltas against the
/// scenario's own design.
SweepResult run_weight_set(const Scenario& scenario, const LabeledWeights& weights,
                           const SweepConfig& cfg, const GAParams& params);

enum class RankCriterion { ByVulnerability, ByCost };

/// Descending by the chosen delta; ties by label. Throws ConfigError on empty input.
std::vector<SweepResult> rank(std::span<const SweepResult> results, RankCriterion criterion);

}  // namespace floodga
