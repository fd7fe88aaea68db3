#include "floodga/sensitivity.hpp"

#include <algorithm>
#include <exception>

#include "floodga/errors.hpp"

namespace floodga {

SweepResult run_weight_set(const Scenario& scenario, const LabeledWeights& weights, const SweepConfig& cfg,
                           const GAParams& params) {
  const auto fitness = FitnessConfig::relative_to(scenario, weights.weights, cfg.alpha, cfg.beta, cfg.scale);
  SweepResult r;
  r.label = weights.label;
  r.weights = weights.weights;
  r.initial_v = fitness.baseline_v;
  r.initial_c = fitness.baseline_c;
  r.run = run(scenario, weights.weights, fitness, params);
  r.delta_v_percent = 100.0 * (r.initial_v - r.run.best_v) / r.initial_v;
  r.delta_c_percent = 100.0 * (r.initial_c - r.run.best_c) / r.initial_c;
  return r;
}

std::vector<SweepResult> sweep(const Scenario& scenario, const RatingMatrix& ratings,
                               const AspectPercentages& shares, const SweepConfig& cfg, const GAParams& params) {
  params.validate();
  const auto sets = generate_weight_sets(ratings, shares);
  const auto n = static_cast<std::ptrdiff_t>(sets.size());
  std::vector<SweepResult> results(sets.size());
  std::vector<std::exception_ptr> failures(sets.size());

  auto one = [&](std::ptrdiff_t i, Backend backend) {
    GAParams p = params;
    p.seed = params.seed + static_cast<std::uint64_t>(i);
    p.backend = backend;
    try {
      results[static_cast<std::size_t>(i)] = run_weight_set(scenario, sets[static_cast<std::size_t>(i)], cfg, p);
    } catch (...) {
      failures[static_cast<std::size_t>(i)] = std::current_exception();
    }
  };

  if (cfg.parallel_runs) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) one(i, Backend::Serial);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) one(i, params.backend);
  }

  // Report the first failure in weight-set order, not completion order.
  for (std::size_t i = 0; i < failures.size(); ++i) {
    if (!failures[i]) continue;
    std::string what = "unknown error";
    try {
      std::rethrow_exception(failures[i]);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    throw SweepError(sets[i].label, what, failures[i]);
  }
  return results;
}

std::vector<SweepResult> rank(std::span<const SweepResult> results, RankCriterion criterion) {
  if (results.empty()) throw ConfigError("nothing to rank");
  std::vector<SweepResult> out(results.begin(), results.end());
  auto key = [criterion](const SweepResult& r) {
    return criterion == RankCriterion::ByVulnerability ? r.delta_v_percent : r.delta_c_percent;
  };
  std::sort(out.begin(), out.end(), [&](const SweepResult& a, const SweepResult& b) {
    if (key(a) != key(b)) return key(a) > key(b);
    return a.label < b.label;
  });
  return out;
}

}  // namespace floodga
