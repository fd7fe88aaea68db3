#include "floodga/kernels.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cstddef>

#include "floodga/errors.hpp"

namespace floodga {

GenomeEvaluator::GenomeEvaluator(const Scenario& scenario, const WeightVector& weights, const FitnessConfig& cfg)
    : weights_(weights), cfg_(cfg) {
  cfg_.validate();
  barangays_.reserve(scenario.barangays.size());
  for (const auto& b : scenario.barangays) barangays_.push_back({b.s_factor, b.static_values});
}

Evaluation GenomeEvaluator::evaluate(const Genome& genome) const {
  if (genome.size() != genome_length()) {
    throw DimensionError(fmt::format("genome has {} genes, evaluator expects {}", genome.size(), genome_length()));
  }
  Evaluation e;
  std::array<int, kNumChromosomes> x{};
  for (std::size_t i = 0; i < barangays_.size(); ++i) {
    const auto genes = genome.barangay(i);
    std::copy(genes.begin(), genes.end(), x.begin());
    std::copy(barangays_[i].static_values.begin(), barangays_[i].static_values.end(), x.begin() + kNumDynamic);
    e.vulnerability += detail::vulnerability_of(x, barangays_[i].s_factor, weights_, cfg_.scale);
    e.cost += detail::cost_of(x, barangays_[i].s_factor);
  }
  e.fitness = scalarized_fitness(e.vulnerability, e.cost, cfg_);
  return e;
}

void evaluate_population_serial(const GenomeEvaluator& evaluator, std::span<const Genome> population,
                                std::span<Evaluation> out) {
  for (std::size_t i = 0; i < population.size(); ++i) out[i] = evaluator.evaluate(population[i]);
}

void evaluate_population_omp(const GenomeEvaluator& evaluator, std::span<const Genome> population,
                             std::span<Evaluation> out) {
  const auto n = static_cast<std::ptrdiff_t>(population.size());
  // Lengths are checked up front so the parallel loop cannot throw.
  for (const auto& g : population) {
    if (g.size() != evaluator.genome_length()) {
      throw DimensionError(fmt::format("genome has {} genes, evaluator expects {}", g.size(), evaluator.genome_length()));
    }
  }
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = evaluator.evaluate(population[i]);
}

void evaluate_population(Backend backend, const GenomeEvaluator& evaluator, std::span<const Genome> population,
                         std::span<Evaluation> out) {
  if (out.size() < population.size()) throw DimensionError("evaluation buffer smaller than population");
  if (backend == Backend::OpenMP) {
    evaluate_population_omp(evaluator, population, out);
  } else {
    evaluate_population_serial(evaluator, population, out);
  }
}

}  // namespace floodga
