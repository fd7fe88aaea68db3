#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "floodga/kernels.hpp"
#include "floodga/objective.hpp"
#include "floodga/rng.hpp"
#include "floodga/scenario.hpp"
#include "floodga/weights.hpp"

namespace floodga {

enum class CrossoverKind { Uniform, OnePoint };

struct GAParams {
  int population_size = 100;
  int generations = 200;
  double crossover_rate = 0.9;
  double mutation_rate_per_bit = 0.01;
  int tournament_size = 3;
  int elite_count = 2;
  std::uint64_t seed = 42;
  CrossoverKind crossover = CrossoverKind::Uniform;
  bool seed_initial_with_scenario = true;
  Backend backend = Backend::OpenMP;

  /// Throws ConfigError naming the first out-of-range field.
  void validate() const;
};

struct RunResult {
  Genome best_genome;
  double best_fitness = 0.0;
  double best_v = 0.0;
  double best_c = 0.0;
  /// Best fitness in the population at each generation.
  std::vector<double> history_best_fitness;
  std::uint64_t evaluations = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const RunResult&, const RunResult&) = default;
};

/// Individual 0 is the scenario's current design when seeding is on; all other
/// genes are uniform over 0..3.
std::vector<Genome> init_population(const Scenario& scenario, const GAParams& params, Rng& rng);

/// Draws k indices with replacement and returns the one with the lowest
/// fitness; ties go to the lowest population index.
std::size_t tournament_select(std::span<const double> fitnesses, int k, Rng& rng);

/// Children hold only parental alleles at each position. Throws DimensionError
/// on unequal lengths.
std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b, CrossoverKind kind, Rng& rng);

/// Swaps the tails after gene boundary `cut` (0..size). Cut 0 or size yields copies.
std::pair<Genome, Genome> crossover_one_point_at(const Genome& a, const Genome& b, std::size_t cut);

/// Flips each of the two bits of every gene independently with probability `rate`.
Genome mutate(Genome g, double rate_per_bit, Rng& rng);

RunResult run(const Scenario& scenario, const WeightVector& weights, const FitnessConfig& cfg,
              const GAParams& params);

}  // namespace floodga
