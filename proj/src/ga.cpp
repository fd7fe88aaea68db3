#include "floodga/ga.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>

#include "floodga/errors.hpp"

namespace floodga {

void GAParams::validate() const {
  if (population_size < 2) throw ConfigError(fmt::format("populationSize must be >= 2 (got {})", population_size));
  if (generations < 1) throw ConfigError(fmt::format("generations must be >= 1 (got {})", generations));
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) throw ConfigError("crossoverRate must be in [0,1]");
  if (!(mutation_rate_per_bit >= 0.0 && mutation_rate_per_bit <= 1.0)) {
    throw ConfigError("mutationRatePerBit must be in [0,1]");
  }
  if (tournament_size < 1) throw ConfigError(fmt::format("tournamentSize must be >= 1 (got {})", tournament_size));
  if (elite_count < 0 || elite_count >= population_size) {
    throw ConfigError(fmt::format("eliteCount must be in [0, populationSize) (got {})", elite_count));
  }
}

std::vector<Genome> init_population(const Scenario& scenario, const GAParams& params, Rng& rng) {
  const auto length = scenario.barangays.size() * kNumDynamic;
  std::vector<Genome> pop;
  pop.reserve(static_cast<std::size_t>(params.population_size));
  if (params.seed_initial_with_scenario) pop.push_back(encode_genome(scenario));
  while (pop.size() < static_cast<std::size_t>(params.population_size)) {
    Genome g(length);
    for (auto& gene : g.genes()) gene = static_cast<ChromosomeValue>(rng.below(kMaxChromosomeValue + 1));
    pop.push_back(std::move(g));
  }
  return pop;
}

std::size_t tournament_select(std::span<const double> fitnesses, int k, Rng& rng) {
  std::size_t best = rng.below(fitnesses.size());
  for (int draw = 1; draw < k; ++draw) {
    const std::size_t i = rng.below(fitnesses.size());
    if (fitnesses[i] < fitnesses[best] || (fitnesses[i] == fitnesses[best] && i < best)) best = i;
  }
  return best;
}

std::pair<Genome, Genome> crossover_one_point_at(const Genome& a, const Genome& b, std::size_t cut) {
  if (a.size() != b.size()) throw DimensionError("crossover parents differ in length");
  cut = std::min(cut, a.size());
  Genome c1 = a;
  Genome c2 = b;
  for (std::size_t i = cut; i < a.size(); ++i) {
    c1[i] = b[i];
    c2[i] = a[i];
  }
  return {std::move(c1), std::move(c2)};
}

std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b, CrossoverKind kind, Rng& rng) {
  if (a.size() != b.size()) throw DimensionError("crossover parents differ in length");
  if (kind == CrossoverKind::OnePoint) {
    // Interior boundaries only; a cut at either end would just clone the parents.
    const std::size_t cut = a.size() < 2 ? 0 : 1 + rng.below(a.size() - 1);
    return crossover_one_point_at(a, b, cut);
  }
  Genome c1 = a;
  Genome c2 = b;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (rng.bernoulli(0.5)) std::swap(c1[i], c2[i]);
  }
  return {std::move(c1), std::move(c2)};
}

Genome mutate(Genome g, double rate_per_bit, Rng& rng) {
  if (rate_per_bit <= 0.0) return g;
  for (auto& gene : g.genes()) {
    for (unsigned bit = 0; bit < 2; ++bit) {
      if (rng.bernoulli(rate_per_bit)) gene ^= static_cast<ChromosomeValue>(1u << bit);
    }
  }
  return g;
}

namespace {
// Indices ordered by (fitness, index).
std::vector<std::size_t> ranked(std::span<const Evaluation> evals) {
  std::vector<std::size_t> order(evals.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return evals[x].fitness < evals[y].fitness; });
  return order;
}
}  // namespace

RunResult run(const Scenario& scenario, const WeightVector& weights, const FitnessConfig& cfg,
              const GAParams& params) {
  params.validate();
  const GenomeEvaluator evaluator(scenario, weights, cfg);
  Rng rng(params.seed);

  const auto pop_size = static_cast<std::size_t>(params.population_size);
  std::vector<Genome> population = init_population(scenario, params, rng);
  std::vector<Evaluation> evals(pop_size);
  std::vector<double> fitness(pop_size);

  RunResult result;
  result.seed = params.seed;
  result.history_best_fitness.reserve(static_cast<std::size_t>(params.generations));
  bool have_best = false;

  for (int gen = 0; gen < params.generations; ++gen) {
    evaluate_population(params.backend, evaluator, population, evals);
    result.evaluations += pop_size;
    for (std::size_t i = 0; i < pop_size; ++i) fitness[i] = evals[i].fitness;

    const auto order = ranked(evals);
    const Evaluation& leader = evals[order.front()];
    result.history_best_fitness.push_back(leader.fitness);
    if (!have_best || leader.fitness < result.best_fitness) {
      have_best = true;
      result.best_genome = population[order.front()];
      result.best_fitness = leader.fitness;
      result.best_v = leader.vulnerability;
      result.best_c = leader.cost;
    }
    if (gen + 1 == params.generations) break;

    std::vector<Genome> next;
    next.reserve(pop_size);
    for (int e = 0; e < params.elite_count; ++e) next.push_back(population[order[static_cast<std::size_t>(e)]]);
    while (next.size() < pop_size) {
      const Genome& a = population[tournament_select(fitness, params.tournament_size, rng)];
      const Genome& b = population[tournament_select(fitness, params.tournament_size, rng)];
      auto [c1, c2] = rng.bernoulli(params.crossover_rate) ? crossover(a, b, params.crossover, rng)
                                                          : std::pair<Genome, Genome>{a, b};
      next.push_back(mutate(std::move(c1), params.mutation_rate_per_bit, rng));
      if (next.size() < pop_size) next.push_back(mutate(std::move(c2), params.mutation_rate_per_bit, rng));
    }
    population = std::move(next);
  }
  return result;
}

}  // namespace floodga
