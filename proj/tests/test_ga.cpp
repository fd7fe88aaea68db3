#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

#include "floodga/errors.hpp"
#include "floodga/ga.hpp"
#include "floodga/io.hpp"
#include "test_support.hpp"

using namespace floodga;
namespace t = floodga::oracle;

namespace {

bool within_3_sigma(double count, double trials, double p) {
  const double sigma = std::sqrt(trials * p * (1 - p));
  return std::abs(count - trials * p) <= 3 * sigma;
}

WeightVector original_weights() {
  WeightVector w;
  for (std::size_t c = 0; c < kNumChromosomes; ++c) w.values[c] = t::published_weights()[0][c];
  return w;
}

Scenario fixture() { return validate_scenario(io::load_scenario(t::data_path("synthetic-city.json"))); }

}  // namespace

TEST(GAParams, Validation) {
  GAParams p;
  EXPECT_NO_THROW(p.validate());
  p.generations = 0;
  EXPECT_THROW(p.validate(), ConfigError);
  p = {};
  p.population_size = 1;
  EXPECT_THROW(p.validate(), ConfigError);
  p = {};
  p.elite_count = p.population_size;
  EXPECT_THROW(p.validate(), ConfigError);
  p = {};
  p.mutation_rate_per_bit = 1.5;
  EXPECT_THROW(p.validate(), ConfigError);
  p = {};
  p.tournament_size = 0;
  EXPECT_THROW(p.validate(), ConfigError);
}

TEST(InitPopulation, SeedsWithCurrentDesign) {
  Rng rng(1);
  const auto s = t::random_scenario(rng, 3);
  GAParams p;
  p.population_size = 2;
  Rng r(5);
  const auto pop = init_population(s, p, r);
  ASSERT_EQ(pop.size(), 2u);
  EXPECT_EQ(pop[0], encode_genome(s));
}

TEST(InitPopulation, DeterministicForSeed) {
  Rng rng(1);
  const auto s = t::random_scenario(rng, 5);
  GAParams p;
  Rng a(77), b(77);
  EXPECT_EQ(init_population(s, p, a), init_population(s, p, b));
}

TEST(InitPopulation, GenesUniformOverLevels) {
  Rng rng(1);
  const auto s = t::random_scenario(rng, 10);  // 70 genes per genome
  GAParams p;
  p.population_size = 1430;  // ~10^5 random genes
  p.seed_initial_with_scenario = false;
  Rng r(3);
  std::array<double, 4> hist{};
  double total = 0;
  for (const auto& g : init_population(s, p, r)) {
    for (auto v : g.genes()) {
      ASSERT_LE(v, 3);
      ++hist[v];
      ++total;
    }
  }
  ASSERT_GE(total, 1e5);
  for (double h : hist) EXPECT_TRUE(within_3_sigma(h, total, 0.25)) << h << " of " << total;
}

TEST(TournamentSelect, FullSizeTournamentCanMissTheBest) {
  const std::size_t n = 10;
  std::vector<double> fit(n);
  for (std::size_t i = 0; i < n; ++i) fit[i] = double(n - i);  // best is index 9
  Rng rng(9);
  const double trials = 1e4;
  double hits = 0;
  for (int i = 0; i < trials; ++i) hits += tournament_select(fit, int(n), rng) == n - 1;
  const double p = 1 - std::pow(1 - 1.0 / n, double(n));
  EXPECT_TRUE(within_3_sigma(hits, trials, p)) << hits / trials << " vs " << p;
  EXPECT_LT(hits, trials);
}

TEST(TournamentSelect, SizeOneIsUniform) {
  const std::vector<double> fit = {5, 1, 3, 2};
  Rng rng(10);
  std::array<double, 4> hist{};
  const double trials = 4e4;
  for (int i = 0; i < trials; ++i) ++hist[tournament_select(fit, 1, rng)];
  for (double h : hist) EXPECT_TRUE(within_3_sigma(h, trials, 0.25));
}

TEST(TournamentSelect, TiesGoToLowestDrawnIndex) {
  const std::vector<double> fit(20, 1.0);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng replay(seed), rng(seed);
    std::uint64_t lowest = UINT64_MAX;
    for (int d = 0; d < 4; ++d) lowest = std::min(lowest, replay.below(20));
    EXPECT_EQ(tournament_select(fit, 4, rng), lowest);
  }
}

TEST(Crossover, ClonesWhenParentsEqual) {
  Rng rng(11);
  Genome a(std::vector<ChromosomeValue>{0, 1, 2, 3, 3, 2, 1});
  for (auto kind : {CrossoverKind::Uniform, CrossoverKind::OnePoint}) {
    auto [c1, c2] = crossover(a, a, kind, rng);
    EXPECT_EQ(c1, a);
    EXPECT_EQ(c2, a);
  }
}

TEST(Crossover, CutAtZeroCopiesParents) {
  Genome a(7, 0), b(7, 3);
  auto [c1, c2] = crossover_one_point_at(a, b, 0);
  // Everything after boundary 0 is swapped, so the children are the parents exchanged.
  EXPECT_EQ(c1, b);
  EXPECT_EQ(c2, a);
  auto [d1, d2] = crossover_one_point_at(a, b, 7);
  EXPECT_EQ(d1, a);
  EXPECT_EQ(d2, b);
  auto [e1, e2] = crossover_one_point_at(a, b, 3);
  EXPECT_EQ(e1, Genome(std::vector<ChromosomeValue>{0, 0, 0, 3, 3, 3, 3}));
  EXPECT_EQ(e2, Genome(std::vector<ChromosomeValue>{3, 3, 3, 0, 0, 0, 0}));
}

TEST(Crossover, AllelePreservationProperty) {
  Rng rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t len = 7 * (1 + rng.below(16));
    Genome a(len), b(len);
    for (std::size_t i = 0; i < len; ++i) {
      a[i] = static_cast<ChromosomeValue>(rng.below(4));
      b[i] = static_cast<ChromosomeValue>(rng.below(4));
    }
    for (auto kind : {CrossoverKind::Uniform, CrossoverKind::OnePoint}) {
      auto [c1, c2] = crossover(a, b, kind, rng);
      ASSERT_EQ(c1.size(), len);
      for (std::size_t i = 0; i < len; ++i) {
        EXPECT_TRUE((c1[i] == a[i] && c2[i] == b[i]) || (c1[i] == b[i] && c2[i] == a[i]));
      }
    }
  }
}

TEST(Crossover, UniformSwapsHalfThePositions) {
  Rng rng(13);
  Genome a(100000, 0), b(100000, 3);
  auto [c1, c2] = crossover(a, b, CrossoverKind::Uniform, rng);
  double swapped = 0;
  for (std::size_t i = 0; i < a.size(); ++i) swapped += c1[i] == 3;
  EXPECT_TRUE(within_3_sigma(swapped, double(a.size()), 0.5));
}

TEST(Crossover, LengthMismatch) {
  Rng rng(14);
  EXPECT_THROW(crossover(Genome(7), Genome(14), CrossoverKind::Uniform, rng), DimensionError);
}

TEST(Mutate, RateZeroIsIdentity) {
  Rng rng(15);
  Genome g(std::vector<ChromosomeValue>{0, 1, 2, 3, 0, 1, 2});
  EXPECT_EQ(mutate(g, 0.0, rng), g);
}

TEST(Mutate, RateOneComplements) {
  Rng rng(16);
  Genome g(std::vector<ChromosomeValue>{0, 1, 2, 3, 0, 1, 2});
  EXPECT_EQ(mutate(g, 1.0, rng), Genome(std::vector<ChromosomeValue>{3, 2, 1, 0, 3, 2, 1}));
}

TEST(Mutate, FlipCountIsBinomial) {
  Rng rng(17);
  const std::size_t genes = 50000;  // 10^5 bits
  const Genome g(genes, 0);
  const auto m = mutate(g, 0.01, rng);
  double flips = 0;
  for (std::size_t i = 0; i < genes; ++i) flips += (m[i] & 1) + ((m[i] >> 1) & 1);
  EXPECT_TRUE(within_3_sigma(flips, 2.0 * genes, 0.01)) << flips;
  for (auto v : m.genes()) EXPECT_LE(v, 3);
}

TEST(Run, DeterministicAcrossReplaysAndBackends) {
  const auto s = fixture();
  const auto w = original_weights();
  const auto cfg = FitnessConfig::relative_to(s, w);
  GAParams p;
  p.generations = 50;
  const auto a = run(s, w, cfg, p);
  const auto b = run(s, w, cfg, p);
  EXPECT_EQ(a, b);
  p.backend = Backend::Serial;
  EXPECT_EQ(run(s, w, cfg, p), a);
  p.seed = 43;
  EXPECT_NE(run(s, w, cfg, p).history_best_fitness, a.history_best_fitness);
}

TEST(Run, ElitismKeepsHistoryMonotone) {
  Rng rng(18);
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = t::random_scenario(rng, 4);
    const auto w = t::random_weights(rng);
    GAParams p;
    p.generations = 60;
    p.elite_count = 1 + int(rng.below(3));
    p.seed = rng.next();
    p.seed_initial_with_scenario = trial % 2 == 0;
    const auto r = run(s, w, FitnessConfig::relative_to(s, w), p);
    ASSERT_EQ(r.history_best_fitness.size(), 60u);
    for (std::size_t g = 1; g < r.history_best_fitness.size(); ++g) {
      EXPECT_LE(r.history_best_fitness[g], r.history_best_fitness[g - 1]);
    }
    EXPECT_EQ(r.best_fitness, r.history_best_fitness.back());
    EXPECT_EQ(r.evaluations, 60u * 100u);
  }
}

TEST(Run, EvolvedGenomeLeavesStaticsUntouched) {
  const auto s = fixture();
  const auto w = original_weights();
  GAParams p;
  p.generations = 30;
  const auto r = run(s, w, FitnessConfig::relative_to(s, w), p);
  ASSERT_EQ(r.best_genome.size(), 7 * s.barangays.size());
  for (auto v : r.best_genome.genes()) EXPECT_LE(v, 3);
  const auto d = decode_genome(r.best_genome, s);
  for (std::size_t i = 0; i < s.barangays.size(); ++i) {
    EXPECT_EQ(d.barangays[i].static_values, s.barangays[i].static_values);
    EXPECT_EQ(d.barangays[i].name, s.barangays[i].name);
    EXPECT_EQ(d.barangays[i].s_factor, s.barangays[i].s_factor);
  }
}

TEST(Run, FixtureNeverWorseThanInitialDesign) {
  const auto s = fixture();
  const auto w = original_weights();
  const auto cfg = FitnessConfig::relative_to(s, w);
  GAParams p;
  p.seed = 42;
  const auto r = run(s, w, cfg, p);
  EXPECT_LE(r.best_fitness, scalarized_fitness(s, w, cfg));
}

TEST(Run, OneBarangayReachesEnumeratedOptimum) {
  Rng rng(19);
  int hits = 0;
  const int seeds = 20;
  for (int i = 0; i < seeds; ++i) {
    const auto s = t::random_scenario(rng, 1);
    const auto w = t::random_weights(rng);
    const auto cfg = FitnessConfig::relative_to(s, w);
    GAParams p;
    p.seed = std::uint64_t(i);
    const auto r = run(s, w, cfg, p);
    const auto opt = t::enumerate_single_barangay(s.barangays[0], w, 1, 1, cfg.baseline_v, cfg.baseline_c);
    EXPECT_GE(r.best_fitness, opt.fitness - 1e-12);
    hits += std::abs(r.best_fitness - opt.fitness) <= 1e-9 * opt.fitness;
  }
  EXPECT_GE(hits, 19);
}
