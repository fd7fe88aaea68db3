// Serial reference vs OpenMP for the two data-parallel kernels.

#include <benchmark/benchmark.h>

#include <filesystem>

#include "floodga/ga.hpp"
#include "floodga/io.hpp"
#include "floodga/kernels.hpp"
#include "floodga/weights.hpp"

using namespace floodga;

namespace {

std::filesystem::path data(const char* name) { return std::filesystem::path(FLOODGA_DATA_DIR) / name; }

// A fixture tiled up to `copies` x 16 barangays so each genome has real work.
Scenario tiled_fixture(int copies) {
  const auto base = validate_scenario(io::load_scenario(data("synthetic-city.json")));
  Scenario s = base;
  s.barangays.clear();
  for (int c = 0; c < copies; ++c) {
    for (auto b : base.barangays) {
      b.name += "-" + std::to_string(c);
      b.grid_cell.reset();
      s.barangays.push_back(b);
    }
  }
  return s;
}

void population_eval(benchmark::State& state, Backend backend) {
  const auto s = tiled_fixture(static_cast<int>(state.range(1)));
  WeightVector w;
  w.values.fill(5.0);
  const auto cfg = FitnessConfig::relative_to(s, w);
  GAParams p;
  p.population_size = static_cast<int>(state.range(0));
  Rng rng(1);
  const auto pop = init_population(s, p, rng);
  const GenomeEvaluator evaluator(s, w, cfg);
  std::vector<Evaluation> evals(pop.size());
  for (auto _ : state) {
    evaluate_population(backend, evaluator, pop, evals);
    benchmark::DoNotOptimize(evals.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PopulationSerial(benchmark::State& state) { population_eval(state, Backend::Serial); }
void BM_PopulationOpenMP(benchmark::State& state) { population_eval(state, Backend::OpenMP); }

void recovery(benchmark::State& state, bool parallel) {
  const auto tables = io::load_tables(data("published-tables.json"));
  const auto published = io::parse_weight_sets_csv(io::read_text_file(data("published-weights.csv")));
  const auto shares = tables.shares();
  // Structural column: the slowest of the missing rows to search.
  std::vector<double> targets;
  for (const auto& set : published) targets.push_back(set.weights[ChromosomeKind::Structural]);
  RecoveryOptions opts;
  opts.parallel = parallel;
  for (auto _ : state) {
    auto rows = recover_rating_row(targets, shares, opts);
    benchmark::DoNotOptimize(rows.data());
  }
}

void BM_RecoverySerial(benchmark::State& state) { recovery(state, false); }
void BM_RecoveryOpenMP(benchmark::State& state) { recovery(state, true); }

}  // namespace

BENCHMARK(BM_PopulationSerial)->Args({100, 1})->Args({1000, 4})->Args({1000, 64})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_PopulationOpenMP)->Args({100, 1})->Args({1000, 4})->Args({1000, 64})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_RecoverySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RecoveryOpenMP)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
