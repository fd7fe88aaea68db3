// One PASS/FAIL line per acceptance criterion. Exit status is non-zero when
// any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "floodga/ga.hpp"
#include "floodga/io.hpp"
#include "floodga/objective.hpp"
#include "floodga/sensitivity.hpp"
#include "floodga/weights.hpp"
#include "test_support.hpp"

using namespace floodga;
namespace fs = std::filesystem;
namespace t = floodga::oracle;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& why) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += why;
    }
  }
};

std::string fmt_double(double v, int digits = 6) {
  std::ostringstream ss;
  ss.precision(digits);
  ss << std::fixed << v;
  return ss.str();
}

/// Runs the CLI, returns its exit code and captured stdout.
std::pair<int, std::string> run_cli(const std::string& args, const fs::path& dir) {
  const auto log = dir / "stdout.txt";
  const std::string cmd = std::string("\"") + FLOODGA_CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2> \"" +
                          (dir / "stderr.txt").string() + "\"";
  const int status = std::system(cmd.c_str());
  const int code = (status != -1 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return {code, fs::exists(log) ? io::read_text_file(log) : ""};
}

std::string tables_args() {
  return "--tables \"" + t::data_path("published-tables.json").string() + "\" --published \"" +
         t::data_path("published-weights.csv").string() + "\"";
}

Scenario fixture() { return validate_scenario(io::load_scenario(t::data_path("synthetic-city.json"))); }

WeightVector original_weights() {
  WeightVector w;
  for (std::size_t c = 0; c < kNumChromosomes; ++c) w.values[c] = t::published_weights()[0][c];
  return w;
}

bool within_3_sigma(double count, double trials, double p) {
  return std::abs(count - trials * p) <= 3 * std::sqrt(trials * p * (1 - p));
}

// ---- criteria ---------------------------------------------------------------

Outcome weight_reproduction(const fs::path& dir) {
  Outcome o;
  const auto start = Clock::now();
  const auto w = compute_weights(RatingMatrix(t::full_rating_rows()), t::published_shares());
  const double lib_time = seconds_since(start);
  double worst = 0;
  for (std::size_t c = 0; c < kNumChromosomes; ++c) worst = std::max(worst, std::abs(w.values[c] - t::published_weights()[0][c]));
  o.require(worst <= 0.005, "library max error " + fmt_double(worst));

  // End to end: the CLI recovers the six unpublished rows and writes the table.
  const auto cli_start = Clock::now();
  const auto [code, out] = run_cli("weights " + tables_args() + " --out \"" + dir.string() + "\"", dir);
  const double cli_time = seconds_since(cli_start);
  o.require(code == 0, "cli exit " + std::to_string(code));
  if (code == 0) {
    const auto sets = io::parse_weight_sets_csv(io::read_text_file(dir / "weights.csv"));
    double cli_worst = 0;
    for (std::size_t c = 0; c < kNumChromosomes; ++c) {
      cli_worst = std::max(cli_worst, std::abs(sets.at(0).weights.values[c] - t::published_weights()[0][c]));
    }
    o.require(cli_worst <= 0.005, "cli max error " + fmt_double(cli_worst));
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("max error ") + fmt_double(std::max(worst, cli_worst), 4);
  }
  o.require(lib_time < 1.0 && cli_time < 1.0, "too slow: " + fmt_double(cli_time, 3) + " s");
  o.detail += ", cli " + fmt_double(cli_time, 3) + " s";
  return o;
}

Outcome perturbed_corpus() {
  Outcome o;
  const auto start = Clock::now();
  const auto sets = generate_weight_sets(RatingMatrix(t::full_rating_rows()), t::published_shares());
  const double elapsed = seconds_since(start);
  o.require(sets.size() == 22, "expected 22 sets, got " + std::to_string(sets.size()));
  if (sets.size() != 22) return o;
  double worst = 0;
  for (std::size_t r = 1; r < 22; ++r) {
    for (std::size_t c = 0; c < kNumChromosomes; ++c) {
      worst = std::max(worst, std::abs(sets[r].weights.values[c] - t::published_weights()[r][c]));
    }
  }
  o.require(worst <= 0.015, "max error " + fmt_double(worst));

  struct Anchor {
    std::string label;
    std::size_t column;
    double value;
  };
  const std::vector<Anchor> anchors = {
      {"(Size of affected area, minimize)", 0, 6.37},
      {"(Capacity to cause physical damages, minimize)", 1, 3.96},
      {"(Public awareness of hazard, maximize)", 4, 8.08},
  };
  for (const auto& a : anchors) {
    bool found = false;
    for (const auto& s : sets) {
      if (s.label != a.label) continue;
      found = true;
      o.require(std::abs(s.weights.values[a.column] - a.value) <= 0.01,
                a.label + " M" + std::to_string(a.column + 1) + " = " + fmt_double(s.weights.values[a.column], 4));
    }
    o.require(found, "missing label " + a.label);
  }
  o.require(elapsed < 1.0, "too slow");
  if (o.pass) o.detail = "max error " + fmt_double(worst, 4) + ", anchors ok, " + fmt_double(elapsed, 4) + " s";
  return o;
}

Outcome rating_recovery() {
  Outcome o;
  RecoveryOptions opts;
  opts.parallel = false;
  const auto start = Clock::now();
  const struct {
    std::size_t column;
    std::vector<int> row;
  } cases[] = {{0, {9, 7, 6, 4, 5, 6, 2}}, {4, {6, 8, 7, 2, 2, 10, 2}}};
  std::size_t total = 0;
  for (const auto& c : cases) {
    const auto targets = t::published_column(c.column);
    const auto solutions = recover_rating_row(targets, t::published_shares(), opts);
    total += solutions.size();
    o.require(std::find(solutions.begin(), solutions.end(), c.row) != solutions.end(),
              "M" + std::to_string(c.column + 1) + " row not recovered");
  }
  const double elapsed = seconds_since(start);
  o.require(elapsed < 300.0, "too slow");
  if (o.pass) o.detail = std::to_string(total) + " solution(s) in total, single thread " + fmt_double(elapsed, 3) + " s";
  return o;
}

Outcome objective_hand_values() {
  Outcome o;
  BarangayProfile b;
  b.name = "x";
  b.s_factor = 1.0;
  b.dynamic.fill(3);
  b.static_values.fill(3);
  const double c3 = barangay_cost(b);
  o.require(c3 == 5.0, "all-3 cost " + fmt_double(c3, 12));
  b.dynamic.fill(0);
  b.static_values.fill(0);
  const double c0 = barangay_cost(b);
  const double expect = 5 * std::exp(3.0) + 21;
  o.require(std::abs(c0 - expect) <= 1e-9 * expect, "all-0 cost " + fmt_double(c0, 12));
  const double v0 = barangay_vulnerability(b, original_weights());
  o.require(v0 == 0.0, "all-0 vulnerability " + fmt_double(v0, 12));
  if (o.pass) o.detail = "C(3)=5, C(0)=" + fmt_double(c0, 4) + ", V(0)=0";
  return o;
}

Outcome small_instance_optimality() {
  Outcome o;
  Rng rng(2024);
  int hits = 0;
  double slowest = 0;
  for (int seed = 0; seed < 100; ++seed) {
    const auto s = t::random_scenario(rng, 1);
    const auto w = t::random_weights(rng);
    const auto cfg = FitnessConfig::relative_to(s, w);
    GAParams p;
    p.seed = std::uint64_t(seed);
    const auto start = Clock::now();
    const auto r = run(s, w, cfg, p);
    slowest = std::max(slowest, seconds_since(start));
    const auto opt = t::enumerate_single_barangay(s.barangays[0], w, 1, 1, cfg.baseline_v, cfg.baseline_c);
    o.require(r.best_fitness >= opt.fitness - 1e-12, "GA beat the enumeration at seed " + std::to_string(seed));
    hits += std::abs(r.best_fitness - opt.fitness) <= 1e-9 * opt.fitness;
  }
  o.require(hits >= 95, "only " + std::to_string(hits) + "/100 optimal");
  o.require(slowest < 2.0, "slowest run " + fmt_double(slowest, 3) + " s");
  if (o.pass) o.detail = std::to_string(hits) + "/100 optimal, slowest run " + fmt_double(slowest, 4) + " s";
  return o;
}

Outcome ga_properties() {
  Outcome o;
  Rng rng(7);

  // Elitism and static preservation across random scenarios and settings.
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = t::random_scenario(rng, 1 + rng.below(8));
    const auto w = t::random_weights(rng);
    GAParams p;
    p.generations = 40;
    p.population_size = 30 + int(rng.below(50));
    p.elite_count = 1 + int(rng.below(3));
    p.crossover = trial % 2 ? CrossoverKind::OnePoint : CrossoverKind::Uniform;
    p.seed_initial_with_scenario = trial % 3 != 0;
    p.seed = rng.next();
    const auto r = run(s, w, FitnessConfig::relative_to(s, w), p);
    for (std::size_t g = 1; g < r.history_best_fitness.size(); ++g) {
      if (r.history_best_fitness[g] > r.history_best_fitness[g - 1]) {
        o.require(false, "history rose at trial " + std::to_string(trial));
        break;
      }
    }
    const auto d = decode_genome(r.best_genome, s);
    for (std::size_t i = 0; i < s.barangays.size(); ++i) {
      const bool same = d.barangays[i].static_values == s.barangays[i].static_values &&
                        d.barangays[i].name == s.barangays[i].name &&
                        d.barangays[i].s_factor == s.barangays[i].s_factor;
      if (!same) o.require(false, "static data changed at trial " + std::to_string(trial));
    }
  }

  // Same seed, same result, regardless of backend.
  const auto s = fixture();
  const auto w = original_weights();
  const auto cfg = FitnessConfig::relative_to(s, w);
  GAParams p;
  p.generations = 60;
  const auto a = run(s, w, cfg, p);
  o.require(a == run(s, w, cfg, p), "replay differs");
  p.backend = Backend::Serial;
  o.require(a == run(s, w, cfg, p), "serial backend differs");

  // Mutation: flips ~ Binomial(2N, rate).
  const std::size_t genes = 50000;
  const auto m = mutate(Genome(genes, 0), 0.01, rng);
  double flips = 0;
  for (std::size_t i = 0; i < genes; ++i) flips += (m[i] & 1) + ((m[i] >> 1) & 1);
  o.require(within_3_sigma(flips, 2.0 * genes, 0.01), "mutation flips " + fmt_double(flips, 0));

  // Uniform crossover: each position swaps with probability 1/2.
  const Genome zeros(genes, 0), threes(genes, 3);
  const auto [c1, c2] = crossover(zeros, threes, CrossoverKind::Uniform, rng);
  double swapped = 0;
  for (std::size_t i = 0; i < genes; ++i) {
    swapped += c1[i] == 3;
    if (c1[i] + c2[i] != 3) o.require(false, "crossover invented an allele");
  }
  o.require(within_3_sigma(swapped, double(genes), 0.5), "uniform swaps " + fmt_double(swapped, 0));

  // Tournament of size 1 picks uniformly.
  std::vector<double> fit(10, 1.0);
  std::vector<double> hist(10, 0.0);
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) hist[tournament_select(fit, 1, rng)] += 1;
  for (double h : hist) o.require(within_3_sigma(h, draws, 0.1), "tournament bucket " + fmt_double(h, 0));

  if (o.pass) o.detail = "elitism, statics, determinism and 3-sigma checks hold";
  return o;
}

Outcome fixture_improvement(const fs::path& dir) {
  Outcome o;
  const auto [code, out] = run_cli("optimize --scenario \"" + t::data_path("synthetic-city.json").string() + "\" " +
                                       tables_args() + " --seed 42 --out \"" + dir.string() + "\"",
                                   dir);
  o.require(code == 0, "optimize exit " + std::to_string(code));
  double dv = NAN, dc = NAN;
  if (const auto pos = out.find("dV%="); pos != std::string::npos) dv = std::stod(out.substr(pos + 4));
  if (const auto pos = out.find("dC%="); pos != std::string::npos) dc = std::stod(out.substr(pos + 4));
  o.require(dv >= 10.0, "dV% " + fmt_double(dv, 3));

  const auto s = fixture();
  const auto start = Clock::now();
  const auto results = sweep(s, RatingMatrix(t::full_rating_rows()), t::published_shares(), SweepConfig{}, GAParams{});
  const double elapsed = seconds_since(start);
  o.require(results.size() == 22, "sweep produced " + std::to_string(results.size()) + " runs");
  double min_dv = INFINITY;
  for (const auto& r : results) min_dv = std::min(min_dv, r.delta_v_percent);
  o.require(min_dv >= 0.0, "a sweep run lost vulnerability ground: " + fmt_double(min_dv, 3));
  o.require(elapsed < 120.0, "sweep took " + fmt_double(elapsed, 1) + " s");
  o.detail += (o.detail.empty() ? "" : "; ") + std::string("dV%=") + fmt_double(dv, 2) + " dC%=" + fmt_double(dc, 2) +
              ", sweep min dV%=" + fmt_double(min_dv, 2) + " in " + fmt_double(elapsed, 2) + " s";
  return o;
}

Outcome monotonicity() {
  Outcome o;
  Rng rng(8);
  int violations = 0;
  for (int sample = 0; sample < 10000; ++sample) {
    const auto b = t::random_barangay(rng, "m");
    const auto w = t::random_weights(rng);
    const double v = barangay_vulnerability(b, w);
    const double c = barangay_cost(b);
    for (std::size_t j = 0; j < kNumDynamic; ++j) {
      if (b.dynamic[j] == 3) continue;
      auto up = b;
      ++up.dynamic[j];
      if (barangay_vulnerability(up, w) < v || barangay_cost(up) > c) ++violations;
    }
  }
  o.require(violations == 0, std::to_string(violations) + " violations");
  if (o.pass) o.detail = "10000 samples, 0 violations";
  return o;
}

}  // namespace

int main() {
  const fs::path work = fs::temp_directory_path() / "floodga-acceptance";
  fs::remove_all(work);
  fs::create_directories(work);

  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {1, "original weights", [&] { return weight_reproduction(work / "c1"); }},
      {2, "perturbed weight table", perturbed_corpus},
      {3, "rating row recovery", rating_recovery},
      {4, "objective hand values", objective_hand_values},
      {5, "one-barangay optimality", small_instance_optimality},
      {6, "GA properties", ga_properties},
      {7, "synthetic fixture improvement", [&] { return fixture_improvement(work / "c7"); }},
      {8, "objective monotonicity", monotonicity},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    fs::create_directories(work / ("c" + std::to_string(c.id)));
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << o.detail << "\n";
    if (c.id == 7) {
      std::cout << "     note: published absolute totals and headline percentages are not reproducible here;"
                   " they depend on unpublished initial chromosome data. The synthetic fixture stands in.\n";
    }
    std::cout.flush();
  }
  fs::remove_all(work);
  std::cout << (failures ? "FAILED " : "ALL PASSED ") << (8 - failures) << "/8\n";
  return failures ? 1 : 0;
}
