// floodga: weights, sensitivity sweeps and GA design search for flood vulnerability.
//
// Exit codes: 0 success, 2 parse error, 3 validation error, 4 no solution, 1 anything else.

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "floodga/errors.hpp"
#include "floodga/ga.hpp"
#include "floodga/io.hpp"
#include "floodga/objective.hpp"
#include "floodga/scenario.hpp"
#include "floodga/sensitivity.hpp"
#include "floodga/svg_map.hpp"
#include "floodga/weights.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace floodga;

namespace {

enum ExitCode { kOk = 0, kOther = 1, kParse = 2, kValidation = 3, kNoSolution = 4 };

struct CommonOptions {
  std::string scenario;
  std::string tables;
  std::string published;
  std::string out = "out";
  std::string weight_set = "original";
  double tolerance = 0.0051;
  double scale = 1.0;
  double alpha = 1.0;
  double beta = 1.0;
};

struct GaOptions {
  GAParams params;
  std::string crossover = "uniform";
  bool no_seed_initial = false;
  bool serial = false;

  GAParams resolve() const {
    GAParams p = params;
    if (crossover == "uniform") {
      p.crossover = CrossoverKind::Uniform;
    } else if (crossover == "onepoint") {
      p.crossover = CrossoverKind::OnePoint;
    } else {
      throw ConfigError(fmt::format("--ga-crossover must be uniform or onepoint (got {})", crossover));
    }
    p.seed_initial_with_scenario = !no_seed_initial;
    p.backend = serial ? Backend::Serial : Backend::OpenMP;
    p.validate();
    return p;
  }
};

void add_ga_flags(CLI::App* cmd, GaOptions& ga) {
  cmd->add_option("--seed", ga.params.seed, "RNG seed (sweep run i uses seed + i)")->capture_default_str();
  cmd->add_option("--ga-population", ga.params.population_size, "Population size")->capture_default_str();
  cmd->add_option("--ga-generations,--generations", ga.params.generations, "Generations (>= 1)")
      ->capture_default_str();
  cmd->add_option("--ga-crossover-rate", ga.params.crossover_rate, "Crossover probability")->capture_default_str();
  cmd->add_option("--ga-mutation-rate", ga.params.mutation_rate_per_bit, "Per-bit flip probability")
      ->capture_default_str();
  cmd->add_option("--ga-tournament", ga.params.tournament_size, "Tournament size")->capture_default_str();
  cmd->add_option("--ga-elite", ga.params.elite_count, "Elite individuals carried over")->capture_default_str();
  cmd->add_option("--ga-crossover", ga.crossover, "uniform | onepoint")->capture_default_str();
  cmd->add_flag("--ga-no-seed-initial", ga.no_seed_initial, "Do not seed the population with the current design");
  cmd->add_flag("--ga-serial", ga.serial, "Evaluate fitness serially instead of with OpenMP");
}

void add_fitness_flags(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--scale", o.scale, "Global vulnerability scale")->capture_default_str();
  cmd->add_option("--alpha", o.alpha, "Vulnerability coefficient of the fitness")->capture_default_str();
  cmd->add_option("--beta", o.beta, "Cost coefficient of the fitness")->capture_default_str();
}

void add_tables_flags(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--tables", o.tables, "Aspect/rating tables JSON")->required();
  cmd->add_option("--published", o.published, "Published weight sets CSV (label,M1..M11) for recovering missing rows");
  cmd->add_option("--tolerance", o.tolerance, "Recovery tolerance")->capture_default_str();
}

std::string ga_crossover_name(CrossoverKind k) { return k == CrossoverKind::Uniform ? "uniform" : "onepoint"; }

nlohmann::ordered_json manifest(std::string_view command, const CommonOptions& o, const GAParams* p) {
  nlohmann::ordered_json m;
  m["command"] = command;
  m["scenario"] = o.scenario;
  m["tables"] = o.tables;
  m["published"] = o.published;
  m["weightSet"] = o.weight_set;
  m["tolerance"] = o.tolerance;
  m["scale"] = o.scale;
  m["alpha"] = o.alpha;
  m["beta"] = o.beta;
  if (p) {
    m["ga"] = {{"populationSize", p->population_size},
               {"generations", p->generations},
               {"crossoverRate", p->crossover_rate},
               {"mutationRatePerBit", p->mutation_rate_per_bit},
               {"tournamentSize", p->tournament_size},
               {"eliteCount", p->elite_count},
               {"seed", p->seed},
               {"crossoverKind", ga_crossover_name(p->crossover)},
               {"seedInitialWithScenario", p->seed_initial_with_scenario},
               {"rng", "mt19937_64"}};
  }
  return m;
}

void write_manifest(const CommonOptions& o, const nlohmann::ordered_json& m) {
  io::write_text_file(fs::path(o.out) / "run-manifest.json", m.dump(2) + "\n");
}

/// Tables with any missing rows filled from --published; alternates go to stderr.
io::TablesInput complete_tables(const CommonOptions& o) {
  auto tables = io::load_tables(o.tables);
  if (tables.missing_rows().empty()) return tables;
  if (o.published.empty()) {
    std::string names;
    for (auto k : tables.missing_rows()) names += fmt::format(" {}", name_of(k));
    throw ValidationError(fmt::format("rating rows missing ({} ) and no --published to recover them from", names));
  }
  const auto published = io::parse_weight_sets_csv(io::read_text_file(o.published));
  RecoveryOptions ro;
  ro.tolerance = o.tolerance;
  for (const auto& rec : io::complete_tables(tables, published, ro)) {
    std::cerr << fmt::format("recovered {}: [{}]\n", name_of(rec.kind), fmt::join(rec.solutions.front(), ","));
    for (std::size_t i = 1; i < rec.solutions.size(); ++i) {
      std::cerr << fmt::format("  alternate {}: [{}]\n", name_of(rec.kind), fmt::join(rec.solutions[i], ","));
    }
  }
  return tables;
}

LabeledWeights pick_weight_set(const io::TablesInput& tables, const std::string& label) {
  for (auto& set : generate_weight_sets(tables.rating_matrix(), tables.shares())) {
    if (set.label == label) return set;
  }
  throw ConfigError(fmt::format("no weight set labeled \"{}\"", label));
}

std::string weights_line(const WeightVector& w) {
  std::string line;
  for (auto kind : kAllChromosomes) {
    line += fmt::format("{}{}={}", line.empty() ? "" : " ", name_of(kind), io::format_fixed(round_half_up(w[kind], 2), 2));
  }
  return line;
}

Scenario load_valid_scenario(const std::string& path) { return validate_scenario(io::load_scenario(path)); }

template <typename F>
void write_csv(const fs::path& path, F&& body) {
  std::ostringstream ss;
  body(ss);
  io::write_text_file(path, ss.str());
}

// ---- subcommands ----------------------------------------------------------

int cmd_weights(const CommonOptions& o) {
  const auto tables = complete_tables(o);
  const auto sets = generate_weight_sets(tables.rating_matrix(), tables.shares());
  write_csv(fs::path(o.out) / "weights.csv", [&](std::ostream& s) { io::write_weight_sets_csv(s, sets); });
  std::cout << "original " << weights_line(sets.front().weights) << "\n";
  return kOk;
}

int cmd_recover(const CommonOptions& o, const std::string& output) {
  auto tables = io::load_tables(o.tables);
  if (tables.missing_rows().empty()) {
    std::cout << "all rating rows present; nothing to recover\n";
    return kOk;
  }
  tables = complete_tables(o);
  const fs::path path = output.empty() ? fs::path(o.out) / "tables-completed.json" : fs::path(output);
  io::write_text_file(path, io::tables_to_json(tables));
  std::cout << "wrote " << path.string() << "\n";
  return kOk;
}

int cmd_report(const CommonOptions& o) {
  const auto scenario = load_valid_scenario(o.scenario);
  const auto tables = complete_tables(o);
  const auto set = pick_weight_set(tables, o.weight_set);
  const auto values = evaluate_objectives(scenario, set.weights, o.scale);
  write_csv(fs::path(o.out) / "objectives.csv",
            [&](std::ostream& s) { io::write_objective_csv(s, scenario, values); });
  std::cout << fmt::format("V={} C={}\n", io::format_fixed(values.vulnerability_total, 6),
                           io::format_fixed(values.cost_total, 6));
  return kOk;
}

int cmd_optimize(const CommonOptions& o, const GaOptions& ga) {
  const auto params = ga.resolve();
  const auto scenario = load_valid_scenario(o.scenario);
  const auto tables = complete_tables(o);
  const auto set = pick_weight_set(tables, o.weight_set);
  SweepConfig sc;
  sc.alpha = o.alpha;
  sc.beta = o.beta;
  sc.scale = o.scale;
  const auto result = run_weight_set(scenario, set, sc, params);
  const auto recommended = decode_genome(result.run.best_genome, scenario);

  const fs::path out(o.out);
  write_csv(out / "optimize.csv", [&](std::ostream& s) { io::write_recommendation_csv(s, scenario, recommended); });
  io::write_text_file(out / "recommended-scenario.json", io::scenario_to_json(recommended));
  write_csv(out / "history.csv", [&](std::ostream& s) {
    s << "generation,best_fitness\r\n";
    for (std::size_t g = 0; g < result.run.history_best_fitness.size(); ++g) {
      s << g << ',' << io::format_fixed(result.run.history_best_fitness[g], 9) << "\r\n";
    }
  });
  write_manifest(o, manifest("optimize", o, &params));

  std::cout << fmt::format("V0={} Vbest={} C0={} Cbest={} dV%={} dC%={}\n", io::format_fixed(result.initial_v, 6),
                           io::format_fixed(result.run.best_v, 6), io::format_fixed(result.initial_c, 6),
                           io::format_fixed(result.run.best_c, 6), io::format_fixed(result.delta_v_percent, 6),
                           io::format_fixed(result.delta_c_percent, 6));
  return kOk;
}

int cmd_sweep(const CommonOptions& o, const GaOptions& ga, int rerun_generations) {
  const auto params = ga.resolve();
  const auto scenario = load_valid_scenario(o.scenario);
  const auto tables = complete_tables(o);
  SweepConfig sc;
  sc.alpha = o.alpha;
  sc.beta = o.beta;
  sc.scale = o.scale;
  sc.parallel_runs = !ga.serial;
  const auto results = sweep(scenario, tables.rating_matrix(), tables.shares(), sc, params);

  const fs::path out(o.out);
  write_csv(out / "sweep.csv", [&](std::ostream& s) { io::write_sweep_csv(s, results); });
  std::vector<ObjectivePoint> points;
  for (const auto& r : results) points.push_back({r.run.best_v, r.run.best_c});
  write_csv(out / "sweep-pareto.csv", [&](std::ostream& s) { io::write_pareto_csv(s, pareto_front(points)); });

  const auto by_v = rank(results, RankCriterion::ByVulnerability);
  const auto by_c = rank(results, RankCriterion::ByCost);
  std::cout << fmt::format("best by vulnerability: {} dV%={} dC%={}\n", by_v.front().label,
                           io::format_fixed(by_v.front().delta_v_percent, 6),
                           io::format_fixed(by_v.front().delta_c_percent, 6));
  std::cout << fmt::format("best by cost: {} dV%={} dC%={}\n", by_c.front().label,
                           io::format_fixed(by_c.front().delta_v_percent, 6),
                           io::format_fixed(by_c.front().delta_c_percent, 6));

  auto m = manifest("sweep", o, &params);
  if (rerun_generations > 0) {
    GAParams longer = params;
    longer.generations = rerun_generations;
    longer.validate();
    const auto& top = by_v.front();
    const auto rerun = run_weight_set(scenario, {top.label, top.weights}, sc, longer);
    write_csv(out / "rerun.csv", [&](std::ostream& s) {
      io::write_recommendation_csv(s, scenario, decode_genome(rerun.run.best_genome, scenario));
    });
    io::write_text_file(out / "rerun-scenario.json",
                        io::scenario_to_json(decode_genome(rerun.run.best_genome, scenario)));
    std::cout << fmt::format("rerun {} with {} generations: dV%={} dC%={}\n", top.label, rerun_generations,
                             io::format_fixed(rerun.delta_v_percent, 6), io::format_fixed(rerun.delta_c_percent, 6));
    m["rerunGenerations"] = rerun_generations;
  }
  write_manifest(o, m);
  return kOk;
}

int cmd_map(const CommonOptions& o, const std::string& chromosome, const std::string& title,
            const std::string& output) {
  const auto kind = chromosome_from_name(chromosome);
  if (!kind) throw ConfigError(fmt::format("unknown chromosome \"{}\"", chromosome));
  const auto scenario = load_valid_scenario(o.scenario);
  const auto svg = render_grid_map(scenario, *kind, title.empty() ? std::string(name_of(*kind)) : title);
  const fs::path path = output.empty() ? fs::path(o.out) / fmt::format("map-{}.svg", name_of(*kind)) : fs::path(output);
  io::write_text_file(path, svg);
  std::cout << "wrote " << path.string() << "\n";
  return kOk;
}

int exit_code_of(std::exception_ptr error) {
  try {
    std::rethrow_exception(error);
  } catch (const SweepError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.cause() ? exit_code_of(e.cause()) : kOther;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const ValidationError& e) {
    std::cerr << "validation error:\n";
    for (const auto& v : e.violations()) std::cerr << "  " << v << "\n";
    return kValidation;
  } catch (const NoSolutionError& e) {
    std::cerr << "no solution: " << e.what() << "\n";
    return kNoSolution;
  } catch (const ConfigError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const DimensionError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const InfeasiblePerturbation& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOther;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flood vulnerability weights, sensitivity sweeps and GA design search"};
  app.require_subcommand(1);

  CommonOptions o;
  GaOptions ga;
  std::string output;
  std::string chromosome;
  std::string title;
  int rerun_generations = 0;

  auto* weights = app.add_subcommand("weights", "Derive the original and 21 perturbed weight sets");
  add_tables_flags(weights, o);
  weights->add_option("--out", o.out, "Output directory")->capture_default_str();

  auto* recover = app.add_subcommand("recover", "Recover missing rating rows from published weight sets");
  add_tables_flags(recover, o);
  recover->add_option("--out", o.out, "Output directory")->capture_default_str();
  recover->add_option("--output", output, "Completed tables file (default OUT/tables-completed.json)");

  auto* optimize = app.add_subcommand("optimize", "Run the GA on a scenario under one weight set");
  optimize->add_option("--scenario", o.scenario, "Scenario JSON")->required();
  add_tables_flags(optimize, o);
  optimize->add_option("--weight-set", o.weight_set, "Weight-set label")->capture_default_str();
  optimize->add_option("--out", o.out, "Output directory")->capture_default_str();
  add_fitness_flags(optimize, o);
  add_ga_flags(optimize, ga);

  auto* sweep_cmd = app.add_subcommand("sweep", "Run the GA once per weight set and rank the results");
  sweep_cmd->add_option("--scenario", o.scenario, "Scenario JSON")->required();
  add_tables_flags(sweep_cmd, o);
  sweep_cmd->add_option("--out", o.out, "Output directory")->capture_default_str();
  sweep_cmd->add_option("--rerun-generations", rerun_generations,
                        "Re-run the top vulnerability set with this many generations");
  add_fitness_flags(sweep_cmd, o);
  add_ga_flags(sweep_cmd, ga);

  auto* report = app.add_subcommand("report", "Per-barangay vulnerability and cost of a scenario");
  report->add_option("--scenario", o.scenario, "Scenario JSON")->required();
  add_tables_flags(report, o);
  report->add_option("--weight-set", o.weight_set, "Weight-set label")->capture_default_str();
  report->add_option("--out", o.out, "Output directory")->capture_default_str();
  report->add_option("--scale", o.scale, "Global vulnerability scale")->capture_default_str();

  auto* map = app.add_subcommand("map", "SVG grid map of one chromosome");
  map->add_option("--scenario", o.scenario, "Scenario JSON (e.g. a recommended-scenario.json)")->required();
  map->add_option("--chromosome", chromosome, "Chromosome name, e.g. Poverty")->required();
  map->add_option("--title", title, "Map title");
  map->add_option("--out", o.out, "Output directory")->capture_default_str();
  map->add_option("--output", output, "SVG path (default OUT/map-<chromosome>.svg)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    if (*weights) return cmd_weights(o);
    if (*recover) return cmd_recover(o, output);
    if (*optimize) return cmd_optimize(o, ga);
    if (*sweep_cmd) return cmd_sweep(o, ga, rerun_generations);
    if (*report) return cmd_report(o);
    if (*map) return cmd_map(o, chromosome, title, output);
  } catch (...) {
    return exit_code_of(std::current_exception());
  }
  return kOther;
}
