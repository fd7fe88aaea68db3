#pragma once

// Population-level kernels. Each comes as a serial reference and an OpenMP
// version; both write results by individual index, so their outputs are
// bit-identical for any thread count.

#include <array>
#include <span>
#include <vector>

#include "floodga/objective.hpp"
#include "floodga/scenario.hpp"
#include "floodga/weights.hpp"

namespace floodga {

struct Evaluation {
  double fitness = 0.0;
  double vulnerability = 0.0;
  double cost = 0.0;
  friend bool operator==(const Evaluation&, const Evaluation&) = default;
};

/// Scores genomes against a fixed scenario without materializing decoded
/// scenarios. Static chromosomes and sFactors come from the scenario.
class GenomeEvaluator {
 public:
  GenomeEvaluator(const Scenario& scenario, const WeightVector& weights, const FitnessConfig& cfg);

  std::size_t genome_length() const noexcept { return barangays_.size() * kNumDynamic; }
  Evaluation evaluate(const Genome& genome) const;

 private:
  struct BarangayTerms {
    double s_factor;
    std::array<int, kNumStatic> static_values;
  };
  std::vector<BarangayTerms> barangays_;
  WeightVector weights_;
  FitnessConfig cfg_;
};

enum class Backend { Serial, OpenMP };

void evaluate_population_serial(const GenomeEvaluator& evaluator, std::span<const Genome> population,
                                std::span<Evaluation> out);
void evaluate_population_omp(const GenomeEvaluator& evaluator, std::span<const Genome> population,
                             std::span<Evaluation> out);
void evaluate_population(Backend backend, const GenomeEvaluator& evaluator,
                         std::span<const Genome> population, std::span<Evaluation> out);

}  // namespace floodga
