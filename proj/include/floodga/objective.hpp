#pragma once

#include <array>
#include <span>
#include <vector>

#include "floodga/scenario.hpp"
#include "floodga/weights.hpp"

namespace floodga {

namespace detail {
/// Objective kernels over the eleven values in canonical order.
double vulnerability_of(const std::array<int, kNumChromosomes>& x, double s_factor, const WeightVector& w,
                        double scale);
double cost_of(const std::array<int, kNumChromosomes>& x, double s_factor);
}  // namespace detail

/// V_i = S_i * scale * (weighted sum of traits), where the Literacy/TvRadio and
/// Mortality/Poverty pairs enter as four-factor products (W_a X_a)(W_b X_b).
double barangay_vulnerability(const BarangayProfile& b, const WeightVector& w, double scale = 1.0);

/// C_i = (sum over traits of exp, linear or quadratic penalties on 3 - X) / S_i.
/// Extent carries no cost.
double barangay_cost(const BarangayProfile& b);

double total_vulnerability(const Scenario& s, const WeightVector& w, double scale = 1.0);
double total_cost(const Scenario& s);

struct ObjectivePoint {
  double vulnerability = 0.0;
  double cost = 0.0;
  friend bool operator==(const ObjectivePoint&, const ObjectivePoint&) = default;
};

struct ObjectiveValues {
  double vulnerability_total = 0.0;
  double cost_total = 0.0;
  std::vector<ObjectivePoint> per_barangay;
};

ObjectiveValues evaluate_objectives(const Scenario& s, const WeightVector& w, double scale = 1.0);

/// F = alpha * V / baselineV + beta * C / baselineC. Lower is better.
struct FitnessConfig {
  double alpha = 1.0;
  double beta = 1.0;
  double baseline_v = 1.0;
  double baseline_c = 1.0;
  double scale = 1.0;

  /// Baselines taken from the scenario's own current design.
  static FitnessConfig relative_to(const Scenario& s, const WeightVector& w, double alpha = 1.0,
                                   double beta = 1.0, double scale = 1.0);

  /// Throws ConfigError on negative coefficients, alpha + beta == 0, or
  /// non-positive baselines or scale.
  void validate() const;
};

double scalarized_fitness(double vulnerability, double cost, const FitnessConfig& cfg);
double scalarized_fitness(const Scenario& s, const WeightVector& w, const FitnessConfig& cfg);

/// Non-dominated subset (minimizing both), sorted by vulnerability then cost,
/// with duplicates collapsed to one representative.
std::vector<ObjectivePoint> pareto_front(std::span<const ObjectivePoint> points);

}  // namespace floodga
