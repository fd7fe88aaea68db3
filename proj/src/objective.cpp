#include "floodga/objective.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "floodga/errors.hpp"

namespace floodga {

namespace detail {

double vulnerability_of(const std::array<int, kNumChromosomes>& x, double s_factor, const WeightVector& w,
                        double scale) {
  auto term = [&](ChromosomeKind k) { return w[k] * x[index_of(k)]; };
  using K = ChromosomeKind;
  const double sum = term(K::Urbanization) + term(K::Literacy) * term(K::TvRadio) +
                     term(K::Mortality) * term(K::Poverty) + term(K::Nonstructural) + term(K::Structural) +
                     term(K::Population) + term(K::Extent) + term(K::EconomicValue) + term(K::CostOfRelocation);
  return s_factor * scale * sum;
}

double cost_of(const std::array<int, kNumChromosomes>& x, double s_factor) {
  double sum = 0.0;
  for (auto kind : kAllChromosomes) {
    const double headroom = kMaxChromosomeValue - x[index_of(kind)];
    switch (cost_shape_of(kind)) {
      case CostShape::Exponential:
        sum += std::exp(headroom);
        break;
      case CostShape::Quadratic:
        sum += headroom * headroom;
        break;
      case CostShape::Linear:
        sum += headroom;
        break;
      case CostShape::Absent:
        break;
    }
  }
  return sum / s_factor;
}

}  // namespace detail

namespace {
std::array<int, kNumChromosomes> values_of(const BarangayProfile& b) {
  std::array<int, kNumChromosomes> x{};
  std::copy(b.dynamic.begin(), b.dynamic.end(), x.begin());
  std::copy(b.static_values.begin(), b.static_values.end(), x.begin() + kNumDynamic);
  return x;
}
}  // namespace

double barangay_vulnerability(const BarangayProfile& b, const WeightVector& w, double scale) {
  return detail::vulnerability_of(values_of(b), b.s_factor, w, scale);
}

double barangay_cost(const BarangayProfile& b) { return detail::cost_of(values_of(b), b.s_factor); }

double total_vulnerability(const Scenario& s, const WeightVector& w, double scale) {
  double total = 0.0;
  for (const auto& b : s.barangays) total += barangay_vulnerability(b, w, scale);
  return total;
}

double total_cost(const Scenario& s) {
  double total = 0.0;
  for (const auto& b : s.barangays) total += barangay_cost(b);
  return total;
}

ObjectiveValues evaluate_objectives(const Scenario& s, const WeightVector& w, double scale) {
  ObjectiveValues out;
  out.per_barangay.reserve(s.barangays.size());
  for (const auto& b : s.barangays) {
    const ObjectivePoint p{barangay_vulnerability(b, w, scale), barangay_cost(b)};
    out.vulnerability_total += p.vulnerability;
    out.cost_total += p.cost;
    out.per_barangay.push_back(p);
  }
  return out;
}

FitnessConfig FitnessConfig::relative_to(const Scenario& s, const WeightVector& w, double alpha, double beta,
                                         double scale) {
  FitnessConfig cfg;
  cfg.alpha = alpha;
  cfg.beta = beta;
  cfg.scale = scale;
  cfg.baseline_v = total_vulnerability(s, w, scale);
  cfg.baseline_c = total_cost(s);
  return cfg;
}

void FitnessConfig::validate() const {
  if (!(alpha >= 0.0) || !(beta >= 0.0)) throw ConfigError("alpha and beta must be non-negative");
  if (!(alpha + beta > 0.0)) throw ConfigError("alpha + beta must be positive");
  if (!(baseline_v > 0.0)) throw ConfigError(fmt::format("baseline vulnerability must be positive (got {})", baseline_v));
  if (!(baseline_c > 0.0)) throw ConfigError(fmt::format("baseline cost must be positive (got {})", baseline_c));
  if (!(scale > 0.0)) throw ConfigError("scale must be positive");
}

double scalarized_fitness(double vulnerability, double cost, const FitnessConfig& cfg) {
  return cfg.alpha * vulnerability / cfg.baseline_v + cfg.beta * cost / cfg.baseline_c;
}

double scalarized_fitness(const Scenario& s, const WeightVector& w, const FitnessConfig& cfg) {
  cfg.validate();
  return scalarized_fitness(total_vulnerability(s, w, cfg.scale), total_cost(s), cfg);
}

std::vector<ObjectivePoint> pareto_front(std::span<const ObjectivePoint> points) {
  std::vector<ObjectivePoint> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(), [](const ObjectivePoint& a, const ObjectivePoint& b) {
    return a.vulnerability < b.vulnerability || (a.vulnerability == b.vulnerability && a.cost < b.cost);
  });
  // After sorting by (V, C), a point survives iff its cost is strictly below
  // every cost seen so far.
  std::vector<ObjectivePoint> front;
  for (const auto& p : sorted) {
    if (front.empty() || p.cost < front.back().cost) front.push_back(p);
  }
  return front;
}

}  // namespace floodga
