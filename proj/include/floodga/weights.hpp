#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "floodga/chromosome.hpp"

namespace floodga {

enum class Importance {
  AlwaysVeryImportant,
  UsuallyImportant,
  SometimesImportant,
  RarelyOfImportance,
  NotWorthConsidering,
};

std::string_view name_of(Importance importance) noexcept;
std::optional<Importance> importance_from_name(std::string_view name) noexcept;

/// A row of the hazard-aspect determination table.
struct HazardAspect {
  std::string name;
  Importance importance = Importance::NotWorthConsidering;
  friend bool operator==(const HazardAspect&, const HazardAspect&) = default;
};

struct AspectShare {
  std::string aspect;
  double share = 0.0;
};

/// Shares of the selected aspects, in rating-column order. Always sums to 1.
class AspectPercentages {
 public:
  /// Throws ValidationError unless every share is > 0 and they sum to 1 within 1e-9.
  explicit AspectPercentages(std::vector<AspectShare> entries);

  /// Shares from integer points (points / 100).
  static AspectPercentages from_points(std::span<const HazardAspect> selected,
                                       std::span<const int> points);

  std::size_t size() const noexcept { return entries_.size(); }
  const AspectShare& operator[](std::size_t i) const noexcept { return entries_[i]; }
  const std::vector<AspectShare>& entries() const noexcept { return entries_; }
  std::vector<double> shares() const;

  /// Index of the named aspect; throws ConfigError when absent.
  std::size_t index_of(std::string_view aspect) const;

 private:
  std::vector<AspectShare> entries_;
};

/// 11 x n ratings in 1..10; row c is ChromosomeKind c, column a is aspect a.
class RatingMatrix {
 public:
  /// Throws DimensionError on ragged rows or zero columns, ValidationError on
  /// ratings outside 1..10.
  RatingMatrix(std::array<std::vector<int>, kNumChromosomes> rows);

  std::size_t aspect_count() const noexcept { return rows_[0].size(); }
  std::span<const int> row(ChromosomeKind kind) const noexcept { return rows_[floodga::index_of(kind)]; }
  std::span<const int> row(std::size_t c) const noexcept { return rows_[c]; }

 private:
  std::array<std::vector<int>, kNumChromosomes> rows_;
};

/// Component weights W_c, indexed by canonical chromosome order.
struct WeightVector {
  std::array<double, kNumChromosomes> values{};

  double operator[](ChromosomeKind kind) const noexcept { return values[floodga::index_of(kind)]; }
  double& operator[](ChromosomeKind kind) noexcept { return values[floodga::index_of(kind)]; }
  friend bool operator==(const WeightVector&, const WeightVector&) = default;
};

enum class PerturbationMode { Minimize, Median, Maximize };

inline constexpr std::array<PerturbationMode, 3> kAllModes = {
    PerturbationMode::Minimize, PerturbationMode::Median, PerturbationMode::Maximize};

std::string_view name_of(PerturbationMode mode) noexcept;

/// Fixed share offsets: the largest decrement that keeps an 8-point aspect
/// positive, the largest increment that keeps the others positive, and their midpoint.
constexpr double delta_of(PerturbationMode mode) noexcept {
  switch (mode) {
    case PerturbationMode::Minimize:
      return -0.07;
    case PerturbationMode::Median:
      return 0.2;
    case PerturbationMode::Maximize:
      return 0.47;
  }
  return 0.0;
}

struct PerturbationSpec {
  std::size_t aspect_index = 0;
  PerturbationMode mode = PerturbationMode::Minimize;
  double delta() const noexcept { return delta_of(mode); }
};

/// Aspects marked always-very-important or usually-important, in table order.
/// Throws ConfigError when fewer than two are selected.
std::vector<HazardAspect> select_aspects(std::span<const HazardAspect> table);

/// Checks the point allocation: positive whole numbers summing to 100, with
/// every always-very-important aspect at least twice every usually-important
/// one. Returns one message per failed constraint; empty means ok.
std::vector<std::string> validate_point_distribution(std::span<const HazardAspect> selected,
                                                     std::span<const int> points);

/// Dot product of a rating row with the shares.
double component_weight(std::span<const int> ratings, std::span<const double> shares);

WeightVector compute_weights(const RatingMatrix& ratings, const AspectPercentages& shares);

/// Moves `delta` onto the target aspect and takes delta/(n-1) from each other
/// aspect. Throws InfeasiblePerturbation if any share ends up <= 0.
AspectPercentages perturb_shares(const AspectPercentages& shares, const PerturbationSpec& spec);

struct LabeledShares {
  std::string label;
  AspectPercentages shares;
};

struct LabeledWeights {
  std::string label;
  WeightVector weights;
};

/// "(aspect, minimize)" etc.
std::string perturbation_label(std::string_view aspect, PerturbationMode mode);

/// The unperturbed shares labeled "original", then every aspect x mode in
/// column order: 3n + 1 entries.
std::vector<LabeledShares> perturbed_share_sets(const AspectPercentages& shares);

/// compute_weights over every entry of perturbed_share_sets.
std::vector<LabeledWeights> generate_weight_sets(const RatingMatrix& ratings,
                                                 const AspectPercentages& shares);

/// Half-up rounding to `digits` decimals. Values within 1e-9 of a half-way
/// point are treated as exactly half-way.
double round_half_up(double value, int digits);

struct RecoveryOptions {
  double tolerance = 0.0051;
  int min_rating = 1;
  int max_rating = 10;
  bool parallel = true;
};

/// Every integer rating row r in {min..max}^n with |r . s_k - targets[k]| <= tolerance
/// for all share vectors s_k of perturbed_share_sets(shares). Rows are sorted
/// lexicographically. Throws NoSolutionError when none fit, DimensionError when
/// the target count differs from 3n + 1.
std::vector<std::vector<int>> recover_rating_row(std::span<const double> targets,
                                                 const AspectPercentages& shares,
                                                 const RecoveryOptions& options = {});

/// Same search over explicit share vectors (each of length n).
std::vector<std::vector<int>> recover_rating_row(std::span<const double> targets,
                                                 std::span<const std::vector<double>> share_sets,
                                                 const RecoveryOptions& options = {});

}  // namespace floodga
