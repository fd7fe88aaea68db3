#include "floodga/weights.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "floodga/errors.hpp"

namespace floodga {

namespace {
constexpr std::array<std::string_view, 5> kImportanceNames = {
    "AlwaysVeryImportant", "UsuallyImportant", "SometimesImportant", "RarelyOfImportance",
    "NotWorthConsidering",
};
constexpr double kShareSumTolerance = 1e-9;
}  // namespace

std::string_view name_of(Importance importance) noexcept {
  return kImportanceNames[static_cast<std::size_t>(importance)];
}

std::optional<Importance> importance_from_name(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kImportanceNames.size(); ++i) {
    if (kImportanceNames[i] == name) return static_cast<Importance>(i);
  }
  return std::nullopt;
}

std::string_view name_of(PerturbationMode mode) noexcept {
  switch (mode) {
    case PerturbationMode::Minimize:
      return "minimize";
    case PerturbationMode::Median:
      return "median";
    case PerturbationMode::Maximize:
      return "maximize";
  }
  return "";
}

AspectPercentages::AspectPercentages(std::vector<AspectShare> entries) : entries_(std::move(entries)) {
  std::vector<std::string> problems;
  if (entries_.empty()) problems.emplace_back("no aspect shares");
  double sum = 0.0;
  for (const auto& e : entries_) {
    if (!(e.share > 0.0)) problems.push_back(fmt::format("share of \"{}\" must be positive", e.aspect));
    sum += e.share;
  }
  if (!entries_.empty() && std::abs(sum - 1.0) > kShareSumTolerance) {
    problems.push_back(fmt::format("shares sum to {:.12g}, not 1", sum));
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));
}

AspectPercentages AspectPercentages::from_points(std::span<const HazardAspect> selected,
                                                 std::span<const int> points) {
  if (selected.size() != points.size()) {
    throw DimensionError(fmt::format("{} aspects but {} point values", selected.size(), points.size()));
  }
  std::vector<AspectShare> entries;
  entries.reserve(selected.size());
  for (std::size_t i = 0; i < selected.size(); ++i) {
    entries.push_back({selected[i].name, points[i] / 100.0});
  }
  return AspectPercentages(std::move(entries));
}

std::vector<double> AspectPercentages::shares() const {
  std::vector<double> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.share);
  return out;
}

std::size_t AspectPercentages::index_of(std::string_view aspect) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].aspect == aspect) return i;
  }
  throw ConfigError(fmt::format("unknown aspect \"{}\"", aspect));
}

RatingMatrix::RatingMatrix(std::array<std::vector<int>, kNumChromosomes> rows) : rows_(std::move(rows)) {
  const auto n = rows_[0].size();
  if (n == 0) throw DimensionError("rating rows must have at least one column");
  std::vector<std::string> problems;
  for (auto kind : kAllChromosomes) {
    const auto& r = rows_[floodga::index_of(kind)];
    if (r.size() != n) {
      throw DimensionError(fmt::format("rating row {} has {} columns, expected {}", name_of(kind), r.size(), n));
    }
    for (int v : r) {
      if (v < 1 || v > 10) {
        problems.push_back(fmt::format("{}: rating {} out of 1..10", name_of(kind), v));
      }
    }
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));
}

std::vector<HazardAspect> select_aspects(std::span<const HazardAspect> table) {
  std::vector<HazardAspect> out;
  for (const auto& a : table) {
    if (a.importance == Importance::AlwaysVeryImportant || a.importance == Importance::UsuallyImportant) {
      out.push_back(a);
    }
  }
  if (out.size() < 2) {
    throw ConfigError(fmt::format("only {} aspect(s) marked always very important or usually important; need at least 2",
                                  out.size()));
  }
  return out;
}

std::vector<std::string> validate_point_distribution(std::span<const HazardAspect> selected,
                                                     std::span<const int> points) {
  std::vector<std::string> out;
  if (selected.size() != points.size()) {
    out.push_back(fmt::format("{} aspects but {} point values", selected.size(), points.size()));
    return out;
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i] <= 0) out.push_back(fmt::format("\"{}\": points must be positive", selected[i].name));
  }
  const int sum = std::accumulate(points.begin(), points.end(), 0);
  if (sum != 100) out.push_back(fmt::format("points sum to {}, not 100", sum));

  // Dominance only needs the weakest always-important against the strongest usually-important.
  std::optional<std::size_t> weakest_always;
  std::optional<std::size_t> strongest_usually;
  for (std::size_t i = 0; i < selected.size(); ++i) {
    if (selected[i].importance == Importance::AlwaysVeryImportant) {
      if (!weakest_always || points[i] < points[*weakest_always]) weakest_always = i;
    } else if (selected[i].importance == Importance::UsuallyImportant) {
      if (!strongest_usually || points[i] > points[*strongest_usually]) strongest_usually = i;
    } else {
      out.push_back(fmt::format("\"{}\" is not a selected aspect", selected[i].name));
    }
  }
  if (weakest_always && strongest_usually &&
      points[*weakest_always] < 2 * points[*strongest_usually]) {
    out.push_back(fmt::format("\"{}\" ({}) is less than twice \"{}\" ({})", selected[*weakest_always].name,
                              points[*weakest_always], selected[*strongest_usually].name,
                              points[*strongest_usually]));
  }
  return out;
}

double component_weight(std::span<const int> ratings, std::span<const double> shares) {
  if (ratings.size() != shares.size()) {
    throw DimensionError(fmt::format("{} ratings but {} shares", ratings.size(), shares.size()));
  }
  double w = 0.0;
  for (std::size_t a = 0; a < ratings.size(); ++a) w += ratings[a] * shares[a];
  return w;
}

WeightVector compute_weights(const RatingMatrix& ratings, const AspectPercentages& shares) {
  if (ratings.aspect_count() != shares.size()) {
    throw DimensionError(fmt::format("ratings have {} columns but there are {} aspects",
                                     ratings.aspect_count(), shares.size()));
  }
  const auto s = shares.shares();
  WeightVector w;
  for (std::size_t c = 0; c < kNumChromosomes; ++c) w.values[c] = component_weight(ratings.row(c), s);
  return w;
}

AspectPercentages perturb_shares(const AspectPercentages& shares, const PerturbationSpec& spec) {
  const auto n = shares.size();
  if (spec.aspect_index >= n) {
    throw DimensionError(fmt::format("aspect index {} out of range for {} aspects", spec.aspect_index, n));
  }
  if (n < 2) throw ConfigError("perturbation needs at least two aspects");
  const double delta = spec.delta();
  const double spread = delta / static_cast<double>(n - 1);
  std::vector<AspectShare> entries = shares.entries();
  for (std::size_t i = 0; i < n; ++i) {
    entries[i].share += (i == spec.aspect_index) ? delta : -spread;
    if (!(entries[i].share > 0.0)) {
      throw InfeasiblePerturbation(fmt::format("{} of \"{}\" drives \"{}\" to {:.6g}", name_of(spec.mode),
                                               entries[spec.aspect_index].aspect, entries[i].aspect,
                                               entries[i].share));
    }
  }
  return AspectPercentages(std::move(entries));
}

std::string perturbation_label(std::string_view aspect, PerturbationMode mode) {
  return fmt::format("({}, {})", aspect, name_of(mode));
}

std::vector<LabeledShares> perturbed_share_sets(const AspectPercentages& shares) {
  std::vector<LabeledShares> out;
  out.reserve(3 * shares.size() + 1);
  out.push_back({"original", shares});
  for (std::size_t a = 0; a < shares.size(); ++a) {
    for (auto mode : kAllModes) {
      out.push_back({perturbation_label(shares[a].aspect, mode), perturb_shares(shares, {a, mode})});
    }
  }
  return out;
}

std::vector<LabeledWeights> generate_weight_sets(const RatingMatrix& ratings, const AspectPercentages& shares) {
  std::vector<LabeledWeights> out;
  for (auto& set : perturbed_share_sets(shares)) {
    out.push_back({std::move(set.label), compute_weights(ratings, set.shares)});
  }
  return out;
}

double round_half_up(double value, int digits) {
  const double factor = std::pow(10.0, digits);
  const double scaled = std::abs(value) * factor;
  double rounded = std::floor(scaled);
  if (scaled - rounded >= 0.5 - 1e-9 * factor) rounded += 1.0;
  return std::copysign(rounded / factor, value);
}

}  // namespace floodga
