#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "floodga/chromosome.hpp"

namespace floodga {

/// A trait level, 0..3 (binary 00..11).
using ChromosomeValue = std::uint8_t;

struct GridCell {
  int row = 0;
  int col = 0;
  friend bool operator==(const GridCell&, const GridCell&) = default;
};

struct GridDims {
  int rows = 0;
  int cols = 0;
  friend bool operator==(const GridDims&, const GridDims&) = default;
};

/// One neighbourhood. Values are stored as read; validate_scenario enforces 0..3.
struct BarangayProfile {
  std::string name;
  double s_factor = 1.0;
  std::array<int, kNumDynamic> dynamic{};
  std::array<int, kNumStatic> static_values{};
  std::optional<GridCell> grid_cell;

  /// Value of any of the eleven chromosomes.
  int value(ChromosomeKind kind) const noexcept {
    const auto i = index_of(kind);
    return i < kNumDynamic ? dynamic[i] : static_values[i - kNumDynamic];
  }

  friend bool operator==(const BarangayProfile&, const BarangayProfile&) = default;
};

/// A city: barangay order is the genome order.
struct Scenario {
  std::string name;
  GridDims grid_dims;
  std::vector<BarangayProfile> barangays;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Dynamic genes of every barangay, barangay-major: genes[7*i + j] is
/// barangay i's j-th dynamic chromosome.
class Genome {
 public:
  Genome() = default;
  explicit Genome(std::vector<ChromosomeValue> genes) : genes_(std::move(genes)) {}
  explicit Genome(std::size_t length, ChromosomeValue fill = 0) : genes_(length, fill) {}

  std::size_t size() const noexcept { return genes_.size(); }
  std::size_t barangay_count() const noexcept { return genes_.size() / kNumDynamic; }

  ChromosomeValue operator[](std::size_t i) const noexcept { return genes_[i]; }
  ChromosomeValue& operator[](std::size_t i) noexcept { return genes_[i]; }

  std::span<const ChromosomeValue> genes() const noexcept { return genes_; }
  std::span<ChromosomeValue> genes() noexcept { return genes_; }

  /// The seven dynamic genes of barangay i.
  std::span<const ChromosomeValue, kNumDynamic> barangay(std::size_t i) const noexcept {
    return std::span<const ChromosomeValue, kNumDynamic>(genes_.data() + i * kNumDynamic,
                                                          kNumDynamic);
  }

  friend bool operator==(const Genome&, const Genome&) = default;

 private:
  std::vector<ChromosomeValue> genes_;
};

/// Returns every invariant violation; an empty list means the scenario is valid.
std::vector<std::string> scenario_violations(const Scenario& raw);

/// Returns `raw` unchanged if valid, otherwise throws ValidationError listing
/// every violation (empty list, duplicate names, sFactor <= 0, values outside
/// 0..3, grid cells outside gridDims).
Scenario validate_scenario(Scenario raw);

Genome encode_genome(const Scenario& scenario);

/// Copy of `scenario` with dynamic chromosomes overwritten from `genome`.
/// Throws DimensionError unless genome.size() == 7 * barangays.
Scenario decode_genome(const Genome& genome, const Scenario& scenario);

}  // namespace floodga
