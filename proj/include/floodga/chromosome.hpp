#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace floodga {

/// The eleven vulnerability components, in canonical order. The first seven
/// are searchable traits; the last four describe exposure and never change.
enum class ChromosomeKind : std::uint8_t {
  Urbanization,
  Literacy,
  Mortality,
  Poverty,
  TvRadio,
  Nonstructural,
  Structural,
  Population,
  Extent,
  EconomicValue,
  CostOfRelocation,
};

enum class ChromosomeClass : std::uint8_t { Dynamic, Static };

/// How the three's complement (3 - X) of a trait enters the cost.
enum class CostShape : std::uint8_t { Exponential, Linear, Quadratic, Absent };

inline constexpr std::size_t kNumChromosomes = 11;
inline constexpr std::size_t kNumDynamic = 7;
inline constexpr std::size_t kNumStatic = 4;
inline constexpr int kMaxChromosomeValue = 3;

inline constexpr std::array<ChromosomeKind, kNumChromosomes> kAllChromosomes = {
    ChromosomeKind::Urbanization,  ChromosomeKind::Literacy,      ChromosomeKind::Mortality,
    ChromosomeKind::Poverty,       ChromosomeKind::TvRadio,       ChromosomeKind::Nonstructural,
    ChromosomeKind::Structural,    ChromosomeKind::Population,    ChromosomeKind::Extent,
    ChromosomeKind::EconomicValue, ChromosomeKind::CostOfRelocation,
};

constexpr std::size_t index_of(ChromosomeKind kind) noexcept {
  return static_cast<std::size_t>(kind);
}

constexpr ChromosomeClass class_of(ChromosomeKind kind) noexcept {
  return index_of(kind) < kNumDynamic ? ChromosomeClass::Dynamic : ChromosomeClass::Static;
}

constexpr CostShape cost_shape_of(ChromosomeKind kind) noexcept {
  switch (kind) {
    case ChromosomeKind::Urbanization:
    case ChromosomeKind::Poverty:
    case ChromosomeKind::Structural:
    case ChromosomeKind::EconomicValue:
    case ChromosomeKind::CostOfRelocation:
      return CostShape::Exponential;
    case ChromosomeKind::Mortality:
      return CostShape::Quadratic;
    case ChromosomeKind::Literacy:
    case ChromosomeKind::TvRadio:
    case ChromosomeKind::Nonstructural:
    case ChromosomeKind::Population:
      return CostShape::Linear;
    case ChromosomeKind::Extent:
      return CostShape::Absent;
  }
  return CostShape::Absent;
}

/// Canonical identifier used in JSON files and CLI flags ("Urbanization", "TvRadio", ...).
std::string_view name_of(ChromosomeKind kind) noexcept;

/// Column label of the weight-set CSV ("M1".."M11").
std::string_view column_label(ChromosomeKind kind) noexcept;

std::optional<ChromosomeKind> chromosome_from_name(std::string_view name) noexcept;

}  // namespace floodga
