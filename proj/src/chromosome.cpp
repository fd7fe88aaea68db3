#include "floodga/chromosome.hpp"

namespace floodga {

namespace {
constexpr std::array<std::string_view, kNumChromosomes> kNames = {
    "Urbanization", "Literacy",  "Mortality",     "Poverty",         "TvRadio",  "Nonstructural",
    "Structural",   "Population", "Extent", "EconomicValue", "CostOfRelocation",
};
constexpr std::array<std::string_view, kNumChromosomes> kColumns = {
    "M1", "M2", "M3", "M4", "M5", "M6", "M7", "M8", "M9", "M10", "M11",
};
}  // namespace

std::string_view name_of(ChromosomeKind kind) noexcept { return kNames[index_of(kind)]; }

std::string_view column_label(ChromosomeKind kind) noexcept { return kColumns[index_of(kind)]; }

std::optional<ChromosomeKind> chromosome_from_name(std::string_view name) noexcept {
  for (auto kind : kAllChromosomes) {
    if (kNames[index_of(kind)] == name) return kind;
  }
  return std::nullopt;
}

}  // namespace floodga
