#include "floodga/scenario.hpp"

#include <fmt/format.h>

#include <cmath>
#include <unordered_set>

#include "floodga/errors.hpp"

namespace floodga {

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error([&] {
        std::string joined;
        for (const auto& v : violations) {
          if (!joined.empty()) joined += "; ";
          joined += v;
        }
        return joined;
      }()),
      violations_(std::move(violations)) {}

std::vector<std::string> scenario_violations(const Scenario& raw) {
  std::vector<std::string> out;
  if (raw.barangays.empty()) {
    out.emplace_back("scenario must contain at least one barangay");
  }
  if (raw.grid_dims.rows < 0 || raw.grid_dims.cols < 0) {
    out.emplace_back("gridDims must be non-negative");
  }
  std::unordered_set<std::string> seen;
  for (const auto& b : raw.barangays) {
    if (!seen.insert(b.name).second) {
      out.push_back(fmt::format("duplicate barangay name \"{}\"", b.name));
    }
    if (!(b.s_factor > 0.0) || !std::isfinite(b.s_factor)) {
      out.push_back(fmt::format("{}: sFactor must be positive", b.name));
    }
    for (auto kind : kAllChromosomes) {
      const int v = b.value(kind);
      if (v < 0 || v > kMaxChromosomeValue) {
        out.push_back(fmt::format("{}: {} value {} out of 0..3", b.name, name_of(kind), v));
      }
    }
    if (b.grid_cell) {
      const auto [r, c] = *b.grid_cell;
      if (r < 0 || c < 0 || r >= raw.grid_dims.rows || c >= raw.grid_dims.cols) {
        out.push_back(fmt::format("{}: gridCell [{},{}] outside gridDims [{},{}]", b.name, r, c,
                                  raw.grid_dims.rows, raw.grid_dims.cols));
      }
    }
  }
  return out;
}

Scenario validate_scenario(Scenario raw) {
  if (auto violations = scenario_violations(raw); !violations.empty()) {
    throw ValidationError(std::move(violations));
  }
  return raw;
}

Genome encode_genome(const Scenario& scenario) {
  Genome g(scenario.barangays.size() * kNumDynamic);
  for (std::size_t i = 0; i < scenario.barangays.size(); ++i) {
    for (std::size_t j = 0; j < kNumDynamic; ++j) {
      g[i * kNumDynamic + j] = static_cast<ChromosomeValue>(scenario.barangays[i].dynamic[j]);
    }
  }
  return g;
}

Scenario decode_genome(const Genome& genome, const Scenario& scenario) {
  const auto expected = scenario.barangays.size() * kNumDynamic;
  if (genome.size() != expected) {
    throw DimensionError(fmt::format("genome has {} genes, scenario needs {}", genome.size(), expected));
  }
  Scenario out = scenario;
  for (std::size_t i = 0; i < out.barangays.size(); ++i) {
    for (std::size_t j = 0; j < kNumDynamic; ++j) {
      out.barangays[i].dynamic[j] = genome[i * kNumDynamic + j];
    }
  }
  return out;
}

}  // namespace floodga
