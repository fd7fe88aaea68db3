#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "floodga/scenario.hpp"
#include "floodga/sensitivity.hpp"
#include "floodga/weights.hpp"

namespace floodga::io {

/// Whole file as text; ParseError when it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

// ---- scenario file -------------------------------------------------------

/// Parses the scenario JSON schema. Malformed JSON, unknown or missing fields
/// and wrong types raise ParseError; value invariants are left to validate_scenario.
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);
std::string scenario_to_json(const Scenario& scenario);

// ---- aspect / rating tables ---------------------------------------------

/// The aspect table (in rating-column order for the selected aspects) plus
/// any rating rows present. Missing rows are left empty for recovery.
struct TablesInput {
  std::vector<HazardAspect> aspects;
  std::vector<std::optional<int>> points;  // aligned with aspects
  std::array<std::optional<std::vector<int>>, kNumChromosomes> ratings;

  std::vector<HazardAspect> selected() const;
  std::vector<int> selected_points() const;
  /// Shares from the selected aspects' points after validate_point_distribution.
  /// Throws ValidationError listing the failed constraints.
  AspectPercentages shares() const;
  std::vector<ChromosomeKind> missing_rows() const;
  /// Throws ValidationError if any row is missing.
  RatingMatrix rating_matrix() const;
};

struct RecoveredRow {
  ChromosomeKind kind;
  std::vector<std::vector<int>> solutions;  // lexicographic; the first is used
};

/// Fills every missing rating row from published weight sets (label,M1..M11,
/// labels matching perturbed_share_sets). Throws NoSolutionError naming the
/// component when a row cannot be recovered, ParseError when a label is absent.
std::vector<RecoveredRow> complete_tables(TablesInput& tables, std::span<const LabeledWeights> published,
                                          const RecoveryOptions& options = {});

TablesInput parse_tables(std::string_view json_text);
TablesInput load_tables(const std::filesystem::path& path);
std::string tables_to_json(const TablesInput& tables);

// ---- CSV -----------------------------------------------------------------

/// RFC-4180 field: quoted when it holds a comma, quote, CR or LF.
std::string csv_field(std::string_view text);

/// Splits RFC-4180 text into records. Throws ParseError on an unterminated quote.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

/// `label,M1..M11`, 2-decimal half-up, CRLF line endings.
void write_weight_sets_csv(std::ostream& out, std::span<const LabeledWeights> sets);
std::vector<LabeledWeights> parse_weight_sets_csv(std::string_view text);

/// `label,deltaV_percent,deltaC_percent,bestV,bestC,seed`, 6-decimal fixed point.
void write_sweep_csv(std::ostream& out, std::span<const SweepResult> results);

/// `barangay,chromosome,current,recommended` over every dynamic chromosome.
void write_recommendation_csv(std::ostream& out, const Scenario& current,
                              const Scenario& recommended);

/// `barangay,sFactor,V,C` plus a trailing `TOTAL` row.
void write_objective_csv(std::ostream& out, const Scenario& scenario, const ObjectiveValues& values);

/// `vulnerability,cost` rows.
void write_pareto_csv(std::ostream& out, std::span<const ObjectivePoint> front);

std::string format_fixed(double value, int digits);

}  // namespace floodga::io
