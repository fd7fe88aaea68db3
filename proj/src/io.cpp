#include "floodga/io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "floodga/errors.hpp"
#include "floodga/objective.hpp"
#include "json.hpp"

namespace floodga::io {

using nlohmann::json;

namespace {

constexpr std::string_view kCrlf = "\r\n";

json parse_json(std::string_view text, std::string_view what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a 1-based line/column.
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(fmt::format("{}: malformed JSON at line {}, column {}: {}", what, line, col, e.what()));
  }
}

void require_object(const json& j, std::string_view where, std::initializer_list<std::string_view> required,
                    std::initializer_list<std::string_view> optional = {}) {
  if (!j.is_object()) throw ParseError(fmt::format("{}: expected an object", where));
  for (auto key : required) {
    if (!j.contains(std::string(key))) throw ParseError(fmt::format("{}: missing field \"{}\"", where, key));
  }
  for (const auto& [key, _] : j.items()) {
    const bool known = std::find(required.begin(), required.end(), key) != required.end() ||
                       std::find(optional.begin(), optional.end(), key) != optional.end();
    if (!known) throw ParseError(fmt::format("{}: unknown field \"{}\"", where, key));
  }
}

template <typename T>
T get_as(const json& j, std::string_view where) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ParseError(fmt::format("{}: wrong type", where));
  }
}

int get_int(const json& j, std::string_view where) {
  if (!j.is_number_integer()) throw ParseError(fmt::format("{}: expected an integer", where));
  return j.get<int>();
}

template <std::size_t N>
std::array<int, N> get_int_array(const json& j, std::string_view where) {
  if (!j.is_array() || j.size() != N) throw ParseError(fmt::format("{}: expected an array of {} integers", where, N));
  std::array<int, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = get_int(j[i], fmt::format("{}[{}]", where, i));
  return out;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(fmt::format("cannot open {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  out << text;
}

// ---- scenario ---------------------------------------------------------------

Scenario parse_scenario(std::string_view json_text) {
  const json j = parse_json(json_text, "scenario");
  require_object(j, "scenario", {"name", "gridDims", "barangays"});
  Scenario s;
  s.name = get_as<std::string>(j["name"], "scenario.name");
  const auto dims = get_int_array<2>(j["gridDims"], "scenario.gridDims");
  s.grid_dims = {dims[0], dims[1]};
  if (!j["barangays"].is_array()) throw ParseError("scenario.barangays: expected an array");
  for (std::size_t i = 0; i < j["barangays"].size(); ++i) {
    const json& b = j["barangays"][i];
    const auto where = fmt::format("barangays[{}]", i);
    require_object(b, where, {"name", "sFactor", "dynamic", "static"}, {"gridCell"});
    BarangayProfile p;
    p.name = get_as<std::string>(b["name"], where + ".name");
    if (!b["sFactor"].is_number()) throw ParseError(where + ".sFactor: expected a number");
    p.s_factor = b["sFactor"].get<double>();
    p.dynamic = get_int_array<kNumDynamic>(b["dynamic"], where + ".dynamic");
    p.static_values = get_int_array<kNumStatic>(b["static"], where + ".static");
    if (b.contains("gridCell")) {
      const auto cell = get_int_array<2>(b["gridCell"], where + ".gridCell");
      p.grid_cell = GridCell{cell[0], cell[1]};
    }
    s.barangays.push_back(std::move(p));
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) { return parse_scenario(read_text_file(path)); }

std::string scenario_to_json(const Scenario& scenario) {
  json j;
  j["name"] = scenario.name;
  j["gridDims"] = {scenario.grid_dims.rows, scenario.grid_dims.cols};
  j["barangays"] = json::array();
  for (const auto& b : scenario.barangays) {
    json jb;
    jb["name"] = b.name;
    jb["sFactor"] = b.s_factor;
    if (b.grid_cell) jb["gridCell"] = {b.grid_cell->row, b.grid_cell->col};
    jb["dynamic"] = b.dynamic;
    jb["static"] = b.static_values;
    j["barangays"].push_back(std::move(jb));
  }
  return j.dump(2) + "\n";
}

// ---- tables -----------------------------------------------------------------

std::vector<HazardAspect> TablesInput::selected() const {
  return select_aspects(aspects);
}

std::vector<int> TablesInput::selected_points() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < aspects.size(); ++i) {
    const auto imp = aspects[i].importance;
    if (imp != Importance::AlwaysVeryImportant && imp != Importance::UsuallyImportant) continue;
    if (!points[i]) throw ValidationError(fmt::format("selected aspect \"{}\" has no points", aspects[i].name));
    out.push_back(*points[i]);
  }
  return out;
}

AspectPercentages TablesInput::shares() const {
  const auto sel = selected();
  const auto pts = selected_points();
  if (auto problems = validate_point_distribution(sel, pts); !problems.empty()) {
    throw ValidationError(std::move(problems));
  }
  return AspectPercentages::from_points(sel, pts);
}

std::vector<ChromosomeKind> TablesInput::missing_rows() const {
  std::vector<ChromosomeKind> out;
  for (auto kind : kAllChromosomes) {
    if (!ratings[index_of(kind)]) out.push_back(kind);
  }
  return out;
}

RatingMatrix TablesInput::rating_matrix() const {
  if (const auto missing = missing_rows(); !missing.empty()) {
    std::vector<std::string> problems;
    for (auto kind : missing) problems.push_back(fmt::format("rating row {} is missing", name_of(kind)));
    throw ValidationError(std::move(problems));
  }
  std::array<std::vector<int>, kNumChromosomes> rows;
  for (std::size_t c = 0; c < kNumChromosomes; ++c) rows[c] = *ratings[c];
  const auto width = selected().size();
  for (auto kind : kAllChromosomes) {
    if (rows[index_of(kind)].size() != width) {
      throw ValidationError(fmt::format("rating row {} has {} entries but {} aspects are selected", name_of(kind),
                                        rows[index_of(kind)].size(), width));
    }
  }
  return RatingMatrix(std::move(rows));
}

TablesInput parse_tables(std::string_view json_text) {
  const json j = parse_json(json_text, "tables");
  require_object(j, "tables", {"aspects", "ratings"});
  TablesInput t;
  if (!j["aspects"].is_array()) throw ParseError("tables.aspects: expected an array");
  std::set<std::string> names;
  for (std::size_t i = 0; i < j["aspects"].size(); ++i) {
    const json& a = j["aspects"][i];
    const auto where = fmt::format("aspects[{}]", i);
    require_object(a, where, {"name", "importance"}, {"points"});
    HazardAspect aspect;
    aspect.name = get_as<std::string>(a["name"], where + ".name");
    const auto imp_name = get_as<std::string>(a["importance"], where + ".importance");
    const auto imp = importance_from_name(imp_name);
    if (!imp) throw ParseError(fmt::format("{}.importance: unknown level \"{}\"", where, imp_name));
    aspect.importance = *imp;
    if (!names.insert(aspect.name).second) {
      throw ValidationError(fmt::format("duplicate aspect name \"{}\"", aspect.name));
    }
    t.points.push_back(a.contains("points") ? std::optional<int>(get_int(a["points"], where + ".points"))
                                            : std::nullopt);
    t.aspects.push_back(std::move(aspect));
  }
  if (!j["ratings"].is_object()) throw ParseError("tables.ratings: expected an object");
  for (const auto& [key, row] : j["ratings"].items()) {
    const auto kind = chromosome_from_name(key);
    if (!kind) throw ParseError(fmt::format("tables.ratings: unknown component \"{}\"", key));
    if (!row.is_array()) throw ParseError(fmt::format("ratings.{}: expected an array", key));
    std::vector<int> values;
    for (std::size_t i = 0; i < row.size(); ++i) values.push_back(get_int(row[i], fmt::format("ratings.{}[{}]", key, i)));
    for (int v : values) {
      if (v < 1 || v > 10) throw ValidationError(fmt::format("{}: rating {} out of 1..10", key, v));
    }
    t.ratings[index_of(*kind)] = std::move(values);
  }
  return t;
}

std::vector<RecoveredRow> complete_tables(TablesInput& tables, std::span<const LabeledWeights> published,
                                          const RecoveryOptions& options) {
  std::vector<RecoveredRow> out;
  const auto missing = tables.missing_rows();
  if (missing.empty()) return out;
  const auto shares = tables.shares();
  const auto sets = perturbed_share_sets(shares);
  std::vector<const LabeledWeights*> matched;
  for (const auto& set : sets) {
    const auto it = std::find_if(published.begin(), published.end(),
                                 [&](const LabeledWeights& w) { return w.label == set.label; });
    if (it == published.end()) throw ParseError(fmt::format("published weights lack the set \"{}\"", set.label));
    matched.push_back(&*it);
  }
  for (auto kind : missing) {
    std::vector<double> targets;
    for (const auto* w : matched) targets.push_back((*w).weights[kind]);
    try {
      auto rows = recover_rating_row(targets, shares, options);
      tables.ratings[index_of(kind)] = rows.front();
      out.push_back({kind, std::move(rows)});
    } catch (const NoSolutionError& e) {
      throw NoSolutionError(fmt::format("{}: {}", name_of(kind), e.what()));
    }
  }
  return out;
}

TablesInput load_tables(const std::filesystem::path& path) { return parse_tables(read_text_file(path)); }

std::string tables_to_json(const TablesInput& tables) {
  // ordered_json keeps canonical component order in the output.
  nlohmann::ordered_json j;
  j["aspects"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < tables.aspects.size(); ++i) {
    nlohmann::ordered_json a;
    a["name"] = tables.aspects[i].name;
    a["importance"] = std::string(name_of(tables.aspects[i].importance));
    if (tables.points[i]) a["points"] = *tables.points[i];
    j["aspects"].push_back(std::move(a));
  }
  j["ratings"] = nlohmann::ordered_json::object();
  for (auto kind : kAllChromosomes) {
    if (const auto& row = tables.ratings[index_of(kind)]) j["ratings"][std::string(name_of(kind))] = *row;
  }
  return j.dump(2) + "\n";
}

// ---- CSV --------------------------------------------------------------------

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  auto end_record = [&] {
    record.push_back(std::move(field));
    field.clear();
    records.push_back(std::move(record));
    record.clear();
    field_started = false;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        record.push_back(std::move(field));
        field.clear();
        field_started = true;
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
        end_record();
        break;
      case '\n':
        end_record();
        break;
      default:
        field += c;
        field_started = true;
    }
  }
  if (in_quotes) throw ParseError("CSV: unterminated quoted field");
  if (field_started || !record.empty()) end_record();
  return records;
}

std::string format_fixed(double value, int digits) { return fmt::format("{:.{}f}", value, digits); }

void write_weight_sets_csv(std::ostream& out, std::span<const LabeledWeights> sets) {
  out << "label";
  for (auto kind : kAllChromosomes) out << ',' << column_label(kind);
  out << kCrlf;
  for (const auto& set : sets) {
    out << csv_field(set.label);
    for (double w : set.weights.values) out << ',' << format_fixed(round_half_up(w, 2), 2);
    out << kCrlf;
  }
}

std::vector<LabeledWeights> parse_weight_sets_csv(std::string_view text) {
  const auto records = parse_csv(text);
  if (records.empty()) throw ParseError("weight-set CSV: empty");
  const auto& header = records.front();
  if (header.size() != kNumChromosomes + 1 || header[0] != "label") {
    throw ParseError("weight-set CSV: header must be label,M1..M11");
  }
  for (auto kind : kAllChromosomes) {
    if (header[index_of(kind) + 1] != column_label(kind)) {
      throw ParseError("weight-set CSV: header must be label,M1..M11");
    }
  }
  std::vector<LabeledWeights> out;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() == 1 && rec[0].empty()) continue;
    if (rec.size() != kNumChromosomes + 1) {
      throw ParseError(fmt::format("weight-set CSV: record {} has {} fields", r + 1, rec.size()));
    }
    LabeledWeights lw;
    lw.label = rec[0];
    for (std::size_t c = 0; c < kNumChromosomes; ++c) {
      try {
        std::size_t used = 0;
        lw.weights.values[c] = std::stod(rec[c + 1], &used);
        if (used != rec[c + 1].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError(fmt::format("weight-set CSV: record {} field {} is not a number", r + 1, c + 2));
      }
    }
    out.push_back(std::move(lw));
  }
  return out;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepResult> results) {
  out << "label,deltaV_percent,deltaC_percent,bestV,bestC,seed" << kCrlf;
  for (const auto& r : results) {
    out << csv_field(r.label) << ',' << format_fixed(r.delta_v_percent, 6) << ',' << format_fixed(r.delta_c_percent, 6)
        << ',' << format_fixed(r.run.best_v, 6) << ',' << format_fixed(r.run.best_c, 6) << ',' << r.run.seed << kCrlf;
  }
}

void write_recommendation_csv(std::ostream& out, const Scenario& current, const Scenario& recommended) {
  out << "barangay,chromosome,current,recommended" << kCrlf;
  for (std::size_t i = 0; i < current.barangays.size(); ++i) {
    for (std::size_t j = 0; j < kNumDynamic; ++j) {
      out << csv_field(current.barangays[i].name) << ',' << name_of(kAllChromosomes[j]) << ','
          << current.barangays[i].dynamic[j] << ',' << recommended.barangays[i].dynamic[j] << kCrlf;
    }
  }
}

void write_objective_csv(std::ostream& out, const Scenario& scenario, const ObjectiveValues& values) {
  out << "barangay,sFactor,V,C" << kCrlf;
  for (std::size_t i = 0; i < scenario.barangays.size(); ++i) {
    const auto& b = scenario.barangays[i];
    out << csv_field(b.name) << ',' << format_fixed(b.s_factor, 6) << ','
        << format_fixed(values.per_barangay[i].vulnerability, 6) << ',' << format_fixed(values.per_barangay[i].cost, 6)
        << kCrlf;
  }
  out << "TOTAL,," << format_fixed(values.vulnerability_total, 6) << ',' << format_fixed(values.cost_total, 6) << kCrlf;
}

void write_pareto_csv(std::ostream& out, std::span<const ObjectivePoint> front) {
  out << "vulnerability,cost" << kCrlf;
  for (const auto& p : front) out << format_fixed(p.vulnerability, 6) << ',' << format_fixed(p.cost, 6) << kCrlf;
}

}  // namespace floodga::io
