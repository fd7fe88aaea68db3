#include "floodga/svg_map.hpp"

#include <fmt/format.h>

#include <vector>

#include "floodga/errors.hpp"

namespace floodga {

namespace {

constexpr int kCell = 96;
constexpr int kMargin = 16;
constexpr int kTitleBand = 32;
constexpr int kLegendBand = 40;

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_grid_map(const Scenario& scenario, ChromosomeKind kind, std::string_view title) {
  std::vector<std::string> problems;
  for (const auto& b : scenario.barangays) {
    if (!b.grid_cell) {
      problems.push_back(fmt::format("{}: missing gridCell", b.name));
    } else if (b.grid_cell->row < 0 || b.grid_cell->col < 0 || b.grid_cell->row >= scenario.grid_dims.rows ||
               b.grid_cell->col >= scenario.grid_dims.cols) {
      problems.push_back(fmt::format("{}: gridCell outside gridDims", b.name));
    }
    const int v = b.value(kind);
    if (v < 0 || v > kMaxChromosomeValue) problems.push_back(fmt::format("{}: value {} out of 0..3", b.name, v));
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));

  const int width = 2 * kMargin + scenario.grid_dims.cols * kCell;
  const int height = kTitleBand + 2 * kMargin + scenario.grid_dims.rows * kCell + kLegendBand;

  std::string svg;
  svg += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n", width,
      height);
  svg += fmt::format("  <rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>\n", width, height);
  svg += fmt::format(
      "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"16\" font-weight=\"bold\">{}</text>\n",
      kMargin, kTitleBand - 8, xml_escape(title));

  for (const auto& b : scenario.barangays) {
    const int x = kMargin + b.grid_cell->col * kCell;
    const int y = kTitleBand + kMargin + b.grid_cell->row * kCell;
    const int v = b.value(kind);
    svg += fmt::format(
        "  <rect class=\"barangay\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" stroke=\"#333333\" "
        "stroke-width=\"1\" data-value=\"{}\"/>\n",
        x, y, kCell, kCell, kLevelRamp[v], v);
    svg += fmt::format(
        "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{}</text>\n",
        x + kCell / 2, y + kCell / 2, xml_escape(b.name));
    svg += fmt::format(
        "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">S={:g} X={}</text>\n",
        x + kCell / 2, y + kCell / 2 + 14, b.s_factor, v);
  }

  const int ly = height - kLegendBand + 8;
  for (int level = 0; level <= kMaxChromosomeValue; ++level) {
    const int lx = kMargin + level * 64;
    svg += fmt::format("  <rect class=\"legend\" x=\"{}\" y=\"{}\" width=\"16\" height=\"16\" fill=\"{}\" stroke=\"#333333\"/>\n",
                       lx, ly, kLevelRamp[level]);
    svg += fmt::format("  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n", lx + 20,
                       ly + 13, level);
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace floodga
