#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cantor23/rational.hpp"

namespace cantor23 {

// One report cell. Everything the CLI prints is reduced to these shapes so
// the three emitters share a single deterministic text form.
using Cell = std::variant<std::string, std::int64_t, std::uint64_t, double, Rat, bool>;

// Text form used by CSV and SVG labels: integers in decimal, rationals as
// p/q, doubles via format_double, bools as true/false.
std::string cell_text(const Cell& c);

// Numeric view for plotting; throws value_error on strings and bools.
double cell_number(const Cell& c);

// Fixed "%.10g" with the C locale's decimal point; the single double format
// of every artifact, so reruns are byte-identical.
std::string format_double(double x);

struct Report {
  std::string id;
  // parameter echo in insertion order; values are the exact flag strings
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> summary;

  void add_config(const std::string& k, const std::string& v) { config.emplace_back(k, v); }
  void add_summary(const std::string& k, Cell v) { summary.emplace_back(k, std::move(v)); }
};

// header + rows, RFC-style quoting, "\n" line ends, no trailing junk. The
// config echo intentionally stays out: CSV is the pure tabular artifact.
std::string emit_csv(const Report& r);

// One JSON object with keys sorted at every level; embeds the full config so
// a run is reconstructible from this artifact alone.
std::string emit_json(const Report& r);

// Just the summary as a single JSON object line; the trailer a streamed scan
// prints after its CSV rows.
std::string emit_summary_json(const Report& r);

// Self-contained SVG: axes, tick labels, and exactly one polyline of column
// x_col against column y_col. More than max_points rows are reduced by
// per-bucket min/max, which keeps every running minimum of the y series.
// The full config echo rides in the <desc> element.
std::string emit_svg(const Report& r, std::size_t x_col, std::size_t y_col,
                     std::size_t max_points = 10000);

}  // namespace cantor23
