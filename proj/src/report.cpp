#include "cantor23/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

namespace cantor23 {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string cell_text(const Cell& c) {
  struct V {
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(const Rat& v) const { return rat_str(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  };
  return std::visit(V{}, c);
}

double cell_number(const Cell& c) {
  struct V {
    double operator()(const std::string&) const {
      throw value_error("cell_number: string cell in numeric column");
    }
    double operator()(std::int64_t v) const { return static_cast<double>(v); }
    double operator()(std::uint64_t v) const { return static_cast<double>(v); }
    double operator()(double v) const { return v; }
    double operator()(const Rat& v) const { return to_double(v); }
    double operator()(bool) const {
      throw value_error("cell_number: bool cell in numeric column");
    }
  };
  return std::visit(V{}, c);
}

namespace {

std::string csv_field(const std::string& s) {
  const bool quote = s.find_first_of(",\"\n\r") != std::string::npos;
  if (!quote) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += '"';
  return out;
}

void json_string(std::string& out, const std::string& s) {
  out += '"';
  for (unsigned char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (ch < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += static_cast<char>(ch);
        }
    }
  }
  out += '"';
}

void json_cell(std::string& out, const Cell& c) {
  struct V {
    std::string& out;
    void operator()(const std::string& s) const { json_string(out, s); }
    void operator()(std::int64_t v) const { out += std::to_string(v); }
    void operator()(std::uint64_t v) const { out += std::to_string(v); }
    void operator()(double v) const {
      // JSON has no inf/nan literals; fall back to the text form
      if (std::isfinite(v)) out += format_double(v);
      else json_string(out, format_double(v));
    }
    void operator()(const Rat& v) const { json_string(out, rat_str(v)); }
    void operator()(bool v) const { out += v ? "true" : "false"; }
  };
  std::visit(V{out}, c);
}

}  // namespace

std::string emit_csv(const Report& r) {
  std::string out;
  for (std::size_t i = 0; i < r.columns.size(); ++i) {
    if (i) out += ',';
    out += csv_field(r.columns[i]);
  }
  out += '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_field(cell_text(row[i]));
    }
    out += '\n';
  }
  return out;
}

std::string emit_summary_json(const Report& r) {
  std::map<std::string, Cell> summary(r.summary.begin(), r.summary.end());
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : summary) {
    if (!first) out += ',';
    first = false;
    json_string(out, k);
    out += ':';
    json_cell(out, v);
  }
  out += "}\n";
  return out;
}

std::string emit_json(const Report& r) {
  // sorted maps give the key order; duplicate keys keep the last value
  std::map<std::string, std::string> config(r.config.begin(), r.config.end());
  std::map<std::string, Cell> summary(r.summary.begin(), r.summary.end());

  std::string out = "{\"columns\":[";
  for (std::size_t i = 0; i < r.columns.size(); ++i) {
    if (i) out += ',';
    json_string(out, r.columns[i]);
  }
  out += "],\"config\":{";
  {
    bool first = true;
    for (const auto& [k, v] : config) {
      if (!first) out += ',';
      first = false;
      json_string(out, k);
      out += ':';
      json_string(out, v);
    }
  }
  out += "},\"id\":";
  json_string(out, r.id);
  out += ",\"rows\":[";
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    if (i) out += ',';
    out += '[';
    for (std::size_t j = 0; j < r.rows[i].size(); ++j) {
      if (j) out += ',';
      json_cell(out, r.rows[i][j]);
    }
    out += ']';
  }
  out += "],\"summary\":{";
  {
    bool first = true;
    for (const auto& [k, v] : summary) {
      if (!first) out += ',';
      first = false;
      json_string(out, k);
      out += ':';
      json_cell(out, v);
    }
  }
  out += "}}\n";
  return out;
}

}  // namespace cantor23
