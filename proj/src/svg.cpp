#include "cantor23/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace cantor23 {

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string emit_svg(const Report& r, std::size_t x_col, std::size_t y_col,
                     std::size_t max_points) {
  if (x_col >= r.columns.size() || y_col >= r.columns.size())
    throw value_error("emit_svg: column index out of range");
  if (r.rows.empty()) throw value_error("emit_svg: no rows to plot");
  if (max_points < 2) max_points = 2;

  std::vector<std::pair<double, double>> pts;
  pts.reserve(r.rows.size());
  for (const auto& row : r.rows)
    pts.emplace_back(cell_number(row.at(x_col)), cell_number(row.at(y_col)));

  // Reduce long series by sequence-order buckets, keeping each bucket's
  // y-min and y-max point. Every running minimum of y survives.
  std::vector<std::pair<double, double>> kept;
  if (pts.size() <= max_points) {
    kept = pts;
  } else {
    const std::size_t buckets = max_points / 2;
    kept.reserve(2 * buckets);
    for (std::size_t b = 0; b < buckets; ++b) {
      const std::size_t lo = b * pts.size() / buckets;
      const std::size_t hi = (b + 1) * pts.size() / buckets;
      if (lo >= hi) continue;
      std::size_t imin = lo, imax = lo;
      for (std::size_t i = lo + 1; i < hi; ++i) {
        if (pts[i].second < pts[imin].second) imin = i;
        if (pts[i].second > pts[imax].second) imax = i;
      }
      if (imin == imax) {
        kept.push_back(pts[imin]);
      } else if (imin < imax) {
        kept.push_back(pts[imin]);
        kept.push_back(pts[imax]);
      } else {
        kept.push_back(pts[imax]);
        kept.push_back(pts[imin]);
      }
    }
  }

  double xmin = kept[0].first, xmax = kept[0].first;
  double ymin = kept[0].second, ymax = kept[0].second;
  for (const auto& [x, y] : kept) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  if (!(xmax > xmin)) { xmin -= 0.5; xmax += 0.5; }
  if (!(ymax > ymin)) { ymin -= 0.5; ymax += 0.5; }

  const double W = 960, H = 600;
  const double ml = 72, mr = 20, mt = 24, mb = 48;
  const auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
  const auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

  std::string desc = r.id;
  for (const auto& [k, v] : r.config) desc += " " + k + "=" + v;

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"960\" height=\"600\" "
         "viewBox=\"0 0 960 600\">\n";
  out += "<desc>" + xml_escape(desc) + "</desc>\n";
  out += "<rect x=\"0\" y=\"0\" width=\"960\" height=\"600\" fill=\"#ffffff\"/>\n";

  // axes
  out += "<line x1=\"" + coord(ml) + "\" y1=\"" + coord(H - mb) + "\" x2=\"" + coord(W - mr) +
         "\" y2=\"" + coord(H - mb) + "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  out += "<line x1=\"" + coord(ml) + "\" y1=\"" + coord(mt) + "\" x2=\"" + coord(ml) +
         "\" y2=\"" + coord(H - mb) + "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";

  for (int i = 0; i <= 4; ++i) {
    const double tx = xmin + i * (xmax - xmin) / 4;
    const double X = px(tx);
    out += "<line x1=\"" + coord(X) + "\" y1=\"" + coord(H - mb) + "\" x2=\"" + coord(X) +
           "\" y2=\"" + coord(H - mb + 5) + "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + coord(X) + "\" y=\"" + coord(H - mb + 20) +
           "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">" +
           xml_escape(tick_label(tx)) + "</text>\n";
    const double ty = ymin + i * (ymax - ymin) / 4;
    const double Y = py(ty);
    out += "<line x1=\"" + coord(ml - 5) + "\" y1=\"" + coord(Y) + "\" x2=\"" + coord(ml) +
           "\" y2=\"" + coord(Y) + "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + coord(ml - 8) + "\" y=\"" + coord(Y + 4) +
           "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"end\">" +
           xml_escape(tick_label(ty)) + "</text>\n";
  }

  out += "<text x=\"" + coord((ml + W - mr) / 2) + "\" y=\"" + coord(H - 10) +
         "\" font-family=\"monospace\" font-size=\"13\" text-anchor=\"middle\">" +
         xml_escape(r.columns[x_col]) + "</text>\n";
  out += "<text x=\"" + coord(ml) + "\" y=\"" + coord(mt - 8) +
         "\" font-family=\"monospace\" font-size=\"13\" text-anchor=\"start\">" +
         xml_escape(r.columns[y_col]) + "</text>\n";

  out += "<polyline fill=\"none\" stroke=\"#1f6feb\" stroke-width=\"1\" points=\"";
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (i) out += ' ';
    out += coord(px(kept[i].first)) + "," + coord(py(kept[i].second));
  }
  out += "\"/>\n</svg>\n";
  return out;
}

}  // namespace cantor23
