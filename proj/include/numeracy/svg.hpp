#pragma once

// Dependency-free SVG output for the two figure layouts: a labelled 2-D PCA
// scatter and a multi-row strip chart of aligned PC1 positions. Numbers are
// printed with fixed precision through std::to_chars, which is
// locale-independent, so documents are byte-deterministic.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "numeracy/analysis.hpp"
#include "numeracy/error.hpp"
#include "numeracy/pca.hpp"

namespace numeracy {

namespace svg {

inline std::string num(double v, int precision = 2) {
  if (v == 0.0) v = 0.0;  // no "-0.00"
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, precision);
  std::string s(buf, ptr);
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

inline std::string escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char ch : text) {
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

inline std::string header(double width, double height) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width, 0) + "\" height=\"" + num(height, 0) +
         "\" viewBox=\"0 0 " + num(width, 0) + " " + num(height, 0) + "\">\n";
}

// Maps [lo, hi] onto [out_lo, out_hi]; a zero-width domain maps to the middle.
struct Scale {
  double lo, hi, out_lo, out_hi;
  double operator()(double v) const {
    if (hi == lo) return 0.5 * (out_lo + out_hi);
    return out_lo + (v - lo) / (hi - lo) * (out_hi - out_lo);
  }
};

}  // namespace svg

struct ScatterStyle {
  double width = 640;
  double height = 480;
  double margin = 60;
  double point_radius = 3.5;
  std::string title;
  std::vector<std::string> series_names;  // legend entries, one per projection
};

/// One or two labelled point sets in the plane of PC1 and PC2. `pc_shares`
/// are the explained-variance fractions printed on the axes.
inline std::string render_scatter(const std::vector<Projection>& projections, std::array<double, 2> pc_shares,
                                  const ScatterStyle& style = {}) {
  if (projections.empty() || projections.size() > 2) {
    throw Error(ErrorCode::InvalidArgument, "scatter takes one or two projections");
  }
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& p : projections) {
    if (p.coords.cols() < 2) throw Error(ErrorCode::NotTwoDimensional, "scatter needs 2-D coordinates");
    if (p.labels.size() != p.size()) throw Error(ErrorCode::InvalidArgument, "one label per point required");
    for (std::size_t i = 0; i < p.size(); ++i) {
      xmin = std::min(xmin, p.coords(i, 0));
      xmax = std::max(xmax, p.coords(i, 0));
      ymin = std::min(ymin, p.coords(i, 1));
      ymax = std::max(ymax, p.coords(i, 1));
    }
  }
  if (!std::isfinite(xmin)) xmin = xmax = ymin = ymax = 0.0;
  const double padx = 0.05 * (xmax - xmin), pady = 0.05 * (ymax - ymin);
  const svg::Scale sx{xmin - padx, xmax + padx, style.margin, style.width - style.margin};
  const svg::Scale sy{ymin - pady, ymax + pady, style.height - style.margin, style.margin};

  std::string out = svg::header(style.width, style.height);
  out +=
      "<style>\n"
      "  .frame { fill: none; stroke: #444; stroke-width: 1; }\n"
      "  .point.set0 { fill: #1f77b4; }\n"
      "  .point.set1 { fill: #d62728; }\n"
      "  .label { font: 10px sans-serif; fill: #222; }\n"
      "  .axis { font: 12px sans-serif; fill: #000; }\n"
      "  .legend { font: 12px sans-serif; }\n"
      "</style>\n";
  out += "<rect class=\"frame\" x=\"" + svg::num(style.margin) + "\" y=\"" + svg::num(style.margin) +
         "\" width=\"" + svg::num(style.width - 2 * style.margin) + "\" height=\"" +
         svg::num(style.height - 2 * style.margin) + "\"/>\n";
  if (!style.title.empty()) {
    out += "<text class=\"axis\" x=\"" + svg::num(style.width / 2) + "\" y=\"" + svg::num(style.margin / 2) +
           "\" text-anchor=\"middle\">" + svg::escape(style.title) + "</text>\n";
  }
  out += "<text class=\"axis\" x=\"" + svg::num(style.width / 2) + "\" y=\"" +
         svg::num(style.height - style.margin / 3) + "\" text-anchor=\"middle\">PC1 (" +
         svg::num(100.0 * pc_shares[0], 1) + "%)</text>\n";
  const double ylab_x = style.margin / 3, ylab_y = style.height / 2;
  out += "<text class=\"axis\" x=\"" + svg::num(ylab_x) + "\" y=\"" + svg::num(ylab_y) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 " + svg::num(ylab_x) + " " + svg::num(ylab_y) +
         ")\">PC2 (" + svg::num(100.0 * pc_shares[1], 1) + "%)</text>\n";

  for (std::size_t s = 0; s < projections.size(); ++s) {
    const auto& p = projections[s];
    const std::string cls = "set" + std::to_string(s);
    out += "<g class=\"" + cls + "\">\n";
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double x = sx(p.coords(i, 0)), y = sy(p.coords(i, 1));
      out += "<circle class=\"point " + cls + "\" cx=\"" + svg::num(x) + "\" cy=\"" + svg::num(y) + "\" r=\"" +
             svg::num(style.point_radius) + "\"/>\n";
      out += "<text class=\"label\" x=\"" + svg::num(x + style.point_radius + 1) + "\" y=\"" +
             svg::num(y - style.point_radius - 1) + "\">" + svg::escape(p.labels[i]) + "</text>\n";
    }
    out += "</g>\n";
  }
  for (std::size_t s = 0; s < style.series_names.size() && s < projections.size(); ++s) {
    out += "<text class=\"legend\" x=\"" + svg::num(style.width - style.margin - 4) + "\" y=\"" +
           svg::num(style.margin + 16 + 16 * static_cast<double>(s)) + "\" text-anchor=\"end\" fill=\"" +
           (s == 0 ? "#1f77b4" : "#d62728") + "\">" + svg::escape(style.series_names[s]) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

struct StripStyle {
  double width = 760;
  double row_height = 64;
  double left_margin = 160;
  double right_margin = 40;
  double top_margin = 40;
  double tick_half = 8;
};

/// Rows of aligned positions: one per model plus the log reference row.
/// First and last tokens sit at the same x in every row.
inline std::string render_strips(const StripLayout& layout, const StripStyle& style = {}) {
  if (layout.rows.empty() || layout.token_labels.empty()) {
    throw Error(ErrorCode::EmptyLayout, "strip layout has no rows");
  }
  std::vector<const StripRow*> rows;
  for (const auto& r : layout.rows) rows.push_back(&r);
  rows.push_back(&layout.reference_row);

  double lo = 0.0, hi = 1.0;
  for (const auto* r : rows) {
    if (r->positions.size() != layout.token_labels.size()) {
      throw Error(ErrorCode::InvalidArgument, "row '" + r->label + "' has the wrong token count");
    }
    if (std::abs(r->positions.front()) > 1e-12 || std::abs(r->positions.back() - 1.0) > 1e-12) {
      throw Error(ErrorCode::InvalidArgument, "row '" + r->label + "' is not endpoint-aligned");
    }
    for (double p : r->positions) {
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
  }
  const svg::Scale sx{lo, hi, style.left_margin, style.width - style.right_margin};
  const double height = style.top_margin + style.row_height * static_cast<double>(rows.size()) + 10;

  std::string out = svg::header(style.width, height);
  out +=
      "<style>\n"
      "  .baseline { stroke: #999; stroke-width: 1; }\n"
      "  .tick { stroke: #1f77b4; stroke-width: 2; }\n"
      "  .reference .tick { stroke: #d62728; }\n"
      "  .label { font: 10px sans-serif; fill: #222; }\n"
      "  .row-label { font: 12px sans-serif; fill: #000; }\n"
      "</style>\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = *rows[r];
    const bool reference = r + 1 == rows.size();
    const double y = style.top_margin + style.row_height * (static_cast<double>(r) + 0.5);
    out += std::string("<g class=\"") + (reference ? "row reference" : "row") + "\">\n";
    out += "<text class=\"row-label\" x=\"" + svg::num(style.left_margin - 12) + "\" y=\"" + svg::num(y + 4) +
           "\" text-anchor=\"end\">" + svg::escape(row.label) + "</text>\n";
    out += "<line class=\"baseline\" x1=\"" + svg::num(sx(lo)) + "\" y1=\"" + svg::num(y) + "\" x2=\"" +
           svg::num(sx(hi)) + "\" y2=\"" + svg::num(y) + "\"/>\n";
    for (std::size_t t = 0; t < row.positions.size(); ++t) {
      const double x = sx(row.positions[t]);
      out += "<line class=\"tick\" x1=\"" + svg::num(x) + "\" y1=\"" + svg::num(y - style.tick_half) +
             "\" x2=\"" + svg::num(x) + "\" y2=\"" + svg::num(y + style.tick_half) + "\"/>\n";
      const double ly = y - style.tick_half - 3;
      out += "<text class=\"label\" x=\"" + svg::num(x) + "\" y=\"" + svg::num(ly) +
             "\" transform=\"rotate(-30 " + svg::num(x) + " " + svg::num(ly) + ")\">" +
             svg::escape(layout.token_labels[t]) + "</text>\n";
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace numeracy
