#pragma once

// Canonical JSON for reports and strip layouts. Keys are emitted in a fixed
// order and doubles as shortest round-trip decimals, so equal inputs give
// byte-identical files.

#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "numeracy/analysis.hpp"
#include "numeracy/error.hpp"

namespace numeracy {

using ordered_json = nlohmann::ordered_json;

namespace detail {

inline ordered_json line_fit_json(const LineFit& f) {
  ordered_json j;
  j["slope"] = f.slope;
  j["intercept"] = f.intercept;
  j["r2"] = f.r2;
  return j;
}

inline ordered_json set_report_json(const SetReport& s) {
  ordered_json j;
  j["name"] = s.name;
  j["n_entries"] = s.n_entries;
  j["n_resolved"] = s.values.size();
  j["missing"] = s.missing;
  j["labels"] = s.labels;
  j["values"] = s.values;

  if (s.ordering) {
    ordered_json o;
    o["kendall_tau"] = s.ordering->kendall_tau;
    o["spearman_rho"] = s.ordering->spearman_rho;
    o["monotone_fraction"] = s.ordering->monotone_fraction;
    o["n_used"] = s.ordering->n_used;
    j["ordering"] = o;
  } else {
    j["ordering"] = nullptr;
  }

  if (s.scale) {
    ordered_json f;
    f["linear"] = line_fit_json(s.scale->linear);
    f["logarithmic"] = line_fit_json(s.scale->logarithmic);
    f["preferred"] = to_string(s.scale->preferred);
    f["excluded_nonpositive"] = s.scale->excluded_nonpositive;
    f["zero_variance"] = s.scale->zero_variance;
    j["scale_fit"] = f;
  } else {
    j["scale_fit"] = nullptr;
  }

  if (s.gaps) {
    ordered_json g;
    g["gaps"] = s.gaps->gaps;
    g["argmin_index"] = s.gaps->argmin_index;
    j["gaps"] = g;
  } else {
    j["gaps"] = nullptr;
  }
  j["gap_trend"] = s.gap_trend ? ordered_json(*s.gap_trend) : ordered_json(nullptr);

  if (s.roundness) {
    ordered_json r;
    r["spearman_z10"] = s.roundness->spearman_z10;
    r["spearman_v2"] = s.roundness->spearman_v2;
    r["degenerate"] = s.roundness->degenerate;
    j["roundness_centrality"] = r;
  } else {
    j["roundness_centrality"] = nullptr;
  }

  ordered_json coords = ordered_json::array();
  for (std::size_t i = 0; i < s.projection.size(); ++i) {
    const auto row = s.projection.coords.row(i);
    coords.push_back(std::vector<double>(row.begin(), row.end()));
  }
  j["coords"] = coords;
  return j;
}

}  // namespace detail

inline ordered_json to_json(const AnalysisReport& r) {
  ordered_json j;
  j["model_name"] = r.model_name;
  j["set_names"] = r.set_names;

  std::vector<std::size_t> resolved, missing;
  for (const auto& s : r.sets) {
    resolved.push_back(s.values.size());
    missing.push_back(s.missing.size());
  }
  j["resolved_counts"] = resolved;
  j["missing_counts"] = missing;

  ordered_json pca;
  pca["k"] = r.pca.k();
  pca["n_samples"] = r.pca.n_samples;
  pca["explained_variance"] = r.pca.explained_variance;
  std::vector<double> ratios;
  for (std::size_t i = 0; i < r.pca.k(); ++i) ratios.push_back(r.pca.explained_ratio(i));
  pca["explained_variance_ratio"] = ratios;
  pca["total_variance"] = r.pca.total_variance;
  j["pca"] = pca;

  ordered_json sets = ordered_json::array();
  for (const auto& s : r.sets) sets.push_back(detail::set_report_json(s));
  j["sets"] = sets;

  if (r.clusters) {
    ordered_json c;
    c["centroid_distance"] = r.clusters->centroid_distance;
    c["mean_within_spread"] = r.clusters->mean_within_spread;
    c["separation_ratio"] = r.clusters->separation_ratio;
    c["direction_cosine"] = r.clusters->direction_cosine;
    j["cluster_comparison"] = c;
  } else {
    j["cluster_comparison"] = nullptr;
  }

  j["tool_version"] = r.tool_version;

  ordered_json opts;
  opts["k"] = r.options.k;
  opts["unit_norm"] = r.options.unit_norm;
  ordered_json policy;
  policy["try_exact"] = r.options.policy.try_exact;
  policy["try_word_boundary_prefix"] = r.options.policy.try_word_boundary_prefix;
  policy["try_lowercase"] = r.options.policy.try_lowercase;
  policy["allow_missing"] = r.options.policy.allow_missing;
  opts["lookup"] = policy;
  ordered_json defs = ordered_json::array();
  for (const auto& set : r.set_definitions) {
    ordered_json d;
    d["name"] = set.name;
    d["value_scale_hint"] = to_string(set.value_scale_hint);
    ordered_json entries = ordered_json::array();
    for (const auto& e : set.entries) entries.push_back({e.surface, e.value, e.label});
    d["entries"] = entries;
    defs.push_back(d);
  }
  opts["sets"] = defs;
  j["options"] = opts;
  return j;
}

inline ordered_json to_json(const StripLayout& layout) {
  ordered_json j;
  j["set_name"] = layout.set_name;
  j["token_labels"] = layout.token_labels;
  j["values"] = layout.values;
  ordered_json rows = ordered_json::array();
  for (const auto& row : layout.rows) {
    ordered_json r;
    r["label"] = row.label;
    r["positions"] = row.positions;
    rows.push_back(r);
  }
  j["rows"] = rows;
  ordered_json ref;
  ref["label"] = layout.reference_row.label;
  ref["positions"] = layout.reference_row.positions;
  j["reference_row"] = ref;
  j["tool_version"] = kToolVersion;
  return j;
}

/// Canonical text: two-space indentation, trailing newline.
inline std::string canonical_dump(const ordered_json& j) { return j.dump(2) + "\n"; }

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::IoFailure, "short write to " + path.string());
}

}  // namespace numeracy
