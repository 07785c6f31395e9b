#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "numeracy/bundle.hpp"
#include "numeracy/error.hpp"
#include "numeracy/matrix.hpp"
#include "numeracy/metrics.hpp"
#include "numeracy/pca.hpp"
#include "numeracy/probesets.hpp"

namespace numeracy {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct AnalysisOptions {
  std::size_t k = 2;
  LookupPolicy policy{};
  bool unit_norm = false;  // scale every probed vector to unit length before PCA
};

struct SetReport {
  std::string name;
  std::size_t n_entries = 0;
  std::vector<std::string> missing;
  std::vector<std::string> labels;    // resolved entries, value order
  std::vector<double> values;         // resolved entries, value order
  Projection projection;              // coordinates in the joint PCA space
  std::optional<OrderingStats> ordering;
  std::optional<ScaleFit> scale;
  std::optional<GapStats> gaps;
  std::optional<double> gap_trend;
  std::optional<RoundnessCentrality> roundness;

  std::vector<double> pc1() const { return projection.coords.column(0); }
};

struct AnalysisReport {
  std::string model_name;
  std::vector<std::string> set_names;
  PcaModel pca;
  std::vector<SetReport> sets;
  std::optional<ClusterComparison> clusters;
  std::string tool_version{kToolVersion};
  AnalysisOptions options;
  std::vector<TokenSet> set_definitions;  // echoed so the report is reproducible
};

namespace detail {

inline Matrix gather_rows(const EmbeddingBundle& bundle, std::span<const std::size_t> rows, bool unit_norm) {
  Matrix out(rows.size(), bundle.dim());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto src = bundle.row(rows[i]);
    auto dst = out.row(i);
    for (std::size_t j = 0; j < src.size(); ++j) dst[j] = static_cast<double>(src[j]);
    if (unit_norm) {
      const double norm = std::sqrt(dot(dst, dst));
      if (norm > 0.0) {
        for (auto& x : dst) x /= norm;
      }
    }
  }
  return out;
}

// Integer entries >= 1; everything else has no roundness.
inline std::vector<std::size_t> roundness_candidates(std::span<const double> values) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= 1.0 && values[i] == std::floor(values[i]) && values[i] <= 9.0e15) idx.push_back(i);
  }
  return idx;
}

inline void fill_set_metrics(SetReport& s) {
  const auto n = s.values.size();
  if (n < 2) return;
  const auto pos = s.pc1();
  s.ordering = ordering_stats(s.values, pos);
  s.gaps = consecutive_gaps(pos);
  if (n >= 4) s.gap_trend = gap_trend(pos);
  const auto positive = std::count_if(s.values.begin(), s.values.end(), [](double v) { return v > 0.0; });
  if (n >= 3 && positive >= 3) s.scale = scale_fit(s.values, pos);

  if (s.projection.coords.cols() >= 2) {
    const auto idx = roundness_candidates(s.values);
    if (idx.size() >= 4) {
      std::vector<double> vals;
      Matrix coords(idx.size(), 2);
      for (std::size_t r = 0; r < idx.size(); ++r) {
        vals.push_back(s.values[idx[r]]);
        coords(r, 0) = s.projection.coords(idx[r], 0);
        coords(r, 1) = s.projection.coords(idx[r], 1);
      }
      s.roundness = roundness_centrality(vals, coords);
    }
  }
}

}  // namespace detail

/// Resolves every set, fits one joint PCA over all resolved vectors, and
/// computes the per-set metrics on that shared space. Cluster comparison is
/// added when exactly two sets are given.
inline AnalysisReport analyze(const EmbeddingBundle& bundle, const std::vector<TokenSet>& sets,
                              const AnalysisOptions& options = {}) {
  if (sets.empty()) throw Error(ErrorCode::InvalidArgument, "analyze needs at least one probe set");
  options.policy.validate();

  AnalysisReport report;
  report.model_name = bundle.model_name();
  report.options = options;
  report.set_definitions = sets;

  std::vector<ResolvedSet> resolved;
  std::vector<std::size_t> all_rows;
  std::vector<double> all_values;
  for (const auto& set : sets) {
    report.set_names.push_back(set.name);
    resolved.push_back(resolve(set, bundle, options.policy));
    const auto& r = resolved.back();
    all_rows.insert(all_rows.end(), r.rows.begin(), r.rows.end());
    const auto v = r.values();
    all_values.insert(all_values.end(), v.begin(), v.end());
  }

  const Matrix vectors = detail::gather_rows(bundle, all_rows, options.unit_norm);
  report.pca = pca_fit(vectors, all_values, options.k);
  const Matrix coords = project(report.pca, vectors);

  std::size_t offset = 0;
  for (const auto& r : resolved) {
    SetReport s;
    s.name = r.set.name;
    s.n_entries = r.set.size();
    s.missing = r.missing;
    s.labels = r.labels();
    s.values = r.values();
    s.projection.coords = Matrix(r.size(), coords.cols());
    for (std::size_t i = 0; i < r.size(); ++i) {
      for (std::size_t c = 0; c < coords.cols(); ++c) s.projection.coords(i, c) = coords(offset + i, c);
    }
    s.projection.labels = s.labels;
    s.projection.values = s.values;
    offset += r.size();
    detail::fill_set_metrics(s);
    report.sets.push_back(std::move(s));
  }

  if (report.sets.size() == 2 && coords.cols() >= 2 && report.sets[0].values.size() >= 3 &&
      report.sets[1].values.size() >= 3) {
    try {
      report.clusters = cluster_comparison(report.sets[0].projection, report.sets[1].projection);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ZeroSpread) throw;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Cross-model strip layout

struct StripRow {
  std::string label;
  std::vector<double> positions;
};

struct StripLayout {
  std::string set_name;
  std::vector<std::string> token_labels;
  std::vector<double> values;
  std::vector<StripRow> rows;
  StripRow reference_row;
};

/// Per bundle: PCA on the set alone, oriented PC1 positions, endpoints
/// aligned to 0 and 1. A log-scale reference row is appended.
inline StripLayout compare(const std::vector<const EmbeddingBundle*>& bundles, const TokenSet& set,
                           const AnalysisOptions& options = {}) {
  if (bundles.empty()) throw Error(ErrorCode::InvalidArgument, "compare needs at least one bundle");
  options.policy.validate();

  StripLayout layout;
  layout.set_name = set.name;
  std::optional<std::vector<std::string>> first_missing;
  for (const auto* bundle : bundles) {
    const auto r = resolve(set, *bundle, options.policy);
    if (!first_missing) {
      first_missing = r.missing;
      layout.token_labels = r.labels();
      layout.values = r.values();
    } else if (*first_missing != r.missing) {
      throw Error(ErrorCode::MissingTokens,
                  "bundle '" + bundle->model_name() + "' misses a different token subset than the first bundle");
    }
    if (r.size() < 2) throw Error(ErrorCode::DegenerateInput, "fewer than 2 tokens resolved in " + bundle->model_name());

    const Matrix vectors = detail::gather_rows(*bundle, r.rows, options.unit_norm);
    const auto values = r.values();
    const auto model = pca_fit(vectors, values, 1);
    const auto pc1 = project(model, vectors).column(0);
    layout.rows.push_back({bundle->model_name(), affine_align(pc1)});
  }
  layout.reference_row = {"log scale", log_reference_layout(layout.values)};
  return layout;
}

inline StripLayout compare(const std::vector<EmbeddingBundle>& bundles, const TokenSet& set,
                           const AnalysisOptions& options = {}) {
  std::vector<const EmbeddingBundle*> ptrs;
  for (const auto& b : bundles) ptrs.push_back(&b);
  return compare(ptrs, set, options);
}

}  // namespace numeracy
