#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "numeracy/error.hpp"
#include "numeracy/pca.hpp"
#include "numeracy/rank.hpp"

namespace numeracy {

// ---------------------------------------------------------------------------
// Ordering

struct OrderingStats {
  double kendall_tau = 0.0;
  double spearman_rho = 0.0;
  double monotone_fraction = 0.0;
  std::size_t n_used = 0;
};

/// Fraction of consecutive pairs (positions ordered by value) that strictly increase.
inline double monotone_fraction(std::span<const double> positions) {
  if (positions.size() < 2) throw Error(ErrorCode::TooFew, "need at least 2 positions");
  std::size_t up = 0;
  for (std::size_t i = 0; i + 1 < positions.size(); ++i) {
    if (positions[i + 1] > positions[i]) ++up;
  }
  return static_cast<double>(up) / static_cast<double>(positions.size() - 1);
}

/// `values` must be in increasing order so that positions are "ordered by value".
inline OrderingStats ordering_stats(std::span<const double> values, std::span<const double> positions) {
  return {kendall_tau(values, positions), spearman_rho(values, positions), monotone_fraction(positions),
          values.size()};
}

// ---------------------------------------------------------------------------
// Linear vs logarithmic scale

enum class PreferredScale { Linear, Logarithmic, Tie };

constexpr std::string_view to_string(PreferredScale p) {
  switch (p) {
    case PreferredScale::Linear: return "linear";
    case PreferredScale::Logarithmic: return "logarithmic";
    case PreferredScale::Tie: return "tie";
  }
  return "tie";
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

struct ScaleFit {
  LineFit linear;
  LineFit logarithmic;
  PreferredScale preferred = PreferredScale::Tie;
  std::size_t excluded_nonpositive = 0;
  bool zero_variance = false;  // all positions equal; both r2 reported as 0
};

inline constexpr double kScaleTieTolerance = 1e-9;

namespace detail {

// Ordinary least squares y ≈ slope·x + intercept, r2 = 1 − SSres/SStot clamped to [0, 1].
inline LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  LineFit fit;
  if (sxx == 0.0) {
    fit.intercept = my;
    return fit;
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (syy == 0.0) return fit;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss_res += r * r;
  }
  fit.r2 = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  return fit;
}

}  // namespace detail

/// Fits positions against values (linear) and against ln(values)
/// (logarithmic). Entries with value <= 0 are left out of the log fit.
inline ScaleFit scale_fit(std::span<const double> values, std::span<const double> positions) {
  if (values.size() != positions.size()) throw Error(ErrorCode::InvalidArgument, "length mismatch");
  if (values.size() < 3) throw Error(ErrorCode::TooFew, "linear fit needs at least 3 points");

  std::vector<double> log_x, log_y;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] > 0.0) {
      log_x.push_back(std::log(values[i]));
      log_y.push_back(positions[i]);
    }
  }
  if (log_x.size() < 3) throw Error(ErrorCode::TooFew, "logarithmic fit needs at least 3 positive values");

  ScaleFit fit;
  fit.excluded_nonpositive = values.size() - log_x.size();
  fit.linear = detail::least_squares(values, positions);
  fit.logarithmic = detail::least_squares(log_x, log_y);
  fit.zero_variance = std::all_of(positions.begin(), positions.end(),
                                  [&](double p) { return p == positions.front(); });

  const double delta = fit.logarithmic.r2 - fit.linear.r2;
  if (std::abs(delta) < kScaleTieTolerance) {
    fit.preferred = PreferredScale::Tie;
  } else {
    fit.preferred = delta > 0.0 ? PreferredScale::Logarithmic : PreferredScale::Linear;
  }
  return fit;
}

// ---------------------------------------------------------------------------
// Spacing

struct GapStats {
  std::vector<double> gaps;
  std::size_t argmin_index = 0;
};

inline GapStats consecutive_gaps(std::span<const double> positions) {
  if (positions.size() < 2) throw Error(ErrorCode::TooFew, "need at least 2 positions");
  GapStats out;
  out.gaps.resize(positions.size() - 1);
  for (std::size_t i = 0; i + 1 < positions.size(); ++i) {
    out.gaps[i] = std::abs(positions[i + 1] - positions[i]);
    if (out.gaps[i] < out.gaps[out.argmin_index]) out.argmin_index = i;
  }
  return out;
}

/// Spearman correlation of gap index with gap size. Negative: gaps shrink as values grow.
inline double gap_trend(std::span<const double> positions) {
  if (positions.size() < 4) throw Error(ErrorCode::TooFew, "gap trend needs at least 3 gaps");
  const auto gaps = consecutive_gaps(positions).gaps;
  std::vector<double> index(gaps.size());
  for (std::size_t i = 0; i < index.size(); ++i) index[i] = static_cast<double>(i);
  return spearman_rho(index, gaps);
}

// ---------------------------------------------------------------------------
// Two clusters in a shared 2-D PCA plane

struct ClusterComparison {
  double centroid_distance = 0.0;
  double mean_within_spread = 0.0;
  double separation_ratio = 0.0;
  double direction_cosine = 0.0;
};

namespace detail {

struct Cluster2d {
  double cx = 0.0, cy = 0.0;
  double spread = 0.0;
  double dir_x = 0.0, dir_y = 0.0;  // normalized increase direction
};

inline Cluster2d summarize_cluster(const Projection& p) {
  const auto n = p.size();
  if (p.coords.cols() < 2) throw Error(ErrorCode::NotTwoDimensional, "cluster needs 2-D coordinates");
  if (n < 3) throw Error(ErrorCode::TooFew, "cluster needs at least 3 points");
  if (p.values.size() != n) throw Error(ErrorCode::InvalidArgument, "one value per point required");

  Cluster2d c;
  for (std::size_t i = 0; i < n; ++i) {
    c.cx += p.coords(i, 0);
    c.cy += p.coords(i, 1);
  }
  c.cx /= static_cast<double>(n);
  c.cy /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) c.spread += std::hypot(p.coords(i, 0) - c.cx, p.coords(i, 1) - c.cy);
  c.spread /= static_cast<double>(n);
  if (c.spread == 0.0) throw Error(ErrorCode::ZeroSpread, "all points of a cluster coincide");

  // Slope of each coordinate regressed on value rank.
  const auto rank = average_ranks(p.values);
  const auto xs = p.coords.column(0);
  const auto ys = p.coords.column(1);
  const double sx = least_squares(rank, xs).slope;
  const double sy = least_squares(rank, ys).slope;
  const double norm = std::hypot(sx, sy);
  if (norm > 0.0) {
    c.dir_x = sx / norm;
    c.dir_y = sy / norm;
  }
  return c;
}

}  // namespace detail

inline ClusterComparison cluster_comparison(const Projection& a, const Projection& b) {
  const auto ca = detail::summarize_cluster(a);
  const auto cb = detail::summarize_cluster(b);
  ClusterComparison out;
  out.centroid_distance = std::hypot(ca.cx - cb.cx, ca.cy - cb.cy);
  out.mean_within_spread = 0.5 * (ca.spread + cb.spread);
  out.separation_ratio = out.centroid_distance / out.mean_within_spread;
  out.direction_cosine = std::clamp(ca.dir_x * cb.dir_x + ca.dir_y * cb.dir_y, -1.0, 1.0);
  return out;
}

// ---------------------------------------------------------------------------
// Roundness vs centrality

/// Largest k with base^k dividing v (v >= 1).
inline int divisibility_exponent(std::uint64_t v, std::uint64_t base) {
  int k = 0;
  while (v != 0 && v % base == 0) {
    v /= base;
    ++k;
  }
  return k;
}

struct RoundnessCentrality {
  double spearman_z10 = 0.0;
  double spearman_v2 = 0.0;
  bool degenerate = false;  // zero spread or constant roundness; affected correlations are 0
};

/// Correlates powers of 10 and of 2 dividing each value with closeness to the
/// centroid of `coords` (first two columns). Positive: rounder sits nearer.
inline RoundnessCentrality roundness_centrality(std::span<const double> values, const Matrix& coords) {
  const auto n = values.size();
  if (n < 4) throw Error(ErrorCode::TooFew, "roundness needs at least 4 points");
  if (coords.rows() != n) throw Error(ErrorCode::InvalidArgument, "one coordinate row per value required");
  if (coords.cols() < 2) throw Error(ErrorCode::NotTwoDimensional, "roundness needs 2-D coordinates");

  std::vector<double> z10(n), v2(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(values[i] >= 1.0) || values[i] != std::floor(values[i]) || values[i] > 9.0e15) {
      throw Error(ErrorCode::InvalidArgument, "roundness needs integer values >= 1");
    }
    const auto v = static_cast<std::uint64_t>(values[i]);
    z10[i] = divisibility_exponent(v, 10);
    v2[i] = divisibility_exponent(v, 2);
  }

  double cx = 0.0, cy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cx += coords(i, 0);
    cy += coords(i, 1);
  }
  cx /= static_cast<double>(n);
  cy /= static_cast<double>(n);
  std::vector<double> centrality(n);
  for (std::size_t i = 0; i < n; ++i) centrality[i] = -std::hypot(coords(i, 0) - cx, coords(i, 1) - cy);

  auto constant = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
  };
  RoundnessCentrality out;
  out.degenerate = constant(centrality) || constant(z10) || constant(v2);
  out.spearman_z10 = spearman_rho(z10, centrality);
  out.spearman_v2 = spearman_rho(v2, centrality);
  return out;
}

}  // namespace numeracy
