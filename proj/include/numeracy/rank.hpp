#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "numeracy/error.hpp"

namespace numeracy {

/// 1-based fractional ranks; tied observations share their average rank.
inline std::vector<double> average_ranks(std::span<const double> x) {
  const auto n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return x[a] < x[b]; });

  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && x[order[j]] == x[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + 1 + j);  // mean of ranks i+1..j
    for (std::size_t t = i; t < j; ++t) ranks[order[t]] = avg;
    i = j;
  }
  return ranks;
}

/// Pearson correlation; 0 when either side has zero variance.
inline double pearson(std::span<const double> a, std::span<const double> b) {
  const auto n = a.size();
  if (n != b.size()) throw Error(ErrorCode::InvalidArgument, "pearson: length mismatch");
  if (n == 0) return 0.0;
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / static_cast<double>(n);
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / static_cast<double>(n);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - ma, db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

namespace detail {

inline void require_pairs(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidArgument, "length mismatch");
  if (a.size() < 2) throw Error(ErrorCode::TooFew, "need at least 2 observations");
}

// Merge sort on y counting strict inversions; equal keys do not count.
inline std::uint64_t merge_count(std::vector<double>& y, std::vector<double>& buf, std::size_t lo,
                                 std::size_t hi) {
  if (hi - lo < 2) return 0;
  const auto mid = lo + (hi - lo) / 2;
  auto swaps = merge_count(y, buf, lo, mid) + merge_count(y, buf, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (y[j] < y[i]) {
      swaps += mid - i;
      buf[k++] = y[j++];
    } else {
      buf[k++] = y[i++];
    }
  }
  while (i < mid) buf[k++] = y[i++];
  while (j < hi) buf[k++] = y[j++];
  std::copy(buf.begin() + lo, buf.begin() + hi, y.begin() + lo);
  return swaps;
}

// Sum of t(t-1)/2 over runs of equal keys in an already sorted sequence.
template <class Eq>
std::uint64_t tied_pairs(std::size_t n, Eq&& same) {
  std::uint64_t total = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && same(i, j)) ++j;
    const std::uint64_t t = j - i;
    total += t * (t - 1) / 2;
    i = j;
  }
  return total;
}

}  // namespace detail

/// Kendall tau-b in O(n log n) (Knight's algorithm). 0 when one side is constant.
inline double kendall_tau(std::span<const double> values, std::span<const double> positions) {
  detail::require_pairs(values, positions);
  const auto n = values.size();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) {
    if (values[a] != values[b]) return values[a] < values[b];
    return positions[a] < positions[b];
  });
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = values[order[i]];
    y[i] = positions[order[i]];
  }

  const std::uint64_t n0 = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  const auto n1 = detail::tied_pairs(n, [&](auto i, auto j) { return x[i] == x[j]; });
  const auto n3 = detail::tied_pairs(n, [&](auto i, auto j) { return x[i] == x[j] && y[i] == y[j]; });

  std::vector<double> buf(n);
  const auto discordant = detail::merge_count(y, buf, 0, n);
  const auto n2 = detail::tied_pairs(n, [&](auto i, auto j) { return y[i] == y[j]; });  // y now sorted

  const double denom = std::sqrt(static_cast<double>(n0 - n1) * static_cast<double>(n0 - n2));
  if (denom == 0.0) return 0.0;
  const double s = static_cast<double>(n0) - static_cast<double>(n1) - static_cast<double>(n2) +
                   static_cast<double>(n3) - 2.0 * static_cast<double>(discordant);
  return std::clamp(s / denom, -1.0, 1.0);
}

/// Spearman rho as the Pearson correlation of average ranks.
inline double spearman_rho(std::span<const double> values, std::span<const double> positions) {
  detail::require_pairs(values, positions);
  const auto rv = average_ranks(values);
  const auto rp = average_ranks(positions);
  return pearson(rv, rp);
}

}  // namespace numeracy
