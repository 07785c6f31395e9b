#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "numeracy/error.hpp"
#include "numeracy/matrix.hpp"
#include "numeracy/rank.hpp"

namespace numeracy {

/// Principal axes of a probe subset. `components` is k × dim with orthonormal
/// rows; `explained_variance` uses the n−1 divisor and is non-increasing.
struct PcaModel {
  std::vector<double> mean;
  Matrix components;
  std::vector<double> explained_variance;
  double total_variance = 0.0;  // trace of the sample covariance
  std::size_t n_samples = 0;

  std::size_t k() const noexcept { return components.rows(); }
  std::size_t dim() const noexcept { return mean.size(); }

  /// Share of total variance carried by component i; 0 for constant data.
  double explained_ratio(std::size_t i) const {
    return total_variance > 0.0 ? explained_variance.at(i) / total_variance : 0.0;
  }
};

/// Coordinates of labelled, valued points in a PCA space.
struct Projection {
  Matrix coords;  // n × k
  std::vector<std::string> labels;
  std::vector<double> values;

  std::size_t size() const noexcept { return coords.rows(); }
};

namespace detail {

// One-sided (Hestenes) Jacobi on the rows of `w`: rotates pairs of rows until
// they are mutually orthogonal. Afterwards row norms are the singular values
// of the original matrix and normalized rows its right singular vectors.
// Cost per sweep is O(n² · dim), so wide embeddings stay cheap.
inline void orthogonalize_rows(Matrix& w) {
  constexpr int kMaxSweeps = 80;
  constexpr double kTol = 1e-15;
  const auto n = w.rows();
  const auto d = w.cols();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        auto wp = w.row(p);
        auto wq = w.row(q);
        const double alpha = dot(wp, wp);
        const double beta = dot(wq, wq);
        const double gamma = dot(wp, wq);
        if (alpha == 0.0 || beta == 0.0) continue;
        if (std::abs(gamma) <= kTol * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t j = 0; j < d; ++j) {
          const double a = wp[j];
          const double b = wq[j];
          wp[j] = c * a - s * b;
          wq[j] = s * a + c * b;
        }
      }
    }
    if (!rotated) return;
  }
}

// Modified Gram-Schmidt of `v` against the first `count` rows of `basis`,
// applied twice. Returns the remaining norm (v is normalized when > 0).
inline double reorthogonalize(std::span<double> v, const Matrix& basis, std::size_t count) {
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t r = 0; r < count; ++r) {
      const double proj = dot(v, basis.row(r));
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= proj * basis(r, j);
    }
  }
  const double norm = std::sqrt(dot(v, v));
  if (norm > 0.0) {
    for (auto& x : v) x /= norm;
  }
  return norm;
}

inline void flip(std::span<double> v) {
  for (auto& x : v) x = -x;
}

// Makes the largest-magnitude entry positive (first index on ties).
inline void orient_by_loading(std::span<double> v) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < v.size(); ++j) {
    if (std::abs(v[j]) > std::abs(v[best])) best = j;
  }
  if (v[best] < 0.0) flip(v);
}

}  // namespace detail

/// Projects rows of `vectors` onto the model's components.
inline Matrix project(const PcaModel& model, const Matrix& vectors) {
  if (vectors.cols() != model.dim()) {
    throw Error(ErrorCode::DimMismatch, "vectors have width " + std::to_string(vectors.cols()) +
                                            ", model expects " + std::to_string(model.dim()));
  }
  Matrix out(vectors.rows(), model.k());
  std::vector<double> centered(model.dim());
  for (std::size_t i = 0; i < vectors.rows(); ++i) {
    const auto row = vectors.row(i);
    for (std::size_t j = 0; j < centered.size(); ++j) centered[j] = row[j] - model.mean[j];
    for (std::size_t c = 0; c < model.k(); ++c) out(i, c) = dot(centered, model.components.row(c));
  }
  return out;
}

/// Subset PCA with deterministic orientation: component 1 is signed so the
/// Spearman correlation of its projections with `values` is >= 0 (loading
/// rule when it is exactly 0); later components get a positive
/// largest-magnitude loading.
inline PcaModel pca_fit(const Matrix& vectors, std::span<const double> values, std::size_t k) {
  const auto n = vectors.rows();
  const auto d = vectors.cols();
  if (n < 2) throw Error(ErrorCode::DegenerateInput, "PCA needs at least 2 samples");
  if (d == 0) throw Error(ErrorCode::DegenerateInput, "PCA needs non-empty vectors");
  if (values.size() != n) throw Error(ErrorCode::DegenerateInput, "one value per sample required");
  if (k < 1 || k > std::min(n - 1, d)) {
    throw Error(ErrorCode::DegenerateInput, "k=" + std::to_string(k) + " outside [1, " +
                                                std::to_string(std::min(n - 1, d)) + "]");
  }
  for (double x : vectors.data()) {
    if (!std::isfinite(x)) throw Error(ErrorCode::DegenerateInput, "non-finite input entry");
  }

  PcaModel model;
  model.n_samples = n;
  model.mean.assign(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) model.mean[j] += vectors(i, j);
  }
  for (auto& m : model.mean) m /= static_cast<double>(n);

  Matrix w(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) w(i, j) = vectors(i, j) - model.mean[j];
  }
  double total_ss = 0.0;
  for (double x : w.data()) total_ss += x * x;
  model.total_variance = total_ss / static_cast<double>(n - 1);

  detail::orthogonalize_rows(w);

  std::vector<double> sigma(n);
  for (std::size_t i = 0; i < n; ++i) sigma[i] = std::sqrt(dot(w.row(i), w.row(i)));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return sigma[a] > sigma[b]; });

  // Singular values at rounding level are structural zeros.
  const double sigma_max = sigma[order[0]];
  const double cutoff = sigma_max * static_cast<double>(std::max(n, d)) * std::numeric_limits<double>::epsilon();

  model.components = Matrix(k, d);
  model.explained_variance.assign(k, 0.0);
  std::size_t filled = 0;
  for (std::size_t r = 0; r < k; ++r) {
    const auto src = order[r];
    if (sigma[src] <= cutoff) break;
    auto comp = model.components.row(r);
    std::copy(w.row(src).begin(), w.row(src).end(), comp.begin());
    if (detail::reorthogonalize(comp, model.components, r) == 0.0) break;
    model.explained_variance[r] = sigma[src] * sigma[src] / static_cast<double>(n - 1);
    filled = r + 1;
  }
  // Zero-variance directions: complete the basis from the standard axes.
  for (std::size_t axis = 0; filled < k && axis < d; ++axis) {
    auto comp = model.components.row(filled);
    std::fill(comp.begin(), comp.end(), 0.0);
    comp[axis] = 1.0;
    if (detail::reorthogonalize(comp, model.components, filled) > 1e-6) {
      model.explained_variance[filled] = 0.0;
      ++filled;
    }
  }

  for (std::size_t r = 0; r < k; ++r) {
    auto comp = model.components.row(r);
    if (r == 0) {
      std::vector<double> proj(n);
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) s += (vectors(i, j) - model.mean[j]) * comp[j];
        proj[i] = s;
      }
      const double rho = spearman_rho(proj, values);
      if (rho < 0.0) {
        detail::flip(comp);
      } else if (rho == 0.0) {
        detail::orient_by_loading(comp);
      }
    } else {
      detail::orient_by_loading(comp);
    }
  }
  return model;
}

/// Affine map sending positions[0] to 0 and positions[n-1] to 1.
inline std::vector<double> affine_align(std::span<const double> positions) {
  if (positions.size() < 2) throw Error(ErrorCode::TooFew, "alignment needs at least 2 positions");
  const double first = positions.front();
  const double span = positions.back() - first;
  if (span == 0.0 || !std::isfinite(span)) {
    throw Error(ErrorCode::DegenerateEndpoints, "first and last positions coincide");
  }
  std::vector<double> out(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) out[i] = (positions[i] - first) / span;
  out.front() = 0.0;
  out.back() = 1.0;
  return out;
}

/// Positions of `values` on a log axis, normalized to the [first, last] endpoints.
inline std::vector<double> log_reference_layout(std::span<const double> values) {
  if (values.size() < 2) throw Error(ErrorCode::TooFew, "layout needs at least 2 values");
  std::vector<double> logs(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0)) {
      throw Error(ErrorCode::NonPositiveValue, "log layout needs positive values");
    }
    if (i > 0 && !(values[i] > values[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "log layout needs strictly increasing values");
    }
    logs[i] = std::log(values[i]);
  }
  return affine_align(logs);
}

}  // namespace numeracy
