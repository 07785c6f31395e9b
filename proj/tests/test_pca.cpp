#include <gtest/gtest.h>

#include <cmath>

#include "numeracy/pca.hpp"
#include "test_util.hpp"

using namespace numeracy;
using numeracy::test::code_of;
using numeracy::test::Gen;

namespace {

Matrix rows(std::initializer_list<std::initializer_list<double>> r) {
  std::vector<double> data;
  std::size_t cols = r.begin()->size();
  for (const auto& row : r) data.insert(data.end(), row.begin(), row.end());
  return Matrix(r.size(), cols, std::move(data));
}

void expect_orthonormal(const PcaModel& m, double tol = 1e-8) {
  for (std::size_t a = 0; a < m.k(); ++a) {
    for (std::size_t b = 0; b < m.k(); ++b) {
      EXPECT_NEAR(dot(m.components.row(a), m.components.row(b)), a == b ? 1.0 : 0.0, tol);
    }
  }
  for (std::size_t i = 1; i < m.k(); ++i) EXPECT_GE(m.explained_variance[i - 1], m.explained_variance[i]);
}

}  // namespace

TEST(PcaFit, ThreePointExample) {
  // Covariance (n−1 divisor) is diag(1, 1/3): eigenvalues 1 and 1/3.
  const auto x = rows({{0, 0}, {1, 1}, {2, 0}});
  const std::vector<double> values{1, 2, 3};
  const auto m = pca_fit(x, values, 2);
  EXPECT_NEAR(m.explained_variance[0], 1.0, 1e-12);
  EXPECT_NEAR(m.explained_variance[1], 1.0 / 3.0, 1e-12);
  const auto p = project(m, x);
  EXPECT_NEAR(p(0, 0), -1.0, 1e-12);
  EXPECT_NEAR(p(1, 0), 0.0, 1e-12);
  EXPECT_NEAR(p(2, 0), 1.0, 1e-12);
  expect_orthonormal(m);
}

TEST(PcaFit, CollinearDataHasExactZeroTrailingVariance) {
  const auto x = rows({{0, 0}, {3, 4}, {6, 8}});
  const std::vector<double> values{1, 2, 3};
  const auto m = pca_fit(x, values, 2);
  EXPECT_EQ(m.explained_variance[1], 0.0);
  EXPECT_NEAR(m.explained_ratio(0), 1.0, 1e-15);
  EXPECT_NEAR(m.components(0, 0), 0.6, 1e-15);
  EXPECT_NEAR(m.components(0, 1), 0.8, 1e-15);
  expect_orthonormal(m);
}

TEST(PcaFit, TwoPointDirection) {
  const auto x = rows({{1, 2, 3}, {4, -2, 3}});
  const std::vector<double> values{1, 2};
  const auto m = pca_fit(x, values, 1);
  // (q − p)/‖q − p‖ = (3, −4, 0)/5, oriented so the larger value projects higher.
  EXPECT_NEAR(m.components(0, 0), 0.6, 1e-15);
  EXPECT_NEAR(m.components(0, 1), -0.8, 1e-15);
  EXPECT_NEAR(m.components(0, 2), 0.0, 1e-15);
}

TEST(PcaFit, OrientationFollowsValues) {
  Gen gen(3);
  auto x = gen.normal_matrix(10, 5);
  auto values = numeracy::test::iota_values(10);
  const auto up = pca_fit(x, values, 2);
  std::reverse(values.begin(), values.end());
  const auto down = pca_fit(x, values, 2);
  for (std::size_t j = 0; j < 5; ++j) EXPECT_NEAR(up.components(0, j), -down.components(0, j), 1e-12);
  const auto p = project(up, x).column(0);
  EXPECT_GE(spearman_rho(p, numeracy::test::iota_values(10)), 0.0);
}

TEST(PcaFit, LaterComponentsHavePositiveLargestLoading) {
  Gen gen(5);
  const auto x = gen.normal_matrix(12, 6);
  const auto m = pca_fit(x, numeracy::test::iota_values(12), 4);
  for (std::size_t r = 1; r < m.k(); ++r) {
    const auto c = m.components.row(r);
    const auto it = std::max_element(c.begin(), c.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
    EXPECT_GT(*it, 0.0);
  }
}

TEST(PcaFit, RankDeficientCompletesBasis) {
  // Three points span a 2-D affine plane in 4-D: k = 2 is fine, k = 3 is out of range.
  const auto x = rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}});
  EXPECT_EQ(code_of([&] { pca_fit(x, std::vector<double>{1, 2, 3}, 3); }), ErrorCode::DegenerateInput);
  // Identical points: all variance zero, components still orthonormal.
  const auto same = rows({{1, 2, 3}, {1, 2, 3}, {1, 2, 3}});
  const auto m = pca_fit(same, std::vector<double>{1, 2, 3}, 2);
  EXPECT_EQ(m.explained_variance[0], 0.0);
  EXPECT_EQ(m.explained_variance[1], 0.0);
  expect_orthonormal(m);
}

TEST(PcaFit, Preconditions) {
  const auto one = rows({{1, 2}});
  EXPECT_EQ(code_of([&] { pca_fit(one, std::vector<double>{1}, 1); }), ErrorCode::DegenerateInput);
  const auto two = rows({{1, 2}, {3, 4}});
  EXPECT_EQ(code_of([&] { pca_fit(two, std::vector<double>{1, 2}, 0); }), ErrorCode::DegenerateInput);
  EXPECT_EQ(code_of([&] { pca_fit(two, std::vector<double>{1, 2}, 2); }), ErrorCode::DegenerateInput);
  const auto bad = rows({{1, NAN}, {3, 4}});
  EXPECT_EQ(code_of([&] { pca_fit(bad, std::vector<double>{1, 2}, 1); }), ErrorCode::DegenerateInput);
}

TEST(Project, Identities) {
  Gen gen(9);
  const auto x = gen.normal_matrix(8, 4);
  const auto m = pca_fit(x, numeracy::test::iota_values(8), 3);

  Matrix probe(2, 4);
  for (std::size_t j = 0; j < 4; ++j) {
    probe(0, j) = m.mean[j];
    probe(1, j) = m.mean[j] + m.components(0, j);
  }
  const auto p = project(m, probe);
  for (std::size_t c = 0; c < 3; ++c) {
    EXPECT_NEAR(p(0, c), 0.0, 1e-12);
    EXPECT_NEAR(p(1, c), c == 0 ? 1.0 : 0.0, 1e-12);
  }
  EXPECT_EQ(code_of([&] { project(m, Matrix(1, 3)); }), ErrorCode::DimMismatch);
}

TEST(PcaProperties, MatchesCovarianceEigendecomposition) {
  Gen gen(101);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = gen.index(2, 50);
    const auto d = gen.index(1, 16);
    const auto x = gen.normal_matrix(n, d, gen.uniform(0.1, 10.0));
    const auto k = std::min(n - 1, d);
    const auto m = pca_fit(x, gen.normals(n), k);
    const auto oracle = numeracy::test::covariance_oracle(x);
    const auto p = project(m, x);
    expect_orthonormal(m);
    for (std::size_t c = 0; c < k; ++c) {
      EXPECT_NEAR(m.explained_variance[c], std::max(0.0, oracle.variances(c)), 1e-6);
      for (std::size_t i = 0; i < n; ++i) {
        EXPECT_NEAR(std::abs(p(i, c)), std::abs(oracle.projections(i, c)), 1e-6);
      }
    }
  }
}

TEST(PcaProperties, VarianceBudget) {
  Gen gen(202);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = gen.index(2, 30);
    const auto d = gen.index(1, 10);
    const auto x = gen.normal_matrix(n, d);
    const auto m = pca_fit(x, gen.normals(n), std::min(n - 1, d));
    double sum = 0.0;
    for (double v : m.explained_variance) sum += v;
    EXPECT_NEAR(sum, m.total_variance, 1e-6);
  }
}

TEST(PcaProperties, TranslationInvariance) {
  Gen gen(303);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = gen.index(3, 30);
    const auto d = gen.index(2, 12);
    const auto x = gen.normal_matrix(n, d);
    const auto values = gen.normals(n);
    const auto k = std::min<std::size_t>(2, std::min(n - 1, d));
    auto shifted = x;
    const auto offset = gen.normals(d);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < d; ++j) shifted(i, j) += 5.0 * offset[j];
    }
    const auto a = project(pca_fit(x, values, k), x);
    const auto b = project(pca_fit(shifted, values, k), shifted);
    for (std::size_t i = 0; i < a.data().size(); ++i) EXPECT_NEAR(a.data()[i], b.data()[i], 1e-6);
  }
}

TEST(PcaProperties, RotationEquivariance) {
  Gen gen(404);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = gen.index(3, 30);
    const auto d = gen.index(2, 12);
    const auto x = gen.normal_matrix(n, d);
    const auto values = gen.normals(n);
    const auto k = std::min(n - 1, d);
    const auto q = gen.orthogonal(d);
    const auto rotated = numeracy::test::from_eigen(numeracy::test::to_eigen(x) * q);
    const auto ma = pca_fit(x, values, k);
    const auto mb = pca_fit(rotated, values, k);
    const auto a = project(ma, x);
    const auto b = project(mb, rotated);
    for (std::size_t c = 0; c < k; ++c) {
      EXPECT_NEAR(ma.explained_variance[c], mb.explained_variance[c], 1e-6);
      for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(std::abs(a(i, c)), std::abs(b(i, c)), 1e-6);
    }
  }
}

TEST(AffineAlign, Examples) {
  const auto a = affine_align(std::vector<double>{2, 4, 8});
  EXPECT_EQ(a[0], 0.0);
  EXPECT_NEAR(a[1], 1.0 / 3.0, 1e-15);
  EXPECT_EQ(a[2], 1.0);
  EXPECT_EQ(affine_align(std::vector<double>{5, 1, 3}), (std::vector<double>{0, 2, 1}));
  EXPECT_EQ(code_of([] { affine_align(std::vector<double>{4, 4, 4}); }), ErrorCode::DegenerateEndpoints);
  EXPECT_EQ(code_of([] { affine_align(std::vector<double>{4}); }), ErrorCode::TooFew);
}

TEST(AffineAlign, IdempotentAndExactEndpoints) {
  Gen gen(505);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = gen.index(2, 20);
    auto x = gen.normals(n);
    if (x.front() == x.back()) continue;
    const auto once = affine_align(x);
    EXPECT_EQ(once.front(), 0.0);
    EXPECT_EQ(once.back(), 1.0);
    const auto twice = affine_align(once);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(twice[i], once[i], 1e-12);
  }
}

TEST(LogReferenceLayout, Examples) {
  const auto m = log_reference_layout(std::vector<double>{1e2, 1e3, 1e6, 1e9, 1e12});
  const std::vector<double> expected{0.0, 0.1, 0.4, 0.7, 1.0};
  for (std::size_t i = 0; i < m.size(); ++i) EXPECT_NEAR(m[i], expected[i], 1e-14);
  EXPECT_EQ(log_reference_layout(std::vector<double>{1, 10}), (std::vector<double>{0, 1}));
  EXPECT_EQ(code_of([] { log_reference_layout(std::vector<double>{0, 1, 2}); }), ErrorCode::NonPositiveValue);
}
