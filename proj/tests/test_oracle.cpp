#include "qwalk/experiment.hpp"
#include "qwalk/oracle.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace qwalk;

namespace {

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double inf_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST(direct_solve, identity_returns_b) {
  const std::vector<double> b{1.5, -2.0, 0.0, 7.25};
  EXPECT_EQ(direct_solve({Eigen::MatrixXd::Identity(4, 4), b}), b);
}

TEST(direct_solve, stochastic_system_ones_vector) {
  for (double gamma : {0.3, 0.5, 0.9}) {
    GenerateOptions opt;
    opt.n = 5;
    opt.gamma = gamma;
    opt.seed = 301;
    const auto sys = generate_system(opt);
    const auto x = direct_solve({sys.dense_a(), std::vector<double>(sys.dim(), 1.0 - gamma)});
    for (double xi : x) EXPECT_NEAR(xi, 1.0, 1e-12);
  }
}

TEST(direct_solve, residual_small_on_random_dense) {
  SplitMix64 rng(302);
  const int n = 64;
  Eigen::MatrixXd a(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a(r, c) = rng.uniform(-1, 1);
  std::vector<double> b(n);
  for (auto& x : b) x = rng.uniform(-1, 1);
  const auto x = direct_solve({a, b});
  const Eigen::VectorXd res = a * Eigen::Map<const Eigen::VectorXd>(x.data(), n) - Eigen::Map<const Eigen::VectorXd>(b.data(), n);
  EXPECT_LT(res.cwiseAbs().maxCoeff(), 1e-11);
}

TEST(direct_solve, singular_and_mismatched) {
  EXPECT_THROW(direct_solve({Eigen::MatrixXd::Ones(3, 3), {1, 2, 3}}), SingularMatrixError);
  EXPECT_THROW(direct_solve({Eigen::MatrixXd::Identity(3, 3), {1, 2}}), std::invalid_argument);
}

TEST(neumann_sum_dense, zero_terms_is_b) {
  GenerateOptions opt;
  opt.n = 3;
  opt.seed = 303;
  const auto sys = generate_system(opt);
  EXPECT_EQ(neumann_sum_dense(sys.transition_matrix(), sys.gamma, sys.b, 0), sys.b);
}

TEST(neumann_sum_dense, within_truncation_bound) {
  for (unsigned n : {4u, 6u})
    for (double gamma : {0.3, 0.5})
      for (unsigned q : {1u, 2u}) {
        GenerateOptions opt;
        opt.n = n;
        opt.q = q;
        opt.gamma = gamma;
        opt.seed = 304 + n;
        const auto sys = generate_system(opt);
        const auto exact = direct_solve(dense_system(sys));
        for (unsigned c : {0u, 2u, 6u, 10u, 20u}) {
          const auto xc = neumann_sum_dense(sys.transition_matrix(), gamma, sys.b, c);
          EXPECT_LE(inf_diff(xc, exact), truncation_bound(gamma, inf_norm(sys.b), c) + 1e-14);
        }
        EXPECT_LT(inf_diff(neumann_sum_dense(sys, 80), exact), 1e-12);
      }
}

TEST(neumann_sum_dense, weighted_converges_to_direct) {
  GenerateOptions opt;
  opt.n = 4;
  opt.seed = 305;
  opt.weight_radius = 0.5;
  const auto sys = generate_system(opt);
  ASSERT_TRUE(sys.is_weighted());
  const auto exact = direct_solve(dense_system(sys));
  const auto series = neumann_sum_dense_weighted(sys.transition_matrix(), *sys.weights, sys.b, 80);
  EXPECT_LT(inf_diff(series, exact), 1e-12);
  EXPECT_NEAR(spectral_radius(sys.iteration_matrix()), 0.5, 1e-10);
}

TEST(truncation_bound, table_parameters) {
  // gamma = 0.3, c = 6: 0.3^7 / 0.7
  EXPECT_NEAR(truncation_bound(0.3, 1.0, 6), 3.1243e-4, 1e-8);
  EXPECT_NEAR(truncation_bound(0.3, 2.0, 6), 2 * truncation_bound(0.3, 1.0, 6), 1e-18);
}
