#pragma once

// Dense reference solvers. Deliberately independent of the Monte Carlo
// path: plain Gaussian elimination and iterated matrix-vector products.

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/errors.hpp"
#include "qwalk/linear_system.hpp"

namespace qwalk {

struct DenseSystem {
  Eigen::MatrixXd a;
  std::vector<double> b;
};

inline DenseSystem dense_system(const LinearSystem& sys) { return {sys.dense_a(), sys.b}; }

/// Gaussian elimination with partial pivoting.
inline std::vector<double> direct_solve(const DenseSystem& d) {
  const Eigen::Index n = d.a.rows();
  if (d.a.cols() != n || static_cast<Eigen::Index>(d.b.size()) != n)
    throw std::invalid_argument("direct_solve: dimension mismatch");
  Eigen::MatrixXd m = d.a;
  std::vector<double> x = d.b;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index piv = k;
    for (Eigen::Index r = k + 1; r < n; ++r)
      if (std::abs(m(r, k)) > std::abs(m(piv, k))) piv = r;
    if (std::abs(m(piv, k)) < 1e-14) throw SingularMatrixError("direct_solve: pivot below 1e-14 in column " + std::to_string(k));
    if (piv != k) {
      m.row(k).swap(m.row(piv));
      std::swap(x[k], x[piv]);
    }
    for (Eigen::Index r = k + 1; r < n; ++r) {
      const double f = m(r, k) / m(k, k);
      if (f == 0.0) continue;
      m.row(r).tail(n - k) -= f * m.row(k).tail(n - k);
      x[r] -= f * x[k];
    }
  }
  for (Eigen::Index k = n; k-- > 0;) {
    double acc = x[k];
    for (Eigen::Index c = k + 1; c < n; ++c) acc -= m(k, c) * x[c];
    x[k] = acc / m(k, k);
  }
  return x;
}

/// sum_{s=0}^{c} M^s b
inline std::vector<double> truncated_neumann(const Eigen::MatrixXd& m, const std::vector<double>& b, unsigned c) {
  Eigen::VectorXd term = Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()));
  Eigen::VectorXd sum = term;
  for (unsigned s = 1; s <= c; ++s) {
    term = m * term;
    sum += term;
  }
  return {sum.data(), sum.data() + sum.size()};
}

/// sum_{s=0}^{c} gamma^s P^s b
inline std::vector<double> neumann_sum_dense(const TransitionMatrix& p, double gamma, const std::vector<double>& b, unsigned c) {
  return truncated_neumann(gamma * p.entries, b, c);
}

/// sum_{s=0}^{c} (P o v)^s b
inline std::vector<double> neumann_sum_dense_weighted(const TransitionMatrix& p, const Eigen::MatrixXd& v,
                                                      const std::vector<double>& b, unsigned c) {
  return truncated_neumann(p.entries.cwiseProduct(v), b, c);
}

/// The truncated series for any system (weighted or not).
inline std::vector<double> neumann_sum_dense(const LinearSystem& sys, unsigned c) {
  return truncated_neumann(sys.iteration_matrix(), sys.b, c);
}

/// gamma^{c+1} max|b| / (1 - gamma)
inline double truncation_bound(double gamma, double b_inf, unsigned c) {
  return std::pow(gamma, static_cast<double>(c) + 1.0) * b_inf / (1.0 - gamma);
}

}  // namespace qwalk
