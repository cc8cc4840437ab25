#pragma once

// A x = b with A = 1 - gamma P, or the weighted form A = 1 - B with
// B(I, J) = P(I, J) v(I, J). A is only materialised on request.

#include <Eigen/Dense>

#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qwalk/errors.hpp"
#include "qwalk/walk_matrices.hpp"
#include "qwalk/walk_spec.hpp"

namespace qwalk {

struct LinearSystem {
  /// Either a walk description or an explicit transition matrix.
  std::variant<WalkSpec, TransitionMatrix> walk;
  /// Used when `weights` is absent; B = gamma P.
  double gamma = 0.0;
  std::vector<double> b;
  /// v, so that B = P o v (elementwise). gamma is ignored when present.
  std::optional<Eigen::MatrixXd> weights;

  unsigned n() const {
    return std::visit([](const auto& w) { return w.n; }, walk);
  }
  node_index dim() const { return node_index{1} << n(); }
  bool is_weighted() const { return weights.has_value(); }
  const WalkSpec* spec() const { return std::get_if<WalkSpec>(&walk); }
  const TransitionMatrix* explicit_matrix() const { return std::get_if<TransitionMatrix>(&walk); }

  TransitionMatrix transition_matrix() const {
    if (const auto* p = explicit_matrix()) return *p;
    return build_transition_matrix(std::get<WalkSpec>(walk));
  }

  /// The iteration matrix B (gamma P, or P o v).
  Eigen::MatrixXd iteration_matrix() const {
    const TransitionMatrix p = transition_matrix();
    if (weights) return p.entries.cwiseProduct(*weights);
    return gamma * p.entries;
  }

  Eigen::MatrixXd dense_a() const {
    const Eigen::MatrixXd bm = iteration_matrix();
    return Eigen::MatrixXd::Identity(bm.rows(), bm.cols()) - bm;
  }
};

namespace detail {

inline void validate_rhs(const std::vector<double>& b, node_index dim) {
  if (b.size() != dim)
    throw ConfigError("build_system: b has " + std::to_string(b.size()) + " entries, expected " + std::to_string(dim));
  for (double x : b)
    if (!std::isfinite(x)) throw ConfigError("build_system: b contains a non-finite value");
}

inline void finish_system(LinearSystem& sys) {
  const node_index dim = sys.dim();
  validate_rhs(sys.b, dim);
  if (!sys.weights) {
    if (!(sys.gamma > 0.0 && sys.gamma < 1.0))
      throw ConfigError("build_system: gamma must lie in (0, 1), got " + std::to_string(sys.gamma));
    return;
  }
  if (sys.weights->rows() != dim || sys.weights->cols() != dim)
    throw ConfigError("build_system: weight matrix must be " + std::to_string(dim) + "x" + std::to_string(dim));
  if (!sys.weights->allFinite()) throw ConfigError("build_system: weights contain a non-finite value");
  const double rho = spectral_radius(sys.iteration_matrix());
  if (!(rho < 1.0)) throw SpectralRadiusError(rho);
}

}  // namespace detail

inline LinearSystem build_system(const WalkSpec& spec, double gamma, std::vector<double> b,
                                 std::optional<Eigen::MatrixXd> weights = std::nullopt) {
  spec.validate();
  LinearSystem sys{spec, gamma, std::move(b), std::move(weights)};
  detail::finish_system(sys);
  return sys;
}

inline LinearSystem build_system(TransitionMatrix p, double gamma, std::vector<double> b,
                                 std::optional<Eigen::MatrixXd> weights = std::nullopt) {
  if (p.entries.rows() != p.dim() || p.entries.cols() != p.dim()) throw ConfigError("build_system: matrix size does not match n");
  LinearSystem sys{std::move(p), gamma, std::move(b), std::move(weights)};
  detail::finish_system(sys);
  return sys;
}

}  // namespace qwalk
