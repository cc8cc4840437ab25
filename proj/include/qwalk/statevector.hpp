#pragma once

// Statevector simulation of the coined walk circuit on n graph qubits plus
// one coin qubit. Basis index = (coin << n) | graph, so the coin is the
// highest-index qubit and graph qubit k is bit k.

#include <cmath>
#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qwalk/errors.hpp"
#include "qwalk/hamming.hpp"
#include "qwalk/random.hpp"
#include "qwalk/walk_spec.hpp"

namespace qwalk {

inline constexpr unsigned kMaxCircuitQubits = 21;

class StateVector {
 public:
  explicit StateVector(unsigned graph_qubits) : n_(graph_qubits) {
    if (graph_qubits == 0 || graph_qubits + 1 > kMaxCircuitQubits)
      throw CapacityError("StateVector: " + std::to_string(graph_qubits + 1) + " qubits requested, cap is " +
                          std::to_string(kMaxCircuitQubits));
    amps_.assign(std::size_t{2} << n_, complex(0.0));
    amps_[0] = 1.0;
  }

  /// |0>_coin (x) |J>_graph
  static StateVector basis(const NodeState& j) {
    StateVector s(j.width());
    s.amps_[0] = 0.0;
    s.amps_[j.index()] = 1.0;
    return s;
  }

  unsigned graph_qubits() const { return n_; }
  unsigned total_qubits() const { return n_ + 1; }
  std::size_t graph_dim() const { return std::size_t{1} << n_; }
  std::span<const complex> amplitudes() const { return amps_; }
  complex amplitude(unsigned coin, node_index graph) const { return amps_[(std::size_t{coin} << n_) | graph]; }

  double norm_squared() const {
    double acc = 0.0;
    for (const auto& a : amps_) acc += std::norm(a);
    return acc;
  }

  StateVector& apply_coin(const Matrix2c& u) {
    const std::size_t half = graph_dim();
    for (std::size_t g = 0; g < half; ++g) {
      const complex a0 = amps_[g], a1 = amps_[half | g];
      amps_[g] = u[0][0] * a0 + u[0][1] * a1;
      amps_[half | g] = u[1][0] * a0 + u[1][1] * a1;
    }
    return *this;
  }

  StateVector& apply_coin(const CoinParams& p) { return apply_coin(u3_matrix(p)); }

  /// CNOT with the coin as control and graph qubit k as target.
  StateVector& apply_cnot_coin_to(unsigned k) {
    if (k >= n_) throw std::out_of_range("apply_cnot_coin_to: qubit " + std::to_string(k) + " out of range");
    const std::size_t half = graph_dim(), bit = std::size_t{1} << k;
    for (std::size_t g = 0; g < half; ++g)
      if (!(g & bit)) std::swap(amps_[half | g], amps_[half | g | bit]);
    return *this;
  }

  /// One application of U: for each k in the walk's CNOT order, U3(u_k) on the
  /// coin then CNOT coin -> k. The coin carries over between steps.
  StateVector& apply_evolution(const WalkSpec& spec) {
    if (spec.n != n_) throw ConfigError("apply_evolution: spec has n=" + std::to_string(spec.n) + ", state has " + std::to_string(n_));
    for (unsigned k : spec.step_order()) {
      apply_coin(spec.coins[k]);
      apply_cnot_coin_to(k);
    }
    return *this;
  }

  /// Graph-register distribution with the coin traced out.
  std::vector<double> graph_marginal() const {
    const std::size_t half = graph_dim();
    std::vector<double> p(half);
    for (std::size_t g = 0; g < half; ++g) p[g] = std::norm(amps_[g]) + std::norm(amps_[half | g]);
    return p;
  }

 private:
  unsigned n_;
  std::vector<complex> amps_;
};

inline StateVector init_state(const NodeState& j, unsigned n) {
  if (j.width() != n) throw std::invalid_argument("init_state: node width does not match n");
  return StateVector::basis(j);
}

inline StateVector apply_u3_coin(StateVector s, const CoinParams& p) { return std::move(s.apply_coin(p)); }

inline StateVector apply_cnot_coin_to(StateVector s, unsigned k) { return std::move(s.apply_cnot_coin_to(k)); }

inline StateVector apply_evolution(StateVector s, const WalkSpec& spec) { return std::move(s.apply_evolution(spec)); }

/// Distribution of the node reached from `from` after spec.q evolutions.
inline std::vector<double> simulate_walk_marginal(const WalkSpec& spec, node_index from) {
  StateVector s = StateVector::basis(NodeState(from, spec.n));
  for (unsigned e = 0; e < spec.q; ++e) s.apply_evolution(spec);
  return s.graph_marginal();
}

/// Independent per-bit readout flips with probability E_r.
struct NoiseModel {
  static constexpr double kDefaultReadoutError = 6.76e-2;
  double readout_error = kDefaultReadoutError;

  void validate() const {
    if (!(readout_error >= 0.0 && readout_error < 0.5))
      throw ConfigError("NoiseModel: readout error must be in [0, 0.5), got " + std::to_string(readout_error));
  }
};

template <class Rng>
node_index apply_readout_noise(node_index measured, unsigned n, const NoiseModel& noise, Rng& rng) {
  for (unsigned l = 0; l < n; ++l)
    if (rng.uniform() < noise.readout_error) measured ^= node_index{1} << l;
  return measured;
}

/// Inverse-CDF draw from an unnormalised probability vector.
inline node_index sample_index(std::span<const double> probs, double u) {
  double total = 0.0;
  for (double p : probs) total += p;
  double target = u * total, acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (target < acc) return static_cast<node_index>(i);
  }
  // u * total rounded onto the last boundary; return the last nonzero entry
  for (std::size_t i = probs.size(); i-- > 0;)
    if (probs[i] > 0.0) return static_cast<node_index>(i);
  return 0;
}

/// One hardware-style step: simulate from |0>|J>, measure the graph
/// register (coin discarded), then apply readout noise if requested.
template <class Rng>
NodeState sample_step(const NodeState& j, const WalkSpec& spec, Rng& rng, const std::optional<NoiseModel>& noise = std::nullopt) {
  const auto marginal = simulate_walk_marginal(spec, j.index());
  node_index next = sample_index(marginal, rng.uniform());
  if (noise) next = apply_readout_noise(next, spec.n, *noise, rng);
  return NodeState(next, spec.n);
}

}  // namespace qwalk
