#pragma once

// Self-checks of the closed forms against each other and against the
// simulator. Each check draws its own parameters from a fixed seed.

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "qwalk/statevector.hpp"
#include "qwalk/system_io.hpp"
#include "qwalk/walk_matrices.hpp"

namespace qwalk {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Two-evolution row (P00, P01, P02, P03) of the N=4 walk in terms of
/// theta_0 and theta_1 only.
inline std::array<double, 4> four_node_two_evolution_row(double theta0, double theta1) {
  const double c0 = std::cos(theta0), c1 = std::cos(theta1), s0 = std::sin(theta0), s1 = std::sin(theta1);
  const double p00 = 0.25 * s0 * s0 + 0.125 * (1.0 + c1 * c1 + c0 * c0 + 4.0 * c1 * c0 + c1 * c1 * c0 * c0 - s1 * s1 * s0 * s0);
  const double p01 = 0.25 * s1 * s1;
  const double p03 = 0.25 * (1.0 - 2.0 * c1 * c0 + c1 * c1);
  return {p00, p01, p01, p03};
}

namespace detail {

inline std::vector<CoinParams> random_coins(SplitMix64& rng, unsigned n, bool phases) {
  std::vector<CoinParams> coins(n);
  for (auto& c : coins) {
    c.theta = rng.uniform(0.0, std::numbers::pi);
    if (phases) {
      c.phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
      c.lambda = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
  }
  return coins;
}

inline CheckResult verdict(std::string name, double deviation, double tol) {
  return {std::move(name), deviation < tol, "max deviation " + format_double(deviation, 3) + " (tol " + format_double(tol, 3) + ")"};
}

}  // namespace detail

inline CheckResult check_gray_homomorphism(unsigned max_n = 10) {
  for (unsigned n = 1; n <= max_n; ++n) {
    const node_index dim = node_index{1} << n;
    for (node_index a = 0; a < dim; ++a) {
      if (bits::gray_decode(bits::gray_encode(a)) != a) return {"gray code round trip", false, "fails at n=" + std::to_string(n)};
      if (a + 1 < dim && bits::weight(bits::gray_encode(a) ^ bits::gray_encode(a + 1)) != 1)
        return {"gray code round trip", false, "adjacent codes differ in more than one bit"};
      if (bits::weight(bits::coin_transitions(a, n, BitOrder::descending)) != bits::weight(bits::gray_encode(a)))
        return {"gray code round trip", false, "descending distance mismatch"};
      for (node_index b = 0; b < dim; ++b)
        if (bits::gray_encode(a ^ b) != (bits::gray_encode(a) ^ bits::gray_encode(b)))
          return {"gray code round trip", false, "not an XOR homomorphism at n=" + std::to_string(n)};
    }
  }
  return {"gray code is an XOR homomorphism (n<=" + std::to_string(max_n) + ")", true, "exhaustive"};
}

inline CheckResult check_gray_equivalence_range(unsigned max_n = 6, unsigned trials = 20, std::uint64_t seed = 11) {
  SplitMix64 rng(seed);
  double dev = 0.0;
  for (unsigned n = 1; n <= max_n; ++n)
    for (unsigned t = 0; t < trials; ++t)
      dev = std::max(dev, gray_equivalence_deviation(make_walk(WalkKind::classical, detail::random_coins(rng, n, false))));
  return detail::verdict("gray permutation maps descending quantum onto classical (n<=" + std::to_string(max_n) + ")", dev, 1e-12);
}

inline CheckResult check_four_node_permutation(unsigned trials = 20, std::uint64_t seed = 12) {
  SplitMix64 rng(seed);
  const std::vector<node_index> perm{0, 3, 2, 1};
  double dev = 0.0;
  for (unsigned t = 0; t < trials; ++t) {
    const auto coins = detail::random_coins(rng, 2, false);
    const auto q = build_transition_matrix(make_walk(WalkKind::quantum, coins));
    const auto c = build_transition_matrix(make_walk(WalkKind::classical, coins));
    dev = std::max(dev, permutation_deviation(q.entries, c.entries, perm));
  }
  return detail::verdict("N=4 permutation (0,3,2,1) maps quantum onto classical", dev, 1e-12);
}

inline CheckResult check_simulator_vs_closed_form(unsigned q, unsigned max_n = 5, unsigned trials = 50, std::uint64_t seed = 13) {
  SplitMix64 rng(seed + q);
  double dev = 0.0;
  for (unsigned n = 1; n <= max_n; ++n)
    for (unsigned t = 0; t < trials; ++t) {
      const BitOrder order = (t % 2) ? BitOrder::descending : BitOrder::ascending;
      const WalkSpec spec = make_walk(WalkKind::quantum, detail::random_coins(rng, n, true), q, order);
      const auto p = build_transition_matrix(spec);
      for (node_index j = 0; j < spec.dim(); ++j) {
        const auto m = simulate_walk_marginal(spec, j);
        for (node_index k = 0; k < spec.dim(); ++k) dev = std::max(dev, std::abs(m[k] - p(j, k)));
      }
    }
  return detail::verdict("simulator marginals match closed form, q=" + std::to_string(q) + " (n<=" + std::to_string(max_n) + ")", dev, 1e-10);
}

inline CheckResult check_one_evolution_phase_independence(unsigned trials = 100, std::uint64_t seed = 14) {
  SplitMix64 rng(seed);
  double dev = 0.0;
  for (unsigned n = 1; n <= 4; ++n) {
    const auto base_coins = detail::random_coins(rng, n, false);
    const auto base = simulate_walk_marginal(make_walk(WalkKind::quantum, base_coins), 0);
    for (unsigned t = 0; t < trials; ++t) {
      auto coins = base_coins;
      for (auto& c : coins) c.phi = rng.uniform(0.0, 2.0 * std::numbers::pi), c.lambda = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const auto m = simulate_walk_marginal(make_walk(WalkKind::quantum, coins), 0);
      for (std::size_t k = 0; k < m.size(); ++k) dev = std::max(dev, std::abs(m[k] - base[k]));
    }
  }
  return detail::verdict("one evolution is independent of phi, lambda", dev, 1e-12);
}

inline CheckResult check_four_node_two_evolution(unsigned trials = 100, std::uint64_t seed = 15) {
  SplitMix64 rng(seed);
  double dev = 0.0;
  for (unsigned t = 0; t < trials; ++t) {
    const auto coins = detail::random_coins(rng, 2, true);
    const WalkSpec spec = make_walk(WalkKind::quantum, coins, 2);
    const auto ref = four_node_two_evolution_row(coins[0].theta, coins[1].theta);
    double sum = 0.0;
    for (node_index k = 0; k < 4; ++k) {
      const double p = quantum_entry_two(spec, NodeState(0, 2), NodeState(k, 2));
      dev = std::max(dev, std::abs(p - ref[k]));
      sum += ref[k];
    }
    dev = std::max(dev, std::abs(sum - 1.0));
  }
  return detail::verdict("N=4 two-evolution entries match closed form and are phase independent", dev, 1e-12);
}

inline CheckResult check_eight_node_phase_dependence(unsigned trials = 100, std::uint64_t seed = 16) {
  SplitMix64 rng(seed);
  const auto thetas = detail::random_coins(rng, 3, false);
  std::vector<double> lo(8, 2.0), hi(8, -1.0);
  for (unsigned t = 0; t < trials; ++t) {
    auto coins = thetas;
    for (auto& c : coins) c.phi = rng.uniform(0.0, std::numbers::pi), c.lambda = rng.uniform(0.0, std::numbers::pi);
    const auto row = offset_distribution(make_walk(WalkKind::quantum, coins, 2));
    for (std::size_t k = 0; k < 8; ++k) lo[k] = std::min(lo[k], row[k]), hi[k] = std::max(hi[k], row[k]);
  }
  double spread = 0.0;
  for (std::size_t k = 0; k < 8; ++k) spread = std::max(spread, hi[k] - lo[k]);
  return {"N=8 two-evolution entries depend on phases", spread > 1e-6, "max spread " + format_double(spread, 3)};
}

inline CheckResult check_stochasticity(unsigned trials = 10, std::uint64_t seed = 17) {
  SplitMix64 rng(seed);
  double row_dev = 0.0, other_dev = 0.0;
  for (unsigned t = 0; t < trials; ++t)
    for (unsigned n = 1; n <= 6; ++n)
      for (WalkKind kind : {WalkKind::classical, WalkKind::quantum})
        for (unsigned q = 1; q <= 3; ++q) {
          const auto p = build_transition_matrix(make_walk(kind, detail::random_coins(rng, n, true), q));
          row_dev = std::max(row_dev, p.max_row_sum_deviation());
          other_dev = std::max({other_dev, p.symmetry_deviation(), -p.min_entry(), p.translation_deviation()});
        }
  return {"transition matrices are stochastic, symmetric, translation invariant", row_dev < 1e-9 && other_dev < 1e-12,
          "row-sum deviation " + format_double(row_dev, 3) + ", symmetry/sign/translation " + format_double(other_dev, 3)};
}

inline CheckResult check_kronecker_structure(std::uint64_t seed = 18) {
  SplitMix64 rng(seed);
  for (unsigned n = 2; n <= 8; ++n)
    for (unsigned q = 1; q <= 2; ++q)
      if (!kronecker_factorize(build_transition_matrix(make_walk(WalkKind::classical, detail::random_coins(rng, n, false), q)).entries))
        return {"classical matrices factorise, quantum ones do not", false, "classical n=" + std::to_string(n) + " did not factorise"};
  const auto quantum = build_transition_matrix(make_walk(WalkKind::quantum, coins_from_thetas({std::numbers::pi / 3, std::numbers::pi / 3})));
  const double ratio = kronecker_rank_ratio(quantum.entries);
  return {"classical matrices factorise, quantum ones do not", ratio > 1e-6,
          "quantum N=4 reshuffled rank ratio " + format_double(ratio, 3)};
}

inline std::vector<CheckResult> run_validation_suite() {
  return {check_gray_homomorphism(),
          check_gray_equivalence_range(),
          check_four_node_permutation(),
          check_simulator_vs_closed_form(1),
          check_simulator_vs_closed_form(2),
          check_one_evolution_phase_independence(),
          check_four_node_two_evolution(),
          check_eight_node_phase_dependence(),
          check_stochasticity(),
          check_kronecker_structure()};
}

}  // namespace qwalk
