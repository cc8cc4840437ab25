#include "qwalk/statevector.hpp"
#include "qwalk/walk_matrices.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace qwalk;
using std::numbers::pi;

TEST(init_state, basis_amplitudes) {
  const auto s0 = init_state(NodeState(0, 2), 2);
  EXPECT_EQ(s0.amplitudes()[0], complex(1.0));
  const auto s3 = init_state(NodeState(3, 2), 2);
  ASSERT_EQ(s3.amplitudes().size(), 8u);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(s3.amplitudes()[i], complex(i == 0b011 ? 1.0 : 0.0));
  EXPECT_THROW(init_state(NodeState(1, 2), 3), std::invalid_argument);
}

TEST(apply_u3_coin, examples) {
  const auto s = init_state(NodeState(2, 2), 2);
  const auto same = apply_u3_coin(s, {0, 0, 0});
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(same.amplitudes()[i], s.amplitudes()[i]);
  const auto flipped = apply_u3_coin(init_state(NodeState(0, 2), 2), {pi, 0, 0});
  EXPECT_NEAR(std::abs(flipped.amplitude(1, 0) - complex(1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(flipped.amplitude(0, 0)), 0.0, 1e-15);
}

TEST(apply_cnot_coin_to, examples_and_involution) {
  auto s = apply_u3_coin(init_state(NodeState(0, 2), 2), {pi, 0, 0});
  s = apply_cnot_coin_to(s, 0);
  EXPECT_NEAR(std::abs(s.amplitude(1, 0b01)), 1.0, 1e-15);
  // coin |0> leaves the graph alone
  const auto idle = apply_cnot_coin_to(init_state(NodeState(2, 2), 2), 1);
  EXPECT_EQ(idle.amplitude(0, 2), complex(1.0));
  StateVector mixed = init_state(NodeState(1, 3), 3);
  mixed.apply_coin(CoinParams{1.0, 0.4, 2.0});
  StateVector twice = mixed;
  twice.apply_cnot_coin_to(2).apply_cnot_coin_to(2);
  for (std::size_t i = 0; i < mixed.amplitudes().size(); ++i) EXPECT_EQ(twice.amplitudes()[i], mixed.amplitudes()[i]);
  EXPECT_THROW(mixed.apply_cnot_coin_to(3), std::out_of_range);
}

TEST(apply_evolution, zero_angles_leave_graph_unchanged) {
  const auto spec = make_walk(WalkKind::quantum, coins_from_thetas({0, 0, 0}));
  for (node_index j = 0; j < 8; ++j) {
    const auto m = apply_evolution(init_state(NodeState(j, 3), 3), spec).graph_marginal();
    for (node_index k = 0; k < 8; ++k) EXPECT_EQ(m[k], k == j ? 1.0 : 0.0);
  }
}

TEST(apply_evolution, norm_preserved_over_many_gates) {
  SplitMix64 rng(201);
  StateVector s = init_state(NodeState(5, 4), 4);
  for (int g = 0; g < 5000; ++g) {
    s.apply_coin(CoinParams{rng.uniform(0, pi), rng.uniform(0, 2 * pi), rng.uniform(0, 2 * pi)});
    s.apply_cnot_coin_to(static_cast<unsigned>(rng() % 4));
  }
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
}

TEST(graph_marginal, delta_and_single_qubit_half) {
  const auto init = init_state(NodeState(6, 3), 3).graph_marginal();
  for (node_index k = 0; k < 8; ++k) EXPECT_EQ(init[k], k == 6 ? 1.0 : 0.0);
  const auto m = simulate_walk_marginal(make_walk(WalkKind::quantum, coins_from_thetas({pi / 2})), 0);
  EXPECT_NEAR(m[0], 0.5, 1e-15);
  EXPECT_NEAR(m[1], 0.5, 1e-15);
}

TEST(graph_marginal, one_evolution_row_matches_closed_form) {
  SplitMix64 rng(202);
  for (unsigned n = 1; n <= 6; ++n)
    for (BitOrder order : {BitOrder::ascending, BitOrder::descending}) {
      std::vector<CoinParams> coins(n);
      for (auto& c : coins) c = {rng.uniform(0, pi), rng.uniform(0, 2 * pi), rng.uniform(0, 2 * pi)};
      const auto spec = make_walk(WalkKind::quantum, coins, 1, order);
      for (node_index j = 0; j < spec.dim(); j += 3) {
        const auto m = simulate_walk_marginal(spec, j);
        for (node_index k = 0; k < spec.dim(); ++k) EXPECT_NEAR(m[k], quantum_entry_one(spec, NodeState(j, n), NodeState(k, n)), 1e-12);
      }
    }
}

TEST(sample_index, inverse_cdf_edges) {
  const std::vector<double> p{0.0, 0.25, 0.0, 0.75, 0.0};
  EXPECT_EQ(sample_index(p, 0.0), 1u);
  EXPECT_EQ(sample_index(p, 0.2499), 1u);
  EXPECT_EQ(sample_index(p, 0.25), 3u);
  EXPECT_EQ(sample_index(p, 1.0 - 1e-16), 3u);
}

TEST(sample_step, zero_angles_return_start) {
  const auto spec = make_walk(WalkKind::quantum, coins_from_thetas({0, 0, 0}));
  SplitMix64 rng(203);
  for (node_index j = 0; j < 8; ++j) EXPECT_EQ(sample_step(NodeState(j, 3), spec, rng).index(), j);
}

TEST(sample_step, frequencies_within_three_standard_errors) {
  const auto spec = make_walk(WalkKind::quantum, {{1.2, 0.3, 0.9}, {2.0, 1.1, 0.2}});
  const auto row = offset_distribution(spec);
  const NodeState start(2, 2);
  SplitMix64 rng(204);
  const int draws = 200000;
  std::vector<int> counts(4, 0);
  for (int i = 0; i < draws; ++i) ++counts[sample_step(start, spec, rng).index()];
  for (node_index k = 0; k < 4; ++k) {
    const double p = row[k ^ start.index()];
    const double se = std::sqrt(p * (1 - p) / draws);
    EXPECT_LE(std::abs(counts[k] / double(draws) - p), 3 * se + 1e-12) << "k=" << k;
  }
}

TEST(sample_step, deterministic_given_seed) {
  const auto spec = make_walk(WalkKind::quantum, {{1.2, 0.3, 0.9}, {2.0, 1.1, 0.2}, {0.4, 0, 0}}, 2);
  SplitMix64 a(7), b(7);
  const NoiseModel noise{};
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(sample_step(NodeState(i % 8, 3), spec, a, noise), sample_step(NodeState(i % 8, 3), spec, b, noise));
}

TEST(readout_noise, flip_rate_and_uniform_limit) {
  SplitMix64 rng(205);
  const NoiseModel noise{0.1};
  const int draws = 200000;
  long flips = 0;
  for (int i = 0; i < draws; ++i) flips += bits::weight(apply_readout_noise(0, 4, noise, rng));
  const double rate = flips / (4.0 * draws);
  EXPECT_NEAR(rate, 0.1, 3 * std::sqrt(0.1 * 0.9 / (4.0 * draws)));

  // readout error approaching 1/2 scrambles every bit: output ~ uniform over N
  const NoiseModel heavy{0.5 - 1e-12};
  std::vector<int> counts(8, 0);
  for (int i = 0; i < draws; ++i) ++counts[apply_readout_noise(5, 3, heavy, rng)];
  for (int c : counts) EXPECT_NEAR(c / double(draws), 0.125, 3 * std::sqrt(0.125 * 0.875 / draws));

  EXPECT_THROW((NoiseModel{0.5}.validate()), ConfigError);
  EXPECT_THROW((NoiseModel{-0.1}.validate()), ConfigError);
}
