#include "qwalk/hamming.hpp"

#include <gtest/gtest.h>

using namespace qwalk;

TEST(hamming, xor_examples) {
  EXPECT_EQ(xor_nodes(NodeState(0b01, 2), NodeState(0b10, 2)).index(), 0b11u);
  EXPECT_EQ(xor_nodes(NodeState(0b110, 3), NodeState(0b011, 3)).index(), 0b101u);
  for (node_index x = 0; x < 8; ++x) EXPECT_EQ((NodeState(x, 3) ^ NodeState(x, 3)).index(), 0u);
}

TEST(hamming, xor_width_mismatch_throws) {
  EXPECT_THROW(xor_nodes(NodeState(1, 2), NodeState(1, 3)), std::invalid_argument);
}

TEST(hamming, node_range_checked) {
  EXPECT_THROW(NodeState(4, 2), std::out_of_range);
  EXPECT_NO_THROW(NodeState(3, 2));
  EXPECT_EQ(NodeState(0b101, 3).bit(0), 1u);
  EXPECT_EQ(NodeState(0b101, 3).bit(1), 0u);
}

TEST(hamming, xor_group_laws) {
  for (node_index a = 0; a < 16; ++a)
    for (node_index b = 0; b < 16; ++b) {
      const NodeState x(a, 4), y(b, 4);
      EXPECT_EQ(x ^ y, y ^ x);
      EXPECT_EQ((x ^ y) ^ y, x);
      for (node_index c = 0; c < 16; ++c) EXPECT_EQ((x ^ y) ^ NodeState(c, 4), x ^ (y ^ NodeState(c, 4)));
    }
}

TEST(hamming, classical_distance) {
  EXPECT_EQ(classical_distance(NodeState(0b000, 3)), 0u);
  EXPECT_EQ(classical_distance(NodeState(0b101, 3)), 2u);
  EXPECT_EQ(classical_distance(NodeState(0b111, 3)), 3u);
}

TEST(hamming, quantum_distance) {
  EXPECT_EQ(quantum_distance(NodeState(0b00, 2), BitOrder::ascending), 0u);
  EXPECT_EQ(quantum_distance(NodeState(0b11, 2), BitOrder::ascending), 1u);
  EXPECT_EQ(quantum_distance(NodeState(0b11, 2), BitOrder::descending), 1u);
  // ascending 0b01: i0^i_{-1} = 1, i1^i0 = 1
  EXPECT_EQ(quantum_distance(NodeState(0b01, 2), BitOrder::ascending), 2u);
  EXPECT_EQ(quantum_distance(NodeState(0b10, 2), BitOrder::ascending), 1u);
}

// Count transitions in the padded bit string directly.
static unsigned transitions_by_walking_bits(node_index i, unsigned n, BitOrder order) {
  unsigned count = 0;
  for (unsigned l = 0; l < n; ++l) {
    const unsigned here = (i >> l) & 1u;
    unsigned neighbour = 0;
    if (order == BitOrder::ascending) neighbour = l == 0 ? 0u : (i >> (l - 1)) & 1u;
    else neighbour = l + 1 == n ? 0u : (i >> (l + 1)) & 1u;
    count += here ^ neighbour;
  }
  return count;
}

TEST(hamming, distances_bounded_and_match_bit_walk) {
  for (unsigned n = 1; n <= 10; ++n)
    for (node_index i = 0; i < (node_index{1} << n); ++i) {
      const NodeState s(i, n);
      EXPECT_LE(classical_distance(s), n);
      for (BitOrder o : {BitOrder::ascending, BitOrder::descending}) {
        EXPECT_EQ(quantum_distance(s, o), transitions_by_walking_bits(i, n, o));
        EXPECT_LE(quantum_distance(s, o), n);
      }
    }
}

TEST(hamming, gray_examples) {
  EXPECT_EQ(gray_encode(NodeState(2, 2)).index(), 3u);
  EXPECT_EQ(gray_encode(NodeState(3, 2)).index(), 2u);
  EXPECT_EQ(gray_encode(NodeState(0, 2)).index(), 0u);
  EXPECT_EQ(gray_decode(NodeState(0b11, 2)).index(), 0b10u);
  EXPECT_EQ(gray_decode(NodeState(0, 2)).index(), 0u);
  // integers 0..3 in Gray order are |00>, |01>, |11>, |10>
  const node_index expected[] = {0b00, 0b01, 0b11, 0b10};
  for (node_index i = 0; i < 4; ++i) EXPECT_EQ(bits::gray_encode(i), expected[i]);
}

TEST(hamming, gray_round_trip_and_bijection) {
  for (unsigned n = 1; n <= 10; ++n) {
    std::vector<bool> seen(node_index{1} << n);
    for (node_index b = 0; b < seen.size(); ++b) {
      const NodeState s(b, n);
      EXPECT_EQ(gray_decode(gray_encode(s)), s);
      const node_index g = gray_encode(s).index();
      ASSERT_LT(g, seen.size());
      EXPECT_FALSE(seen[g]);
      seen[g] = true;
    }
  }
}

TEST(hamming, gray_is_xor_homomorphism_exhaustive) {
  for (unsigned n = 1; n <= 10; ++n) {
    const node_index dim = node_index{1} << n;
    for (node_index a = 0; a < dim; ++a)
      for (node_index b = 0; b < dim; ++b)
        ASSERT_EQ(bits::gray_encode(a ^ b), bits::gray_encode(a) ^ bits::gray_encode(b)) << "n=" << n;
  }
}

TEST(hamming, consecutive_gray_codes_differ_in_one_bit) {
  for (node_index i = 0; i + 1 < (1u << 12); ++i) EXPECT_EQ(bits::weight(bits::gray_encode(i) ^ bits::gray_encode(i + 1)), 1u);
}

TEST(hamming, descending_distance_is_weight_of_gray_image) {
  for (unsigned n = 1; n <= 10; ++n)
    for (node_index i = 0; i < (node_index{1} << n); ++i)
      EXPECT_EQ(quantum_distance(NodeState(i, n), BitOrder::descending), classical_distance(gray_encode(NodeState(i, n))));
}
