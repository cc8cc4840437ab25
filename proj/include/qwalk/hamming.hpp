#pragma once

// Hamming-cube node encodings: node J <-> n-bit string |j_{n-1} ... j_1 j_0>,
// with j_l stored as bit l of the integer (j_0 is the rightmost bit).

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qwalk {

using node_index = std::uint32_t;

inline constexpr unsigned kMaxNodeBits = 30;

enum class BitOrder { ascending, descending };

namespace bits {

constexpr node_index mask(unsigned n) {
  return n >= 32 ? ~node_index{0} : (node_index{1} << n) - 1;
}

constexpr unsigned weight(node_index i) { return static_cast<unsigned>(std::popcount(i)); }

constexpr node_index gray_encode(node_index b) { return b ^ (b >> 1); }

constexpr node_index gray_decode(node_index g) {
  // prefix XOR from the most significant bit down
  for (unsigned shift = 1; shift < 32; shift <<= 1) g ^= g >> shift;
  return g;
}

// Bit l of the result is set when the walk coin changes value at the step
// that targets qubit l, for a flip pattern `i` (bit l = qubit l flipped).
// ascending:  i_l xor i_{l-1}, i_{-1} = 0
// descending: i_l xor i_{l+1}, i_n = 0   (identical to the Gray encoding)
constexpr node_index coin_transitions(node_index i, unsigned n, BitOrder order) {
  return order == BitOrder::ascending ? (i ^ (i << 1)) & mask(n) : (i ^ (i >> 1)) & mask(n);
}

}  // namespace bits

/// An n-bit node of the Hamming cube.
class NodeState {
 public:
  constexpr NodeState() = default;
  constexpr NodeState(node_index index, unsigned width) : index_(index), width_(width) {
    if (width > kMaxNodeBits) throw std::out_of_range("NodeState: width exceeds " + std::to_string(kMaxNodeBits) + " bits");
    if (index > bits::mask(width)) throw std::out_of_range("NodeState: index " + std::to_string(index) + " does not fit in " + std::to_string(width) + " bits");
  }

  constexpr node_index index() const { return index_; }
  constexpr unsigned width() const { return width_; }
  constexpr node_index dim() const { return node_index{1} << width_; }
  constexpr unsigned bit(unsigned l) const { return (index_ >> l) & 1u; }

  friend constexpr bool operator==(const NodeState&, const NodeState&) = default;

 private:
  node_index index_ = 0;
  unsigned width_ = 0;
};

inline NodeState xor_nodes(const NodeState& a, const NodeState& b) {
  if (a.width() != b.width())
    throw std::invalid_argument("xor_nodes: width mismatch (" + std::to_string(a.width()) + " vs " + std::to_string(b.width()) + ")");
  return NodeState(a.index() ^ b.index(), a.width());
}

inline NodeState operator^(const NodeState& a, const NodeState& b) { return xor_nodes(a, b); }

/// Hamming weight; the number of bit flips separating I from 0.
constexpr unsigned classical_distance(const NodeState& i) { return bits::weight(i.index()); }

/// Number of coin changes along the flip pattern `i`.
constexpr unsigned quantum_distance(const NodeState& i, BitOrder order = BitOrder::ascending) {
  return bits::weight(bits::coin_transitions(i.index(), i.width(), order));
}

constexpr NodeState gray_encode(const NodeState& b) { return NodeState(bits::gray_encode(b.index()), b.width()); }
constexpr NodeState gray_decode(const NodeState& g) { return NodeState(bits::gray_decode(g.index()), g.width()); }

inline std::string to_string(BitOrder order) { return order == BitOrder::ascending ? "ascending" : "descending"; }

inline BitOrder parse_bit_order(const std::string& s) {
  if (s == "ascending") return BitOrder::ascending;
  if (s == "descending") return BitOrder::descending;
  throw std::invalid_argument("unknown qubit order '" + s + "' (expected ascending|descending)");
}

}  // namespace qwalk
