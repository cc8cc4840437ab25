#pragma once

// Single-step transition samplers. All are immutable after construction
// and safe to share between threads; randomness comes from the caller's
// per-walk stream.

#include <algorithm>
#include <string>
#include <variant>
#include <vector>

#include "qwalk/errors.hpp"
#include "qwalk/linear_system.hpp"
#include "qwalk/statevector.hpp"
#include "qwalk/walk_matrices.hpp"

namespace qwalk {

enum class SamplerKind { classical_bitflip, quantum_simulated, quantum_closed_form };

inline std::string to_string(SamplerKind k) {
  switch (k) {
    case SamplerKind::classical_bitflip: return "classical-bitflip";
    case SamplerKind::quantum_simulated: return "quantum-simulated";
    case SamplerKind::quantum_closed_form: return "quantum-closed-form";
  }
  return "?";
}

inline SamplerKind parse_sampler_kind(const std::string& s) {
  if (s == "classical-bitflip") return SamplerKind::classical_bitflip;
  if (s == "quantum-simulated") return SamplerKind::quantum_simulated;
  if (s == "quantum-closed-form") return SamplerKind::quantum_closed_form;
  throw std::invalid_argument("unknown sampler '" + s + "' (expected classical-bitflip|quantum-simulated|quantum-closed-form)");
}

/// Prefix sums of a probability vector with an O(log N) inverse-CDF draw.
class CumulativeTable {
 public:
  CumulativeTable() = default;
  explicit CumulativeTable(const std::vector<double>& probs) : cdf_(probs.size()) {
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) cdf_[i] = acc += probs[i];
  }

  node_index draw(double u) const {
    const double target = u * cdf_.back();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
    if (it == cdf_.end()) {
      // target landed on the total; take the last entry with mass
      it = std::lower_bound(cdf_.begin(), cdf_.end(), cdf_.back());
    }
    return static_cast<node_index>(it - cdf_.begin());
  }

  std::size_t size() const { return cdf_.size(); }

 private:
  std::vector<double> cdf_;
};

/// Classical walk: each of the n bits flips independently with probability
/// sin^2(theta_l/2), q rounds per step. O(n q) per step, no O(N) table.
class BitflipSampler {
 public:
  explicit BitflipSampler(const WalkSpec& spec) : n_(spec.n), q_(spec.q), flip_(spec.n) {
    for (unsigned l = 0; l < n_; ++l) flip_[l] = spec.coins[l].flip_probability();
  }

  template <class Rng>
  node_index next(node_index j, Rng& rng) const {
    for (unsigned e = 0; e < q_; ++e)
      for (unsigned l = 0; l < n_; ++l)
        if (rng.uniform() < flip_[l]) j ^= node_index{1} << l;
    return j;
  }

 private:
  unsigned n_, q_;
  std::vector<double> flip_;
};

/// Translation-invariant walk from its precomputed offset row:
/// next = j xor I with I drawn from the closed-form row.
class OffsetSampler {
 public:
  explicit OffsetSampler(const std::vector<double>& offset_probs) : table_(offset_probs) {}

  template <class Rng>
  node_index next(node_index j, Rng& rng) const {
    return j ^ table_.draw(rng.uniform());
  }

 private:
  CumulativeTable table_;
};

/// Arbitrary row-stochastic matrix, one table per row.
class RowSampler {
 public:
  explicit RowSampler(const TransitionMatrix& p) {
    rows_.reserve(p.dim());
    std::vector<double> row(p.dim());
    for (node_index r = 0; r < p.dim(); ++r) {
      for (node_index c = 0; c < p.dim(); ++c) row[c] = p.entries(r, c);
      rows_.emplace_back(row);
    }
  }

  template <class Rng>
  node_index next(node_index j, Rng& rng) const {
    return rows_[j].draw(rng.uniform());
  }

 private:
  std::vector<CumulativeTable> rows_;
};

/// Statevector simulation of the walk circuit from |0>|J>, sampling the
/// exact graph marginal. For N <= kRowCacheLimit every start node's
/// marginal is simulated once up front.
class SimulatedSampler {
 public:
  static constexpr node_index kRowCacheLimit = 1024;

  explicit SimulatedSampler(const WalkSpec& spec, bool cache_rows = true) : spec_(spec) {
    if (cache_rows && spec.dim() <= kRowCacheLimit) {
      rows_.reserve(spec.dim());
      for (node_index j = 0; j < spec.dim(); ++j) rows_.emplace_back(simulate_walk_marginal(spec_, j));
    }
  }

  bool cached() const { return !rows_.empty(); }

  template <class Rng>
  node_index next(node_index j, Rng& rng) const {
    if (cached()) return rows_[j].draw(rng.uniform());
    return CumulativeTable(simulate_walk_marginal(spec_, j)).draw(rng.uniform());
  }

 private:
  WalkSpec spec_;
  std::vector<CumulativeTable> rows_;
};

using AnySampler = std::variant<BitflipSampler, OffsetSampler, RowSampler, SimulatedSampler>;

/// Sampler for `sys`; rejects kind/walk combinations that do not match.
inline AnySampler make_sampler(const LinearSystem& sys, SamplerKind kind) {
  const WalkSpec* spec = sys.spec();
  auto mismatch = [&](const std::string& why) { return ConfigError("sampler " + to_string(kind) + ": " + why); };
  switch (kind) {
    case SamplerKind::classical_bitflip:
      if (!spec) throw mismatch("needs a walk spec, system has an explicit matrix");
      if (spec->kind != WalkKind::classical) throw mismatch("walk kind is " + to_string(spec->kind));
      return BitflipSampler(*spec);
    case SamplerKind::quantum_simulated:
      if (!spec) throw mismatch("needs a walk spec, system has an explicit matrix");
      if (spec->kind != WalkKind::quantum) throw mismatch("walk kind is " + to_string(spec->kind));
      return SimulatedSampler(*spec);
    case SamplerKind::quantum_closed_form:
      if (!spec) return RowSampler(*sys.explicit_matrix());
      if (spec->kind != WalkKind::quantum) throw mismatch("walk kind is " + to_string(spec->kind));
      return OffsetSampler(offset_distribution(*spec));
  }
  throw mismatch("unknown sampler");
}

/// One classical step from j.
template <class Rng>
NodeState sample_classical_step(const NodeState& j, const WalkSpec& spec, Rng& rng) {
  if (spec.kind != WalkKind::classical) throw ConfigError("sample_classical_step: walk kind is " + to_string(spec.kind));
  if (j.width() != spec.n) throw std::invalid_argument("sample_classical_step: node width does not match n");
  return NodeState(BitflipSampler(spec).next(j.index(), rng), spec.n);
}

}  // namespace qwalk
