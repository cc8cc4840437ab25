#pragma once

// Closed-form transition matrices of classical and coined quantum walks on
// the Hamming cube. Every builder here is translation invariant: the
// probability of J -> J' depends only on the flip pattern I = J xor J', so
// a full matrix is assembled from a single row of "offset" probabilities.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qwalk/errors.hpp"
#include "qwalk/hamming.hpp"
#include "qwalk/statevector.hpp"
#include "qwalk/walk_spec.hpp"

namespace qwalk {

/// Largest n for which dense N x N matrices are built.
inline constexpr unsigned kMaxDenseBits = 12;

struct TransitionMatrix {
  unsigned n = 0;
  Eigen::MatrixXd entries;

  node_index dim() const { return node_index{1} << n; }
  double operator()(node_index from, node_index to) const { return entries(from, to); }

  double max_row_sum_deviation() const {
    return (entries.rowwise().sum().array() - 1.0).abs().maxCoeff();
  }
  double symmetry_deviation() const { return (entries - entries.transpose()).cwiseAbs().maxCoeff(); }
  double min_entry() const { return entries.minCoeff(); }

  /// max |P(a, b) - P(0, a xor b)|
  double translation_deviation() const {
    double dev = 0.0;
    for (node_index a = 0; a < dim(); ++a)
      for (node_index b = 0; b < dim(); ++b) dev = std::max(dev, std::abs(entries(a, b) - entries(0, a ^ b)));
    return dev;
  }
};

inline void require_dense(unsigned n) {
  if (n > kMaxDenseBits)
    throw CapacityError("dense build needs n <= " + std::to_string(kMaxDenseBits) + ", got n=" + std::to_string(n));
}

namespace detail {

inline void require_walk(const WalkSpec& spec, WalkKind kind, unsigned q, const char* who) {
  spec.validate();
  if (spec.kind != kind || spec.q != q)
    throw ConfigError(std::string(who) + ": requires a " + to_string(kind) + " walk with q=" + std::to_string(q) +
                      ", got " + to_string(spec.kind) + " q=" + std::to_string(spec.q));
}

inline node_index offset_of(const WalkSpec& spec, const NodeState& from, const NodeState& to) {
  if (from.width() != spec.n || to.width() != spec.n) throw std::invalid_argument("node width does not match walk n");
  return from.index() ^ to.index();
}

/// prod_l (flip_l ? p_l : 1 - p_l) over the bits of `pattern`.
inline double bernoulli_product(const std::vector<double>& flip_probs, node_index pattern) {
  double v = 1.0;
  for (std::size_t l = 0; l < flip_probs.size(); ++l) v *= ((pattern >> l) & 1u) ? flip_probs[l] : 1.0 - flip_probs[l];
  return v;
}

// Trig-exact factors cos^2(t/2), sin^2(t/2) are used instead of 1 - p so
// that entries match the product formulas to the last bit.
inline double one_step_factor(const CoinParams& c, unsigned flipped) {
  const double h = flipped ? c.sin_half() : c.cos_half();
  return h * h;
}

inline double two_step_factor(const CoinParams& c, unsigned flipped) {
  const double c2 = c.cos_half() * c.cos_half(), s2 = c.sin_half() * c.sin_half();
  return flipped ? 2.0 * c2 * s2 : c2 * c2 + s2 * s2;
}

/// Amplitude of one evolution that flips exactly the qubits in `pattern`,
/// entered with coin value `start`; `end` receives the final coin value.
inline complex chain_amplitude(const WalkSpec& spec, const std::vector<unsigned>& ks, node_index pattern,
                               unsigned start, unsigned* end = nullptr) {
  complex amp = 1.0;
  unsigned prev = start;
  for (unsigned k : ks) {
    const unsigned bit = (pattern >> k) & 1u;
    amp *= u3_entry(spec.coins[k], bit, prev);
    prev = bit;
  }
  if (end) *end = prev;
  return amp;
}

}  // namespace detail

/// One classical step: bit l flips independently with probability sin^2(theta_l/2).
inline double classical_entry(const WalkSpec& spec, const NodeState& from, const NodeState& to) {
  detail::require_walk(spec, WalkKind::classical, 1, "classical_entry");
  const node_index i = detail::offset_of(spec, from, to);
  double v = 1.0;
  for (unsigned l = 0; l < spec.n; ++l) v *= detail::one_step_factor(spec.coins[l], (i >> l) & 1u);
  return v;
}

/// Two classical steps; per bit: stay = cos^4 + sin^4, flip = 2 cos^2 sin^2.
inline double classical_two_step_entry(const WalkSpec& spec, const NodeState& from, const NodeState& to) {
  detail::require_walk(spec, WalkKind::classical, 2, "classical_two_step_entry");
  const node_index i = detail::offset_of(spec, from, to);
  double v = 1.0;
  for (unsigned l = 0; l < spec.n; ++l) v *= detail::two_step_factor(spec.coins[l], (i >> l) & 1u);
  return v;
}

/// One quantum evolution. Same factors as the classical walk but indexed by
/// coin transitions rather than by flips; phases drop out.
inline double quantum_entry_one(const WalkSpec& spec, const NodeState& from, const NodeState& to) {
  detail::require_walk(spec, WalkKind::quantum, 1, "quantum_entry_one");
  const node_index t = bits::coin_transitions(detail::offset_of(spec, from, to), spec.n, spec.order);
  double v = 1.0;
  for (unsigned l = 0; l < spec.n; ++l) v *= detail::one_step_factor(spec.coins[l], (t >> l) & 1u);
  return v;
}

namespace detail {

/// Chain amplitudes of every flip pattern for both entry coin values.
struct ChainTable {
  std::vector<complex> amp[2];
  std::vector<unsigned char> last;

  explicit ChainTable(const WalkSpec& spec) {
    const node_index dim = spec.dim();
    const auto ks = spec.step_order();
    amp[0].resize(dim);
    amp[1].resize(dim);
    last.resize(dim);
    for (node_index x = 0; x < dim; ++x) {
      unsigned end = 0;
      amp[0][x] = chain_amplitude(spec, ks, x, 0, &end);
      amp[1][x] = chain_amplitude(spec, ks, x, 1);
      last[x] = static_cast<unsigned char>(end);
    }
  }

  /// sum_k | sum_{I: last(I)=k} f(I, D xor I) |^2 with
  /// f(I, K) = chain(I | coin in = last(K)) * chain(K | coin in = 0).
  double two_evolution_probability(node_index offset) const {
    complex acc[2] = {0.0, 0.0};
    const node_index dim = static_cast<node_index>(last.size());
    for (node_index i = 0; i < dim; ++i) {
      const node_index k = offset ^ i;
      acc[last[i]] += amp[last[k]][i] * amp[0][k];
    }
    return std::norm(acc[0]) + std::norm(acc[1]);
  }
};

}  // namespace detail

/// Two quantum evolutions without resetting the coin in between: a coherent
/// sum over all 2^n intermediate flip patterns, O(2^n n) per entry.
inline double quantum_entry_two(const WalkSpec& spec, const NodeState& from, const NodeState& to) {
  detail::require_walk(spec, WalkKind::quantum, 2, "quantum_entry_two");
  const node_index d = detail::offset_of(spec, from, to);
  return detail::ChainTable(spec).two_evolution_probability(d);
}

/// Probability of each flip pattern I for a walk started anywhere;
/// P(J -> J xor I) = result[I]. Used by the matrix builder and by samplers.
inline std::vector<double> offset_distribution(const WalkSpec& spec) {
  spec.validate();
  const node_index dim = spec.dim();
  std::vector<double> f(dim);
  if (spec.kind == WalkKind::classical) {
    if (spec.q <= 2) {
      for (node_index i = 0; i < dim; ++i) {
        double v = 1.0;
        for (unsigned l = 0; l < spec.n; ++l) {
          const unsigned bit = (i >> l) & 1u;
          v *= spec.q == 1 ? detail::one_step_factor(spec.coins[l], bit) : detail::two_step_factor(spec.coins[l], bit);
        }
        f[i] = v;
      }
    } else {
      // q independent rounds of flips: p_q = (1 - (1 - 2p)^q) / 2
      std::vector<double> pq(spec.n);
      for (unsigned l = 0; l < spec.n; ++l)
        pq[l] = 0.5 * (1.0 - std::pow(1.0 - 2.0 * spec.coins[l].flip_probability(), spec.q));
      for (node_index i = 0; i < dim; ++i) f[i] = detail::bernoulli_product(pq, i);
    }
    return f;
  }
  if (spec.q == 1) {
    for (node_index i = 0; i < dim; ++i) {
      const node_index t = bits::coin_transitions(i, spec.n, spec.order);
      double v = 1.0;
      for (unsigned l = 0; l < spec.n; ++l) v *= detail::one_step_factor(spec.coins[l], (t >> l) & 1u);
      f[i] = v;
    }
  } else if (spec.q == 2) {
    const detail::ChainTable table(spec);
    for (node_index i = 0; i < dim; ++i) f[i] = table.two_evolution_probability(i);
  } else {
    f = simulate_walk_marginal(spec, 0);
  }
  return f;
}

inline TransitionMatrix matrix_from_offsets(unsigned n, const std::vector<double>& f) {
  require_dense(n);
  const node_index dim = node_index{1} << n;
  if (f.size() != dim) throw std::invalid_argument("matrix_from_offsets: row length mismatch");
  TransitionMatrix p{n, Eigen::MatrixXd(dim, dim)};
  for (node_index a = 0; a < dim; ++a)
    for (node_index b = 0; b < dim; ++b) p.entries(a, b) = f[a ^ b];
  return p;
}

inline TransitionMatrix build_transition_matrix(const WalkSpec& spec) {
  spec.validate();
  require_dense(spec.n);
  return matrix_from_offsets(spec.n, offset_distribution(spec));
}

// ---------------------------------------------------------------------------
// Kronecker structure

/// Van Loan-Pitsianis rearrangement for a = B (2x2) (x) C (N/2 x N/2):
/// row (2r + c) holds vec of block (r, c).
inline Eigen::MatrixXd kronecker_reshuffle(const Eigen::MatrixXd& a) {
  const Eigen::Index half = a.rows() / 2;
  Eigen::MatrixXd r(4, half * half);
  for (int br = 0; br < 2; ++br)
    for (int bc = 0; bc < 2; ++bc) {
      const Eigen::MatrixXd block = a.block(br * half, bc * half, half, half);
      r.row(2 * br + bc) = Eigen::Map<const Eigen::RowVectorXd>(block.data(), half * half);
    }
  return r;
}

/// sigma_2 / sigma_1 of the reshuffled matrix; 0 iff a = B (x) C exactly.
inline double kronecker_rank_ratio(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols() || a.rows() < 2 || a.rows() % 2) throw std::invalid_argument("kronecker_rank_ratio: need even square matrix");
  const Eigen::MatrixXd r = kronecker_reshuffle(a);
  const Eigen::Matrix4d gram = r * r.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(gram, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();  // ascending
  if (ev(3) <= 0.0) return 0.0;
  return std::sqrt(std::max(ev(2), 0.0) / ev(3));
}

struct KroneckerSplit {
  Eigen::Matrix2d left;
  Eigen::MatrixXd right;
  double residual = 0.0;  // max |a - left (x) right|
};

/// Best factor pair anchored on the largest block of `a`.
inline KroneckerSplit split_leading_qubit(const Eigen::MatrixXd& a) {
  const Eigen::Index half = a.rows() / 2;
  Eigen::Index best_r = 0, best_c = 0;
  double best = -1.0;
  for (int br = 0; br < 2; ++br)
    for (int bc = 0; bc < 2; ++bc) {
      const double nrm = a.block(br * half, bc * half, half, half).squaredNorm();
      if (nrm > best) best = nrm, best_r = br, best_c = bc;
    }
  KroneckerSplit s;
  s.right = a.block(best_r * half, best_c * half, half, half);
  const double denom = s.right.squaredNorm();
  for (int br = 0; br < 2; ++br)
    for (int bc = 0; bc < 2; ++bc) {
      const auto block = a.block(br * half, bc * half, half, half);
      s.left(br, bc) = denom > 0.0 ? (block.cwiseProduct(s.right)).sum() / denom : 0.0;
      s.residual = std::max(s.residual, (block - s.left(br, bc) * s.right).cwiseAbs().maxCoeff());
    }
  return s;
}

/// n 2x2 factors F_{n-1}, ..., F_0 (most significant qubit first) with
/// a = F_{n-1} (x) ... (x) F_0, or nullopt when any split leaves a residual
/// above `tol`.
inline std::optional<std::vector<Eigen::Matrix2d>> kronecker_factorize(const Eigen::MatrixXd& a, double tol = 1e-12) {
  if (a.rows() != a.cols() || a.rows() < 2 || (a.rows() & (a.rows() - 1)))
    throw std::invalid_argument("kronecker_factorize: need a square matrix of power-of-two size >= 2");
  std::vector<Eigen::Matrix2d> factors;
  Eigen::MatrixXd rest = a;
  while (rest.rows() > 2) {
    KroneckerSplit s = split_leading_qubit(rest);
    if (s.residual > tol) return std::nullopt;
    factors.push_back(s.left);
    rest = std::move(s.right);
  }
  factors.push_back(rest);
  return factors;
}

// ---------------------------------------------------------------------------
// Permutation equivalences

/// max |q(a, b) - c(perm[a], perm[b])|
inline double permutation_deviation(const Eigen::MatrixXd& q, const Eigen::MatrixXd& c, const std::vector<node_index>& perm) {
  double dev = 0.0;
  for (Eigen::Index a = 0; a < q.rows(); ++a)
    for (Eigen::Index b = 0; b < q.cols(); ++b) dev = std::max(dev, std::abs(q(a, b) - c(perm[a], perm[b])));
  return dev;
}

/// Node relabelling that carries the one-evolution quantum matrix in the
/// given order onto the classical matrix: I -> coin_transitions(I). For
/// descending order this is the Gray encoding; for N=4 ascending it is
/// (0,1,2,3) -> (0,3,2,1).
inline std::vector<node_index> classical_equivalence_permutation(unsigned n, BitOrder order) {
  std::vector<node_index> perm(node_index{1} << n);
  for (node_index i = 0; i < perm.size(); ++i) perm[i] = bits::coin_transitions(i, n, order);
  return perm;
}

/// Entrywise deviation between the descending-order quantum matrix
/// conjugated by the Gray permutation and the classical matrix with the
/// same thetas.
inline double gray_equivalence_deviation(const WalkSpec& spec) {
  if (spec.q != 1) throw ConfigError("gray equivalence is defined for one evolution (q=1)");
  WalkSpec quantum = spec, classical = spec;
  quantum.kind = WalkKind::quantum;
  quantum.order = BitOrder::descending;
  classical.kind = WalkKind::classical;
  const node_index dim = spec.dim();
  double dev = 0.0;
  for (node_index a = 0; a < dim; ++a)
    for (node_index b = 0; b < dim; ++b) {
      const double pq = quantum_entry_one(quantum, NodeState(a, spec.n), NodeState(b, spec.n));
      const double pc = classical_entry(classical, NodeState(bits::gray_encode(a), spec.n), NodeState(bits::gray_encode(b), spec.n));
      dev = std::max(dev, std::abs(pq - pc));
    }
  return dev;
}

inline bool check_gray_equivalence(const WalkSpec& spec) { return gray_equivalence_deviation(spec) < 1e-12; }

// ---------------------------------------------------------------------------
// Spectra

/// 2-norm condition number of a symmetric matrix; +inf when singular.
inline double condition_number(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("condition_number: matrix must be square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("condition_number: eigensolver did not converge");
  const Eigen::VectorXd mags = es.eigenvalues().cwiseAbs();
  const double lo = mags.minCoeff(), hi = mags.maxCoeff();
  if (lo <= hi * std::numeric_limits<double>::epsilon()) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

/// Spectral radius. Dense eigensolve up to 4096, power iteration beyond.
inline double spectral_radius(const Eigen::MatrixXd& b) {
  if (b.rows() != b.cols()) throw std::invalid_argument("spectral_radius: matrix must be square");
  if (b.rows() == 0) return 0.0;
  if (b.rows() <= 4096) {
    if ((b - b.transpose()).cwiseAbs().maxCoeff() == 0.0) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b, Eigen::EigenvaluesOnly);
      return es.eigenvalues().cwiseAbs().maxCoeff();
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(b, false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::VectorXd v = Eigen::VectorXd::Ones(b.rows()).normalized();
  double estimate = 0.0;
  for (int it = 0; it < 200; ++it) {
    Eigen::VectorXd w = b * v;
    const double nrm = w.norm();
    if (nrm == 0.0) return 0.0;
    const bool done = std::abs(nrm - estimate) < 1e-8 * std::max(1.0, nrm);
    estimate = nrm;
    v = w / nrm;
    if (done) break;
  }
  return estimate;
}

}  // namespace qwalk
