#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include "qwalk/errors.hpp"
#include "qwalk/hamming.hpp"

namespace qwalk {

using complex = std::complex<double>;
using Matrix2c = std::array<std::array<complex, 2>, 2>;

enum class WalkKind { classical, quantum };

inline std::string to_string(WalkKind k) { return k == WalkKind::classical ? "classical" : "quantum"; }

inline WalkKind parse_walk_kind(const std::string& s) {
  if (s == "classical") return WalkKind::classical;
  if (s == "quantum") return WalkKind::quantum;
  throw std::invalid_argument("unknown walk kind '" + s + "' (expected classical|quantum)");
}

/// Coin rotation angles of U3(theta, phi, lambda), in radians.
struct CoinParams {
  double theta = 0.0;
  double phi = 0.0;
  double lambda = 0.0;

  double cos_half() const { return std::cos(0.5 * theta); }
  double sin_half() const { return std::sin(0.5 * theta); }
  /// Probability that the coin changes value (classical: that the bit flips).
  double flip_probability() const {
    const double s = sin_half();
    return s * s;
  }

  friend bool operator==(const CoinParams&, const CoinParams&) = default;
};

/// The U3 gate as a 2x2 matrix, rows = output coin value, cols = input.
inline Matrix2c u3_matrix(const CoinParams& p) {
  const double c = p.cos_half(), s = p.sin_half();
  const complex el = std::polar(1.0, p.lambda), ep = std::polar(1.0, p.phi);
  return {{{complex(c), -el * s}, {ep * s, ep * el * c}}};
}

/// Element (mu, nu) of U3 from the closed product form
/// e^{i(mu phi + nu lambda)} (-1)^{(1-mu) nu} cos^{1-(mu^nu)} sin^{mu^nu}.
inline complex u3_entry(const CoinParams& p, unsigned mu, unsigned nu) {
  if (mu > 1 || nu > 1) throw std::out_of_range("u3_entry: indices must be bits");
  const double sign = (mu == 0 && nu == 1) ? -1.0 : 1.0;
  const double mag = (mu ^ nu) ? p.sin_half() : p.cos_half();
  return (sign * mag) * std::polar(1.0, mu * p.phi + nu * p.lambda);
}

/// Walk parameters: one coin per graph qubit, q evolutions per step.
struct WalkSpec {
  unsigned n = 0;
  std::vector<CoinParams> coins;
  unsigned q = 1;
  BitOrder order = BitOrder::ascending;
  WalkKind kind = WalkKind::quantum;

  node_index dim() const { return node_index{1} << n; }

  void validate() const {
    if (n == 0 || n > kMaxNodeBits) throw ConfigError("WalkSpec: n must be in [1, " + std::to_string(kMaxNodeBits) + "], got " + std::to_string(n));
    if (coins.size() != n)
      throw ConfigError("WalkSpec: expected " + std::to_string(n) + " coins, got " + std::to_string(coins.size()));
    if (q < 1) throw ConfigError("WalkSpec: q must be >= 1");
    for (const auto& c : coins)
      if (!std::isfinite(c.theta) || !std::isfinite(c.phi) || !std::isfinite(c.lambda))
        throw ConfigError("WalkSpec: non-finite coin angle");
  }

  /// Qubit targeted at each position of one evolution.
  std::vector<unsigned> step_order() const {
    std::vector<unsigned> ks(n);
    std::iota(ks.begin(), ks.end(), 0u);
    if (order == BitOrder::descending) std::reverse(ks.begin(), ks.end());
    return ks;
  }
};

inline WalkSpec make_walk(WalkKind kind, std::vector<CoinParams> coins, unsigned q = 1,
                          BitOrder order = BitOrder::ascending) {
  WalkSpec s;
  s.n = static_cast<unsigned>(coins.size());
  s.coins = std::move(coins);
  s.q = q;
  s.order = order;
  s.kind = kind;
  s.validate();
  return s;
}

/// Coins with the given thetas and zero phases.
inline std::vector<CoinParams> coins_from_thetas(const std::vector<double>& thetas) {
  std::vector<CoinParams> out;
  out.reserve(thetas.size());
  for (double t : thetas) out.push_back({t, 0.0, 0.0});
  return out;
}

}  // namespace qwalk
