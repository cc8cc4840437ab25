#pragma once

// Truncated Neumann-series Monte Carlo.
//
// A walk I_0 -> I_1 -> ... -> I_c started at the requested component
// contributes sum_s w_s b_{I_s}, with w_s = gamma^s (or, for weighted
// systems, w_0 = 1 and w_s = w_{s-1} v(I_{s-1}, I_s)). Its expectation over
// paths is exactly the truncated series x^(c)_{I_0}.
//
// Walks are grouped into fixed blocks of kBlockWalks. Each block keeps its
// own running mean/M2 and blocks are merged in index order, so results are
// a function of (seed, n_s) alone and never of the thread count.

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwalk/errors.hpp"
#include "qwalk/linear_system.hpp"
#include "qwalk/parallel.hpp"
#include "qwalk/random.hpp"
#include "qwalk/samplers.hpp"
#include "qwalk/statevector.hpp"

namespace qwalk {

struct SolveConfig {
  unsigned c = 0;
  std::uint64_t n_s = 1;
  std::uint64_t seed = 0;
  SamplerKind sampler = SamplerKind::quantum_closed_form;
  std::optional<NoiseModel> noise;
  unsigned runs = 1;
  unsigned threads = 0;  // 0: hardware concurrency

  void validate() const {
    if (n_s < 1) throw ConfigError("SolveConfig: n_s must be >= 1");
    if (runs < 1) throw ConfigError("SolveConfig: runs must be >= 1");
    if (noise) noise->validate();
  }
};

struct EstimateResult {
  node_index component = 0;
  /// Mean over all runs * n_s walks.
  double estimate = 0.0;
  std::vector<double> run_estimates;
  std::vector<double> run_standard_errors;
  /// Sample std of the per-walk contributions / sqrt(walks).
  double standard_error = 0.0;
  std::uint64_t walks = 0;
  std::uint64_t seed = 0;
};

/// Steps needed for a truncation error of order epsilon.
inline unsigned plan_steps(double gamma, double epsilon) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("plan_steps: gamma must lie in (0, 1)");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("plan_steps: epsilon must lie in (0, 1)");
  const double ratio = std::log(1.0 / epsilon) / std::log(1.0 / gamma);
  // absorb rounding when epsilon is an exact power of gamma
  return static_cast<unsigned>(std::ceil(ratio - 1e-9));
}

/// |exact - estimate| / |exact|; nullopt when exact == 0.
inline std::optional<double> relative_error(double estimate, double exact) {
  if (exact == 0.0) return std::nullopt;
  return std::abs(exact - estimate) / std::abs(exact);
}

/// Readout-limited accuracy floor kappa * E_r.
inline double error_floor(double kappa, double readout_error) {
  if (!(kappa >= 1.0)) throw std::domain_error("error_floor: condition number must be >= 1");
  if (!(readout_error >= 0.0)) throw std::domain_error("error_floor: readout error must be >= 0");
  return kappa * readout_error;
}

namespace detail {

struct Moments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double d = x - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (x - mean);
  }

  void merge(const Moments& o) {
    if (!o.count) return;
    if (!count) {
      *this = o;
      return;
    }
    const double total = static_cast<double>(count + o.count);
    const double d = o.mean - mean;
    mean += d * static_cast<double>(o.count) / total;
    m2 += o.m2 + d * d * static_cast<double>(count) * static_cast<double>(o.count) / total;
    count += o.count;
  }

  double standard_error() const {
    if (count < 2) return 0.0;
    return std::sqrt(m2 / static_cast<double>(count - 1) / static_cast<double>(count));
  }
};

struct WalkContext {
  unsigned n;
  unsigned c;
  double gamma;
  const std::vector<double>* b;
  const Eigen::MatrixXd* weights;
  const NoiseModel* noise;
};

template <class Sampler>
double walk_contribution(node_index start, const WalkContext& ctx, const Sampler& sampler, SplitMix64& rng) {
  const std::vector<double>& b = *ctx.b;
  double total = b[start];
  double w = 1.0;
  node_index node = start;
  for (unsigned s = 1; s <= ctx.c; ++s) {
    node_index next = sampler.next(node, rng);
    if (ctx.noise) next = apply_readout_noise(next, ctx.n, *ctx.noise, rng);
    w *= ctx.weights ? (*ctx.weights)(node, next) : ctx.gamma;
    total += w * b[next];
    node = next;
  }
  return total;
}

}  // namespace detail

/// Estimator bound to one system and sampler. The sampler (which may hold
/// simulated rows for every start node) is built once and reused.
class MonteCarloSolver {
 public:
  static constexpr std::uint64_t kBlockWalks = 4096;

  MonteCarloSolver(const LinearSystem& sys, SamplerKind kind)
      : sys_(sys), kind_(kind), sampler_(make_sampler(sys, kind)) {}
  MonteCarloSolver(LinearSystem&&, SamplerKind) = delete;

  const LinearSystem& system() const { return sys_; }
  SamplerKind sampler_kind() const { return kind_; }

  EstimateResult estimate(const NodeState& component, const SolveConfig& cfg) const {
    const node_index c = component.index();
    return std::move(estimate_many(std::span<const node_index>(&c, 1), component.width(), cfg).front());
  }

  std::vector<EstimateResult> estimate_all(const SolveConfig& cfg) const {
    std::vector<node_index> comps(sys_.dim());
    for (node_index i = 0; i < comps.size(); ++i) comps[i] = i;
    return estimate_many(comps, sys_.n(), cfg);
  }

  std::vector<EstimateResult> estimate_many(std::span<const node_index> comps, unsigned width, const SolveConfig& cfg) const {
    cfg.validate();
    if (cfg.sampler != kind_)
      throw ConfigError("solver was built for sampler " + to_string(kind_) + ", config requests " + to_string(cfg.sampler));
    if (width != sys_.n()) throw std::invalid_argument("component width does not match system n");
    for (node_index c : comps)
      if (c >= sys_.dim()) throw std::out_of_range("component " + std::to_string(c) + " out of range");

    const detail::WalkContext ctx{sys_.n(), cfg.c, sys_.gamma, &sys_.b, sys_.weights ? &*sys_.weights : nullptr,
                                  cfg.noise ? &*cfg.noise : nullptr};
    const std::uint64_t blocks = (cfg.n_s + kBlockWalks - 1) / kBlockWalks;
    const std::size_t per_component = static_cast<std::size_t>(cfg.runs * blocks);
    std::vector<detail::Moments> slots(comps.size() * per_component);

    std::visit(
        [&](const auto& sampler) {
          parallel_for(slots.size(), cfg.threads, [&](std::size_t task) {
            const std::size_t ci = task / per_component;
            const std::uint64_t run = (task % per_component) / blocks;
            const std::uint64_t block = task % blocks;
            const std::uint64_t run_key = derive_seed(cfg.seed, {comps[ci], run});
            const std::uint64_t first = block * kBlockWalks;
            const std::uint64_t last = std::min(cfg.n_s, first + kBlockWalks);
            detail::Moments m;
            for (std::uint64_t walk = first; walk < last; ++walk) {
              SplitMix64 rng(derive_seed(run_key, {walk}));
              m.add(detail::walk_contribution(comps[ci], ctx, sampler, rng));
            }
            slots[task] = m;
          });
        },
        sampler_);

    std::vector<EstimateResult> out;
    out.reserve(comps.size());
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
      EstimateResult r;
      r.component = comps[ci];
      r.seed = cfg.seed;
      detail::Moments all;
      for (unsigned run = 0; run < cfg.runs; ++run) {
        detail::Moments rm;
        for (std::uint64_t block = 0; block < blocks; ++block) rm.merge(slots[ci * per_component + run * blocks + block]);
        r.run_estimates.push_back(rm.mean);
        r.run_standard_errors.push_back(rm.standard_error());
        all.merge(rm);
      }
      r.estimate = all.mean;
      r.standard_error = all.standard_error();
      r.walks = all.count;
      out.push_back(std::move(r));
    }
    return out;
  }

 private:
  const LinearSystem& sys_;
  SamplerKind kind_;
  AnySampler sampler_;
};

inline EstimateResult estimate_component(const NodeState& component, const LinearSystem& sys, const SolveConfig& cfg) {
  return MonteCarloSolver(sys, cfg.sampler).estimate(component, cfg);
}

inline std::vector<EstimateResult> estimate_vector(const LinearSystem& sys, const SolveConfig& cfg) {
  return MonteCarloSolver(sys, cfg.sampler).estimate_all(cfg);
}

}  // namespace qwalk
