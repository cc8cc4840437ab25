#pragma once

// Random test systems and convergence sweeps (relative error vs n_s).

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qwalk/mc_solver.hpp"
#include "qwalk/oracle.hpp"
#include "qwalk/system_io.hpp"

namespace qwalk {

struct GenerateOptions {
  unsigned n = 4;
  unsigned q = 1;
  double gamma = 0.3;
  BitOrder order = BitOrder::ascending;
  WalkKind kind = WalkKind::quantum;
  std::uint64_t seed = 0;
  /// When set, also draw a symmetric v in [-1, 1] rescaled so rho(P o v)
  /// equals this value.
  std::optional<double> weight_radius;
};

/// theta_l ~ U[0, pi]; phi_l, lambda_l ~ U[0, pi] when q >= 2, else 0;
/// b_I ~ U[-1, 1]. Deterministic in the seed on every platform.
inline LinearSystem generate_system(const GenerateOptions& opt) {
  SplitMix64 rng(derive_seed(opt.seed, {0x67656e}));
  std::vector<CoinParams> coins(opt.n);
  for (auto& c : coins) {
    c.theta = rng.uniform(0.0, std::numbers::pi);
    if (opt.q >= 2) {
      c.phi = rng.uniform(0.0, std::numbers::pi);
      c.lambda = rng.uniform(0.0, std::numbers::pi);
    }
  }
  WalkSpec spec = make_walk(opt.kind, std::move(coins), opt.q, opt.order);
  std::vector<double> b(spec.dim());
  for (auto& x : b) x = rng.uniform(-1.0, 1.0);
  if (!opt.weight_radius) return build_system(std::move(spec), opt.gamma, std::move(b));

  const node_index dim = spec.dim();
  Eigen::MatrixXd v(dim, dim);
  for (node_index r = 0; r < dim; ++r)
    for (node_index c = r; c < dim; ++c) v(r, c) = v(c, r) = rng.uniform(-1.0, 1.0);
  const double rho = spectral_radius(build_transition_matrix(spec).entries.cwiseProduct(v));
  if (rho == 0.0) throw ConfigError("generate_system: weight draw has zero spectral radius");
  v *= *opt.weight_radius / rho;
  return build_system(std::move(spec), opt.gamma, std::move(b), std::move(v));
}

struct ConvergenceConfig {
  std::vector<std::uint64_t> schedule{100, 1000, 10000, 100000};
  unsigned runs = 10;
  /// nullopt: average the relative error over every component.
  std::optional<node_index> component = 0;
  /// c, seed, sampler, noise and threads are taken from here.
  SolveConfig solve;

  void validate() const {
    if (schedule.empty()) throw ConfigError("convergence schedule is empty");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
      if (schedule[i] < 1) throw ConfigError("convergence schedule entries must be >= 1");
      if (i && schedule[i] <= schedule[i - 1]) throw ConfigError("convergence schedule must be strictly increasing");
    }
    if (runs < 1) throw ConfigError("runs must be >= 1");
  }
};

struct ConvergenceRow {
  std::uint64_t n_s = 0;
  double mean_rel_error = 0.0;
  double std_rel_error = 0.0;
  unsigned runs = 0;
};

/// Exact solution of the full (untruncated) system.
inline std::vector<double> exact_solution(const LinearSystem& sys) {
  require_dense(sys.n());
  return direct_solve(dense_system(sys));
}

/// For each n_s, `runs` independent solves (seed derived from the schedule
/// position and the run index); relative error against `exact`.
inline std::vector<ConvergenceRow> run_convergence(const LinearSystem& sys, const ConvergenceConfig& cc,
                                                   const std::vector<double>& exact) {
  cc.validate();
  if (exact.size() != sys.dim()) throw std::invalid_argument("run_convergence: reference has wrong length");
  if (cc.component && *cc.component >= sys.dim()) throw std::out_of_range("run_convergence: component out of range");
  const MonteCarloSolver solver(sys, cc.solve.sampler);
  std::vector<ConvergenceRow> rows;
  for (std::size_t i = 0; i < cc.schedule.size(); ++i) {
    std::vector<double> errs;
    for (unsigned r = 0; r < cc.runs; ++r) {
      SolveConfig cfg = cc.solve;
      cfg.n_s = cc.schedule[i];
      cfg.runs = 1;
      cfg.seed = derive_seed(cc.solve.seed, {i, r});
      double err = 0.0;
      if (cc.component) {
        const auto est = solver.estimate(NodeState(*cc.component, sys.n()), cfg);
        const auto rel = relative_error(est.estimate, exact[*cc.component]);
        if (!rel) throw std::domain_error("relative error undefined: exact component is zero");
        err = *rel;
      } else {
        const auto ests = solver.estimate_all(cfg);
        std::size_t used = 0;
        for (const auto& e : ests)
          if (const auto rel = relative_error(e.estimate, exact[e.component])) err += *rel, ++used;
        if (!used) throw std::domain_error("relative error undefined: exact solution is zero");
        err /= static_cast<double>(used);
      }
      errs.push_back(err);
    }
    ConvergenceRow row{cc.schedule[i], 0.0, 0.0, cc.runs};
    for (double e : errs) row.mean_rel_error += e;
    row.mean_rel_error /= static_cast<double>(errs.size());
    if (errs.size() > 1) {
      double ss = 0.0;
      for (double e : errs) ss += (e - row.mean_rel_error) * (e - row.mean_rel_error);
      row.std_rel_error = std::sqrt(ss / static_cast<double>(errs.size() - 1));
    }
    rows.push_back(row);
  }
  return rows;
}

inline std::vector<ConvergenceRow> run_convergence(const LinearSystem& sys, const ConvergenceConfig& cc) {
  return run_convergence(sys, cc, exact_solution(sys));
}

inline std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
  std::string out = "n_s,mean_rel_error,std_rel_error,runs\n";
  for (const auto& r : rows)
    out += std::to_string(r.n_s) + ',' + format_double(r.mean_rel_error) + ',' + format_double(r.std_rel_error) + ',' +
           std::to_string(r.runs) + '\n';
  return out;
}

/// Least-squares slope of log(mean_rel_error) against log(n_s).
inline double loglog_slope(const std::vector<ConvergenceRow>& rows) {
  if (rows.size() < 2) throw std::invalid_argument("loglog_slope: need at least two rows");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rows) {
    const double x = std::log(static_cast<double>(r.n_s)), y = std::log(r.mean_rel_error);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  const double k = static_cast<double>(rows.size());
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace qwalk
