// Estimate one component of (1 - gamma P)^{-1} b with a quantum walk and
// compare it with the dense solution.

#include <cstdio>

#include "qwalk/qwalk.hpp"

int main() {
  qwalk::GenerateOptions gen;
  gen.n = 6;
  gen.q = 2;
  gen.gamma = 0.3;
  gen.seed = 7;
  const qwalk::LinearSystem sys = qwalk::generate_system(gen);

  qwalk::SolveConfig cfg;
  cfg.c = qwalk::plan_steps(sys.gamma, 1e-3);
  cfg.n_s = 100000;
  cfg.seed = 1;
  cfg.sampler = qwalk::SamplerKind::quantum_simulated;

  const qwalk::NodeState component(5, sys.n());
  const auto result = qwalk::estimate_component(component, sys, cfg);
  const auto exact = qwalk::exact_solution(sys);

  std::printf("c = %u, walks = %llu\n", cfg.c, static_cast<unsigned long long>(result.walks));
  std::printf("x_5 estimate %.6f +- %.6f, exact %.6f\n", result.estimate, result.standard_error, exact[5]);
  std::printf("condition number %.4f\n", qwalk::condition_number(sys.dense_a()));
}
