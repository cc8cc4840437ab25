// A quantum walk whose CNOTs run from the highest qubit down is the
// classical walk seen through the Gray code.

#include <cstdio>
#include <numbers>

#include "qwalk/qwalk.hpp"

int main() {
  using namespace qwalk;
  const auto coins = coins_from_thetas({std::numbers::pi / 3, 1.0, 2.5});
  const auto quantum = build_transition_matrix(make_walk(WalkKind::quantum, coins, 1, BitOrder::descending));
  const auto classical = build_transition_matrix(make_walk(WalkKind::classical, coins));

  double dev = 0.0;
  for (node_index a = 0; a < quantum.dim(); ++a)
    for (node_index b = 0; b < quantum.dim(); ++b)
      dev = std::max(dev, std::abs(quantum(a, b) - classical(bits::gray_encode(a), bits::gray_encode(b))));
  std::printf("max |Q(a,b) - C(g(a),g(b))| = %.3g\n", dev);

  const bool q_factors = kronecker_factorize(quantum.entries).has_value();
  const bool c_factors = kronecker_factorize(classical.entries).has_value();
  std::printf("Kronecker factorisable: classical %s, quantum %s\n", c_factors ? "yes" : "no", q_factors ? "yes" : "no");
}
