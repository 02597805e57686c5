#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "persuasion/config.hpp"
#include "persuasion/lattice.hpp"

namespace persuasion {

// Sequential game on a finite poset: agents 0..n move a token downward, the
// final position pays w_i.  Agent 0 moves first from `start`; an empty
// start means every element is reachable (virtual top).
struct PosetGame {
  std::size_t size = 0;
  OrderBitMatrix order;  // row i = down-set of element i (reflexive)
  std::vector<std::vector<double>> utilities;  // utilities[agent][element]
  std::optional<std::size_t> start;
};

struct PosetValue {
  double value = 0.0;
  std::size_t argmax = 0;
  std::vector<std::vector<char>> feasible;  // feasible[i] = X_{i+1} mask
};

// Audits the relation (reflexive, antisymmetric, transitive), then runs
// the recursion X_{n+1} = X, X_i = {x in X_{i+1} : every x' in X_{i+1}
// below x has w_i(x) >= w_i(x') - eps}; the value is max w_0 over X_1
// restricted to the start's down-set.
PosetValue poset_game_value(const PosetGame& game, double eps,
                            const SolverConfig& config = SolverConfig::defaults());

// Independent oracle: explicit backward induction over the move tree with
// refined tie-breaking (stay put when staying is within eps of the best
// continuation, otherwise take the exactly-best move, lowest index first).
double verify_backward_induction(const PosetGame& game, double eps,
                                 const SolverConfig& config = SolverConfig::defaults());

void audit_partial_order(const OrderBitMatrix& order);

}  // namespace persuasion
