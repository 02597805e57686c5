#pragma once

#include <optional>
#include <string>
#include <vector>

#include "persuasion/belief.hpp"
#include "persuasion/config.hpp"
#include "persuasion/domination.hpp"
#include "persuasion/grid.hpp"
#include "persuasion/lattice.hpp"
#include "persuasion/poset_game.hpp"
#include "persuasion/utility.hpp"

namespace persuasion {

// Sender, ordered mediators, prior, lattice parameters.  n = 0 means direct
// persuasion (unconstrained concavification).
struct ChainProblem {
  UtilityFunction sender;
  std::vector<UtilityFunction> mediators;
  Prior prior;
  BeliefGrid grid;
  int denominator = 1;
  double eps = 0.0;
};

struct ExclusionWitness {
  std::size_t element = 0;
  std::size_t level = 0;    // 1-based mediator index whose check failed
  std::size_t witness = 0;  // the profitable deviation
  double gain = 0.0;
};

// Per-level membership masks: masks[i] holds M_{i+1}, so masks[0] = M_1 and
// masks[n] = M_{n+1} = everything.
struct FeasibleSets {
  std::vector<std::vector<char>> masks;
  std::vector<ExclusionWitness> exclusions;

  std::size_t level_count(std::size_t i) const;
};

FeasibleSets compute_feasible_sets(const DistributionLattice& lattice,
                                   const std::vector<UtilityFunction>& mediators,
                                   double eps,
                                   const SolverConfig& config = SolverConfig::defaults());

struct ChainSolveResult {
  double value = 0.0;
  std::string value_exact;  // "p/q", rational mode only
  std::optional<FiniteBeliefDistribution> optimal;
  std::vector<std::size_t> feasible_counts;  // |M_1| .. |M_{n+1}|
  std::size_t lattice_elements = 0;
  std::size_t order_edges = 0;
  std::size_t optimal_index = static_cast<std::size_t>(-1);
  FeasibleSets sets;
  std::vector<std::string> warnings;
  bool used_lattice = false;
};

struct ChainSolveOptions {
  bool rational = false;
};

ChainSolveResult solve_chain(const ChainProblem& problem,
                             const ChainSolveOptions& options = {},
                             const SolverConfig& config = SolverConfig::defaults());

// The poset-game view of a chain instance: elements are lattice members,
// utilities are expected utilities, and every element is reachable by the
// sender (all lattice means equal the prior).
PosetGame chain_to_poset_game(const DistributionLattice& lattice,
                              const UtilityFunction& sender,
                              const std::vector<UtilityFunction>& mediators);

// Best expected sender value over lattice elements whose support is affine
// dominating with respect to every mediator utility (the guarantee that
// ignores the interplay of incentives).
double naive_all_domination_bound(const DistributionLattice& lattice,
                                  const UtilityFunction& sender,
                                  const std::vector<UtilityFunction>& mediators,
                                  const DominationOptions& opt = {});

}  // namespace persuasion
