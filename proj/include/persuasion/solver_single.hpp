#pragma once

#include <vector>

#include "persuasion/belief.hpp"
#include "persuasion/config.hpp"
#include "persuasion/domination.hpp"
#include "persuasion/grid.hpp"
#include "persuasion/utility.hpp"

namespace persuasion {

struct SingleSolveResult {
  double value = 0.0;
  std::vector<Belief> posteriors;  // one (no information) or two points
  std::vector<double> weights;
  bool used_no_information = false;
};

// Constrained concavification over grid pairs that are affine dominating
// with respect to the mediator's utility; the no-information split is
// always feasible.  Ties prefer fewer posteriors, then the lexicographically
// smallest pair.
SingleSolveResult solve_single(const UtilityFunction& v_sender,
                               const UtilityFunction& v_mediator, const Belief& prior,
                               const BeliefGrid& grid,
                               const DominationOptions& opt = {});

// Shared-table sweep over many priors.
std::vector<std::pair<double, double>> sweep_single(
    const UtilityFunction& v_sender, const UtilityFunction& v_mediator,
    const BeliefGrid& prior_grid, const BeliefGrid& grid,
    const DominationOptions& opt = {});

struct MembershipResult {
  bool member = true;
  double utility = 0.0;             // E_mu[v]
  double best_deviation_value = 0.0;  // max over grid-supported contractions
  std::vector<double> deviation_weights;  // over grid points
};

// Does no grid-supported contraction of mu improve the mediator's utility
// by more than eps?  One LP: transport variables with column-mean
// constraints.
MembershipResult membership_M_eps(const FiniteBeliefDistribution& mu,
                                  const UtilityFunction& v_mediator,
                                  const BeliefGrid& grid, double eps,
                                  const SolverConfig& config = SolverConfig::defaults());

}  // namespace persuasion
