#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "persuasion/belief.hpp"
#include "persuasion/config.hpp"
#include "persuasion/grid.hpp"
#include "persuasion/utility.hpp"

namespace persuasion {

struct DominationOptions {
  double step = 1e-3;       // chord sampling step on closed-form pieces
  double tolerance = 1e-9;  // weak inequality margin
  std::size_t clique_cap = 10000;
};

// A domination check bundled as data (utility, collection, sampling step,
// tolerance).
struct DominationQuery {
  const UtilityFunction* utility = nullptr;
  std::vector<Belief> collection;
  double step = 1e-3;
  double tolerance = 1e-9;
};

struct PairCheck {
  bool dominating = true;
  double violating_point = 0.0;  // where the graph pokes above the chord
  double gap = 0.0;
};

struct SetCheck {
  bool dominating = true;
  double violating_mean = 0.0;
  double gap = 0.0;
};

struct SupportFamily {
  std::vector<std::vector<std::size_t>> supports;  // grid-point index sets
  bool all_maximal = true;
};

// Binary chord test: the chord of u between a and b stays above u on [a, b]
// within the tolerance.  Linear and quadratic pieces are checked in closed
// form; cubic and higher sample at the step, cosine pieces at step/10.
PairCheck check_pair_scalar(const UtilityFunction& u, double a, double b,
                            const DominationOptions& opt = {});

// Affine domination of a collection of at most |states| beliefs.
bool check_collection(const UtilityFunction& u, const std::vector<Belief>& beliefs,
                      const DominationOptions& opt = {});

inline bool run(const DominationQuery& q) {
  DominationOptions opt{q.step, q.tolerance, SolverConfig::defaults().clique_cap};
  return check_collection(*q.utility, q.collection, opt);
}

// Set-level domination: the lower convex envelope of {(q, u(q))} dominates
// u at every mean-grid point inside the hull.
SetCheck check_set_detail(const UtilityFunction& u, const std::vector<Belief>& points,
                          const BeliefGrid& mean_grid, const DominationOptions& opt = {});
bool check_set(const UtilityFunction& u, const std::vector<Belief>& points,
               const BeliefGrid& mean_grid, const DominationOptions& opt = {});

// Binary cross-check route: all support pairs pass check_collection.
bool check_set_via_pairs(const UtilityFunction& u, const std::vector<Belief>& points,
                         const DominationOptions& opt = {});

// All grid points q2 forming a dominating pair with q1; sorted ascending.
std::vector<Belief> dominating_partners(const UtilityFunction& u, const Belief& q1,
                                        const BeliefGrid& grid,
                                        const DominationOptions& opt = {});

// Symmetric pair-domination table over binary grid points.
std::vector<std::vector<char>> pair_domination_table(const UtilityFunction& u,
                                                     const std::vector<double>& points,
                                                     const DominationOptions& opt = {});

// Maximal cliques of the pair-domination graph; for binary states those are
// exactly the maximal affine-dominating supports.
SupportFamily maximal_dominating_supports(const UtilityFunction& u,
                                          const BeliefGrid& grid,
                                          const DominationOptions& opt = {});

}  // namespace persuasion
