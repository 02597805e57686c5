#pragma once

#include <vector>

#include "persuasion/belief.hpp"
#include "persuasion/config.hpp"
#include "persuasion/grid.hpp"
#include "persuasion/utility.hpp"

namespace persuasion {

// Lower hull of 2-D points (x ascending, distinct) as a piecewise-linear
// function; evaluation outside [front, back] is a domain error.
class LowerHull1D {
 public:
  LowerHull1D(std::vector<double> xs, std::vector<double> ys);
  double operator()(double x) const;
  double min_x() const { return xs_.front(); }
  double max_x() const { return xs_.back(); }

 private:
  std::vector<double> xs_, ys_;  // hull vertices
};

// min over convex weights alpha with sum alpha_k q_k = query of
// sum alpha_k value_k.  Binary states use the direct lower hull; general
// states solve the small LP.
double lower_convex_envelope(const std::vector<ValueAtBelief>& points,
                             const Belief& query,
                             const SolverConfig& config = SolverConfig::defaults());

// LP route, kept callable on binary inputs for cross-checking the hull.
double lower_convex_envelope_lp(const std::vector<ValueAtBelief>& points,
                                const Belief& query,
                                const SolverConfig& config = SolverConfig::defaults());

// Value at p of the upper concave envelope of u restricted to grid points.
double concavify_unconstrained(const UtilityFunction& u, const BeliefGrid& grid,
                               const Belief& p,
                               const SolverConfig& config = SolverConfig::defaults());

// Binary helper reused by the solvers and the sweep: the upper hull of
// (grid point, u(grid point)) as a function object.
LowerHull1D upper_concave_hull(const UtilityFunction& u, const BeliefGrid& grid);

}  // namespace persuasion
