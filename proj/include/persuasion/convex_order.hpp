#pragma once

#include <vector>

#include "persuasion/belief.hpp"
#include "persuasion/config.hpp"
#include "persuasion/lp.hpp"

namespace persuasion {

// True iff nu is a mean-preserving contraction of mu (nu precedes mu in the
// convex order).  Decided by the feasibility of a martingale coupling:
// nonnegative pi(i,j) with row sums = nu weights, column sums = mu weights,
// and sum_j pi(i,j) y_j = nu_i x_i coordinatewise for each nu point x_i.
bool is_contraction(const FiniteBeliefDistribution& nu,
                    const FiniteBeliefDistribution& mu, double tol,
                    const SolverConfig& config = SolverConfig::defaults());

inline bool is_contraction(const FiniteBeliefDistribution& nu,
                           const FiniteBeliefDistribution& mu) {
  return is_contraction(nu, mu, SolverConfig::defaults().feasibility_tol);
}

// Binary-state fast path: equal means and dominance of E[(x-t)+] at every
// kink.  Agrees with the transport LP on all binary inputs.
bool is_contraction_1d(const FiniteBeliefDistribution& nu,
                       const FiniteBeliefDistribution& mu,
                       const SolverConfig& config = SolverConfig::defaults());

// Scalar kernel behind is_contraction_1d, reused by the lattice with exact
// arithmetic.  Supports are state-1 probabilities.
template <class S>
bool scalar_convex_order_leq(const std::vector<S>& nu_points,
                             const std::vector<S>& nu_weights,
                             const std::vector<S>& mu_points,
                             const std::vector<S>& mu_weights, const S& tol);

// Belief distribution induced by observing the state: mass p_k on the k-th
// simplex vertex.
FiniteBeliefDistribution full_information_distribution(const Prior& prior);

extern template bool scalar_convex_order_leq<double>(
    const std::vector<double>&, const std::vector<double>&,
    const std::vector<double>&, const std::vector<double>&, const double&);
extern template bool scalar_convex_order_leq<Rational>(
    const std::vector<Rational>&, const std::vector<Rational>&,
    const std::vector<Rational>&, const std::vector<Rational>&, const Rational&);

}  // namespace persuasion
