#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "persuasion/config.hpp"
#include "persuasion/errors.hpp"

namespace persuasion {

// Point in the probability simplex over the states.  For two states the
// scalar identification with [0,1] (probability of state 1) is used by all
// grid and lattice machinery; this class is the coordinate view.
class Belief {
 public:
  explicit Belief(std::vector<double> coords,
                  const SolverConfig& config = SolverConfig::defaults());

  // Binary shortcut: probability x of state 1.
  static Belief binary(double x,
                       const SolverConfig& config = SolverConfig::defaults());

  std::size_t num_states() const { return coords_.size(); }
  const std::vector<double>& coords() const { return coords_; }
  double operator[](std::size_t k) const { return coords_[k]; }

  // Probability of state 1; only meaningful with two states.
  double scalar() const;

  bool operator==(const Belief& other) const { return coords_ == other.coords_; }
  // Canonical support order: lexicographic on coordinates read from the
  // last state down, which for binary beliefs is ascending in the state-1
  // probability.
  bool operator<(const Belief& other) const {
    return std::lexicographical_compare(coords_.rbegin(), coords_.rend(),
                                        other.coords_.rbegin(), other.coords_.rend());
  }

 private:
  std::vector<double> coords_;
};

// Finitely supported probability measure on beliefs.  Construction
// canonicalizes: support sorted lexicographically, duplicate points merged
// by summing weights, zero-weight points dropped.  Equality is structural.
class FiniteBeliefDistribution {
 public:
  FiniteBeliefDistribution(std::vector<Belief> support, std::vector<double> weights,
                           const SolverConfig& config = SolverConfig::defaults());

  static FiniteBeliefDistribution point_mass(const Belief& b);
  // Binary helper: support given as state-1 probabilities.
  static FiniteBeliefDistribution binary(const std::vector<double>& points,
                                         const std::vector<double>& weights);

  std::size_t size() const { return support_.size(); }
  std::size_t num_states() const { return support_.empty() ? 0 : support_[0].num_states(); }
  const std::vector<Belief>& support() const { return support_; }
  const std::vector<double>& weights() const { return weights_; }

  Belief mean() const;

  bool operator==(const FiniteBeliefDistribution& other) const;

 private:
  std::vector<Belief> support_;
  std::vector<double> weights_;
};

// The agents' common prior.
struct Prior {
  Belief belief;
};

}  // namespace persuasion
