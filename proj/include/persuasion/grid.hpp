#pragma once

#include <string>
#include <vector>

#include "persuasion/belief.hpp"

namespace persuasion {

// Finite discretization of the belief simplex.  Two states: an increasing
// list of state-1 probabilities.  Three or more: the mesh of all beliefs
// with coordinates k/resolution.
class BeliefGrid {
 public:
  static BeliefGrid binary_step(double step);
  static BeliefGrid binary_points(std::vector<double> points);
  static BeliefGrid simplex_mesh(std::size_t states, int resolution);

  std::size_t num_states() const { return states_; }
  std::size_t size() const;
  const std::string& descriptor() const { return descriptor_; }

  // Binary scalar points, ascending.
  const std::vector<double>& scalar_points() const;
  int mesh_resolution() const { return resolution_; }

  Belief point(std::size_t i) const;
  std::vector<Belief> points() const;

  // Index of a belief that coincides with a grid point (tolerance 1e-9),
  // or npos.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t find(const Belief& b) const;

  bool contains_in_hull(const Belief& b) const;

 private:
  BeliefGrid() = default;

  std::size_t states_ = 2;
  int resolution_ = 0;                  // >= 3 states
  std::vector<double> scalar_points_;   // 2 states
  std::vector<std::vector<double>> mesh_;  // >= 3 states
  std::string descriptor_;
};

}  // namespace persuasion
