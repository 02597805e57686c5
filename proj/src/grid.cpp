#include "persuasion/grid.hpp"

#include <algorithm>
#include <cmath>

namespace persuasion {

namespace {

void compositions(int total, std::size_t slots, std::vector<int>& current,
                  std::vector<std::vector<int>>& out) {
  if (current.size() + 1 == slots) {
    current.push_back(total);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int k = 0; k <= total; ++k) {
    current.push_back(k);
    compositions(total - k, slots, current, out);
    current.pop_back();
  }
}

}  // namespace

BeliefGrid BeliefGrid::binary_step(double step) {
  if (step <= 0.0 || step > 1.0)
    fail(ErrorCode::InvalidArgument, "grid step must lie in (0, 1]");
  const double inv = 1.0 / step;
  const long n = std::lround(inv);
  if (n < 1 || std::abs(inv - static_cast<double>(n)) > 1e-9 * inv)
    fail(ErrorCode::InvalidArgument,
         "grid step must divide 1 (got " + std::to_string(step) + ")");
  std::vector<double> pts(static_cast<std::size_t>(n) + 1);
  for (long i = 0; i <= n; ++i)
    pts[static_cast<std::size_t>(i)] = static_cast<double>(i) / static_cast<double>(n);
  BeliefGrid g;
  g.states_ = 2;
  g.scalar_points_ = std::move(pts);
  g.descriptor_ = "binary step=" + std::to_string(step);
  return g;
}

BeliefGrid BeliefGrid::binary_points(std::vector<double> points) {
  if (points.empty()) fail(ErrorCode::InvalidArgument, "grid needs at least one point");
  for (double x : points)
    if (x < 0.0 || x > 1.0)
      fail(ErrorCode::InvalidArgument,
           "grid point " + std::to_string(x) + " outside [0,1]");
  if (!std::is_sorted(points.begin(), points.end(),
                      [](double a, double b) { return a < b; }) ||
      std::adjacent_find(points.begin(), points.end()) != points.end())
    fail(ErrorCode::InvalidArgument, "binary grid points must be strictly increasing");
  BeliefGrid g;
  g.states_ = 2;
  g.scalar_points_ = std::move(points);
  g.descriptor_ = "binary points n=" + std::to_string(g.scalar_points_.size());
  return g;
}

BeliefGrid BeliefGrid::simplex_mesh(std::size_t states, int resolution) {
  if (states < 3)
    fail(ErrorCode::InvalidArgument, "simplex mesh is for 3 or more states");
  if (resolution < 1) fail(ErrorCode::InvalidArgument, "mesh resolution must be >= 1");
  BeliefGrid g;
  g.states_ = states;
  g.resolution_ = resolution;
  std::vector<std::vector<int>> comps;
  std::vector<int> cur;
  compositions(resolution, states, cur, comps);
  std::sort(comps.begin(), comps.end());
  for (const auto& c : comps) {
    std::vector<double> coords(states);
    for (std::size_t k = 0; k < states; ++k)
      coords[k] = static_cast<double>(c[k]) / resolution;
    g.mesh_.push_back(std::move(coords));
  }
  g.descriptor_ = "mesh states=" + std::to_string(states) +
                  " resolution=" + std::to_string(resolution);
  return g;
}

std::size_t BeliefGrid::size() const {
  return states_ == 2 ? scalar_points_.size() : mesh_.size();
}

const std::vector<double>& BeliefGrid::scalar_points() const {
  if (states_ != 2)
    fail(ErrorCode::InvalidArgument, "scalar points exist for binary grids only");
  return scalar_points_;
}

Belief BeliefGrid::point(std::size_t i) const {
  if (i >= size()) fail(ErrorCode::InvalidArgument, "grid index out of range");
  if (states_ == 2) return Belief::binary(scalar_points_[i]);
  return Belief(mesh_[i]);
}

std::vector<Belief> BeliefGrid::points() const {
  std::vector<Belief> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(point(i));
  return out;
}

std::size_t BeliefGrid::find(const Belief& b) const {
  if (b.num_states() != states_) return npos;
  if (states_ == 2) {
    const double x = b.scalar();
    for (std::size_t i = 0; i < scalar_points_.size(); ++i)
      if (std::abs(scalar_points_[i] - x) <= 1e-9) return i;
    return npos;
  }
  for (std::size_t i = 0; i < mesh_.size(); ++i) {
    bool hit = true;
    for (std::size_t k = 0; k < states_ && hit; ++k)
      hit = std::abs(mesh_[i][k] - b[k]) <= 1e-9;
    if (hit) return i;
  }
  return npos;
}

bool BeliefGrid::contains_in_hull(const Belief& b) const {
  if (b.num_states() != states_) return false;
  if (states_ == 2) {
    const double x = b.scalar();
    return x >= scalar_points_.front() - 1e-12 && x <= scalar_points_.back() + 1e-12;
  }
  return true;  // the mesh spans the whole simplex
}

}  // namespace persuasion
