#include "persuasion/belief.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace persuasion {

Belief::Belief(std::vector<double> coords, const SolverConfig& config)
    : coords_(std::move(coords)) {
  if (coords_.size() < 2)
    fail(ErrorCode::InvalidArgument, "belief needs at least 2 states, got " +
                                         std::to_string(coords_.size()));
  double sum = 0.0;
  for (double& c : coords_) {
    if (c < -config.belief_sum_tol)
      fail(ErrorCode::InvalidArgument,
           "belief coordinate " + std::to_string(c) + " is negative");
    if (c < 0.0) c = 0.0;
    sum += c;
  }
  if (std::abs(sum - 1.0) > config.belief_sum_tol)
    fail(ErrorCode::InvalidArgument,
         "belief coordinates sum to " + std::to_string(sum) + ", not 1");
}

Belief Belief::binary(double x, const SolverConfig& config) {
  return Belief({1.0 - x, x}, config);
}

double Belief::scalar() const {
  if (coords_.size() != 2)
    fail(ErrorCode::InvalidArgument,
         "scalar view is defined for binary beliefs only");
  return coords_[1];
}

FiniteBeliefDistribution::FiniteBeliefDistribution(std::vector<Belief> support,
                                                   std::vector<double> weights,
                                                   const SolverConfig& config) {
  if (support.size() != weights.size())
    fail(ErrorCode::DimensionMismatch,
         "distribution has " + std::to_string(support.size()) + " points but " +
             std::to_string(weights.size()) + " weights");
  if (support.empty())
    fail(ErrorCode::InvalidArgument, "distribution needs a nonempty support");
  const std::size_t states = support[0].num_states();
  double total = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i].num_states() != states)
      fail(ErrorCode::DimensionMismatch, "support points disagree on state count");
    if (weights[i] < -config.belief_sum_tol)
      fail(ErrorCode::InvalidArgument,
           "weight " + std::to_string(weights[i]) + " is negative");
    total += weights[i];
  }
  if (std::abs(total - 1.0) > config.belief_sum_tol)
    fail(ErrorCode::InvalidArgument,
         "weights sum to " + std::to_string(total) + ", not 1");

  std::vector<std::size_t> idx(support.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return support[a] < support[b];
  });

  for (std::size_t i : idx) {
    if (weights[i] <= 0.0) continue;
    if (!support_.empty() && support_.back() == support[i]) {
      weights_.back() += weights[i];
    } else {
      support_.push_back(support[i]);
      weights_.push_back(weights[i]);
    }
  }
  if (support_.empty())
    fail(ErrorCode::InvalidArgument, "distribution has no positive-weight point");
}

FiniteBeliefDistribution FiniteBeliefDistribution::point_mass(const Belief& b) {
  return FiniteBeliefDistribution({b}, {1.0});
}

FiniteBeliefDistribution FiniteBeliefDistribution::binary(
    const std::vector<double>& points, const std::vector<double>& weights) {
  std::vector<Belief> support;
  support.reserve(points.size());
  for (double x : points) support.push_back(Belief::binary(x));
  return FiniteBeliefDistribution(std::move(support), weights);
}

Belief FiniteBeliefDistribution::mean() const {
  std::vector<double> acc(num_states(), 0.0);
  for (std::size_t i = 0; i < support_.size(); ++i)
    for (std::size_t k = 0; k < acc.size(); ++k)
      acc[k] += weights_[i] * support_[i][k];
  // Renormalize away rounding; the accumulated sum is 1 + O(eps).
  double sum = std::accumulate(acc.begin(), acc.end(), 0.0);
  for (double& c : acc) c /= sum;
  return Belief(std::move(acc));
}

bool FiniteBeliefDistribution::operator==(const FiniteBeliefDistribution& other) const {
  return support_ == other.support_ && weights_ == other.weights_;
}

}  // namespace persuasion
