#include "persuasion/convex_order.hpp"

#include <algorithm>
#include <cmath>

namespace persuasion {

bool is_contraction(const FiniteBeliefDistribution& nu,
                    const FiniteBeliefDistribution& mu, double tol,
                    const SolverConfig& config) {
  if (nu.num_states() != mu.num_states())
    fail(ErrorCode::DimensionMismatch,
         "contraction check needs matching state counts");
  const std::size_t k1 = nu.size(), k2 = mu.size();
  const std::size_t states = nu.num_states();
  const std::size_t vars = k1 * k2;
  auto var = [k2](std::size_t i, std::size_t j) { return i * k2 + j; };

  std::vector<std::vector<double>> A;
  std::vector<double> b;
  // Row sums = nu weights.
  for (std::size_t i = 0; i < k1; ++i) {
    std::vector<double> row(vars, 0.0);
    for (std::size_t j = 0; j < k2; ++j) row[var(i, j)] = 1.0;
    A.push_back(std::move(row));
    b.push_back(nu.weights()[i]);
  }
  // Column sums = mu weights.
  for (std::size_t j = 0; j < k2; ++j) {
    std::vector<double> row(vars, 0.0);
    for (std::size_t i = 0; i < k1; ++i) row[var(i, j)] = 1.0;
    A.push_back(std::move(row));
    b.push_back(mu.weights()[j]);
  }
  // Martingale condition, coordinatewise (last coordinate is redundant
  // given the row sums).
  for (std::size_t i = 0; i < k1; ++i) {
    for (std::size_t d = 0; d + 1 < states; ++d) {
      std::vector<double> row(vars, 0.0);
      for (std::size_t j = 0; j < k2; ++j) row[var(i, j)] = mu.support()[j][d];
      A.push_back(std::move(row));
      b.push_back(nu.weights()[i] * nu.support()[i][d]);
    }
  }

  SolverConfig cfg = config;
  cfg.feasibility_tol = tol;
  return check_feasible(A, b, cfg);
}

template <class S>
bool scalar_convex_order_leq(const std::vector<S>& nu_points,
                             const std::vector<S>& nu_weights,
                             const std::vector<S>& mu_points,
                             const std::vector<S>& mu_weights, const S& tol) {
  S mean_nu{}, mean_mu{};
  for (std::size_t i = 0; i < nu_points.size(); ++i)
    mean_nu += nu_weights[i] * nu_points[i];
  for (std::size_t j = 0; j < mu_points.size(); ++j)
    mean_mu += mu_weights[j] * mu_points[j];
  S gap = mean_nu - mean_mu;
  if (gap < S(0)) gap = S(-gap);
  if (gap > tol) return false;

  auto upper_tail = [](const std::vector<S>& xs, const std::vector<S>& ws, const S& t) {
    S acc{};
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (xs[i] > t) acc += ws[i] * (xs[i] - t);
    return acc;
  };

  // E[(x-t)+] is piecewise linear in t with kinks at the support points, so
  // dominance at every kink decides dominance everywhere.
  for (const auto* kinks : {&nu_points, &mu_points})
    for (const S& t : *kinks)
      if (upper_tail(nu_points, nu_weights, t) >
          upper_tail(mu_points, mu_weights, t) + tol)
        return false;
  return true;
}

template bool scalar_convex_order_leq<double>(const std::vector<double>&,
                                              const std::vector<double>&,
                                              const std::vector<double>&,
                                              const std::vector<double>&,
                                              const double&);
template bool scalar_convex_order_leq<Rational>(const std::vector<Rational>&,
                                                const std::vector<Rational>&,
                                                const std::vector<Rational>&,
                                                const std::vector<Rational>&,
                                                const Rational&);

bool is_contraction_1d(const FiniteBeliefDistribution& nu,
                       const FiniteBeliefDistribution& mu,
                       const SolverConfig& config) {
  if (nu.num_states() != 2 || mu.num_states() != 2)
    fail(ErrorCode::InvalidArgument, "is_contraction_1d needs binary states");
  std::vector<double> nx, mx;
  for (const Belief& b : nu.support()) nx.push_back(b.scalar());
  for (const Belief& b : mu.support()) mx.push_back(b.scalar());
  return scalar_convex_order_leq<double>(nx, nu.weights(), mx, mu.weights(),
                                         config.feasibility_tol);
}

FiniteBeliefDistribution full_information_distribution(const Prior& prior) {
  const std::size_t states = prior.belief.num_states();
  std::vector<Belief> support;
  std::vector<double> weights;
  for (std::size_t k = 0; k < states; ++k) {
    if (prior.belief[k] <= 0.0) continue;
    std::vector<double> vertex(states, 0.0);
    vertex[k] = 1.0;
    support.push_back(Belief(std::move(vertex)));
    weights.push_back(prior.belief[k]);
  }
  return FiniteBeliefDistribution(std::move(support), std::move(weights));
}

}  // namespace persuasion
