#include "persuasion/solver_single.hpp"

#include <algorithm>
#include <cmath>

#include "persuasion/lp.hpp"

namespace persuasion {

namespace {

struct PairScan {
  double value;
  std::size_t i = 0, j = 0;
  bool pair = false;
};

// Best dominating chord through p, given the precomputed pair table.
PairScan best_pair(const std::vector<double>& pts,
                   const std::vector<double>& sender_values,
                   const std::vector<std::vector<char>>& dominating, double p,
                   double no_info_value) {
  PairScan best{no_info_value};
  const std::size_t m = pts.size();
  std::size_t j_start = 0;
  while (j_start < m && pts[j_start] <= p) ++j_start;
  for (std::size_t i = 0; i < m && pts[i] < p; ++i) {
    for (std::size_t j = j_start; j < m; ++j) {
      if (!dominating[i][j]) continue;
      const double alpha = (pts[j] - p) / (pts[j] - pts[i]);
      const double value = alpha * sender_values[i] + (1.0 - alpha) * sender_values[j];
      // Strict improvement keeps the earliest (lexicographically smallest)
      // candidate, and the no-information split on exact ties.
      if (value > best.value) best = PairScan{value, i, j, true};
    }
  }
  return best;
}

}  // namespace

SingleSolveResult solve_single(const UtilityFunction& v_sender,
                               const UtilityFunction& v_mediator, const Belief& prior,
                               const BeliefGrid& grid, const DominationOptions& opt) {
  if (prior.num_states() != 2 || grid.num_states() != 2)
    fail(ErrorCode::InvalidArgument, "solve_single handles binary states only");
  const double p = prior.scalar();
  if (!grid.contains_in_hull(prior))
    fail(ErrorCode::DomainError, "prior lies outside the hull of the grid");

  const std::vector<double>& pts = grid.scalar_points();
  std::vector<double> sender_values(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    sender_values[i] = v_sender.eval_scalar(pts[i]);
  const auto table = pair_domination_table(v_mediator, pts, opt);

  const double no_info = v_sender.eval_scalar(p);
  const PairScan best = best_pair(pts, sender_values, table, p, no_info);

  SingleSolveResult result;
  result.value = best.value;
  if (!best.pair) {
    result.used_no_information = true;
    result.posteriors = {Belief::binary(p)};
    result.weights = {1.0};
  } else {
    const double alpha = (pts[best.j] - p) / (pts[best.j] - pts[best.i]);
    result.posteriors = {Belief::binary(pts[best.i]), Belief::binary(pts[best.j])};
    result.weights = {alpha, 1.0 - alpha};
  }
  return result;
}

std::vector<std::pair<double, double>> sweep_single(
    const UtilityFunction& v_sender, const UtilityFunction& v_mediator,
    const BeliefGrid& prior_grid, const BeliefGrid& grid,
    const DominationOptions& opt) {
  const std::vector<double>& pts = grid.scalar_points();
  std::vector<double> sender_values(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    sender_values[i] = v_sender.eval_scalar(pts[i]);
  const auto table = pair_domination_table(v_mediator, pts, opt);

  std::vector<std::pair<double, double>> out;
  for (double p : prior_grid.scalar_points()) {
    if (p < pts.front() - 1e-12 || p > pts.back() + 1e-12)
      fail(ErrorCode::DomainError, "sweep prior outside the grid hull");
    const double no_info = v_sender.eval_scalar(p);
    out.emplace_back(p, best_pair(pts, sender_values, table, p, no_info).value);
  }
  return out;
}

MembershipResult membership_M_eps(const FiniteBeliefDistribution& mu,
                                  const UtilityFunction& v_mediator,
                                  const BeliefGrid& grid, double eps,
                                  const SolverConfig& config) {
  if (eps < 0.0) fail(ErrorCode::InvalidArgument, "eps must be nonnegative");
  for (const Belief& q : mu.support())
    if (!grid.contains_in_hull(q))
      fail(ErrorCode::DomainError, "mu is not supported within the grid hull");

  // Variables pi(i, j): mass of mu atom i pooled into grid point j.
  // Rows: sum_j pi(i,j) = mu_i, and for each j the barycenter condition
  // sum_i pi(i,j) (x_i - y_j) = 0 coordinatewise.  The induced deviation is
  // nu_j = sum_i pi(i,j); maximize E_nu[v].
  const std::size_t k = mu.size();
  const std::size_t m = grid.size();
  const std::size_t states = mu.num_states();
  const std::size_t vars = k * m;
  auto var = [m](std::size_t i, std::size_t j) { return i * m + j; };

  std::vector<Belief> grid_points = grid.points();
  LpProblem lp;
  lp.objective.assign(vars, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    const double v = v_mediator.eval(grid_points[j]);
    for (std::size_t i = 0; i < k; ++i) lp.objective[var(i, j)] = v;
  }
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<double> row(vars, 0.0);
    for (std::size_t j = 0; j < m; ++j) row[var(i, j)] = 1.0;
    lp.eq_matrix.push_back(std::move(row));
    lp.eq_rhs.push_back(mu.weights()[i]);
  }
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t d = 0; d + 1 < states; ++d) {
      std::vector<double> row(vars, 0.0);
      for (std::size_t i = 0; i < k; ++i)
        row[var(i, j)] = mu.support()[i][d] - grid_points[j][d];
      lp.eq_matrix.push_back(std::move(row));
      lp.eq_rhs.push_back(0.0);
    }
  }

  const LpResult res = solve_lp(lp, config);
  if (res.status != LpStatus::Optimal)
    fail(ErrorCode::NumericalStall,
         "deviation LP did not solve (transport system must be feasible)");

  MembershipResult out;
  out.utility = expected_utility(v_mediator, mu);
  out.best_deviation_value = res.value;
  out.deviation_weights.assign(m, 0.0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < m; ++j)
      out.deviation_weights[j] += res.solution[var(i, j)];
  out.member = res.value <= out.utility + eps + config.eps_slack;
  return out;
}

}  // namespace persuasion
