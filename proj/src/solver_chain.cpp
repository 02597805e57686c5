#include "persuasion/solver_chain.hpp"

#include <algorithm>
#include <cmath>

#include "persuasion/convex_order.hpp"
#include "persuasion/envelope.hpp"

namespace persuasion {

namespace {

template <class F>
void for_each_below(const OrderBitMatrix& order, std::size_t i, F&& fn) {
  const std::uint64_t* row = order.row(i);
  for (std::size_t w = 0; w < order.words_per_row(); ++w) {
    std::uint64_t bits = row[w];
    while (bits) {
      const int b = std::countr_zero(bits);
      bits &= bits - 1;
      fn(w * 64 + static_cast<std::size_t>(b));
    }
  }
}

template <class S>
struct RecursionResult {
  std::vector<std::vector<char>> masks;  // masks[0] = M_1 .. masks[n] = M_{n+1}
  std::vector<ExclusionWitness> exclusions;
};

// The recursion: M_{n+1} = all elements; mu stays in M_i iff no feasible
// contraction improves mediator i's utility by more than eps.  Exclusions
// record the best deviation found.
template <class S>
RecursionResult<S> run_recursion(const OrderBitMatrix& order,
                                 const std::vector<std::vector<S>>& mediator_values,
                                 const S& eps, const S& slack) {
  const std::size_t n = mediator_values.size();
  const std::size_t m = order.size();
  RecursionResult<S> out;
  out.masks.assign(n + 1, std::vector<char>(m, 1));

  for (std::size_t level = n; level >= 1; --level) {
    const std::vector<char>& above = out.masks[level];
    std::vector<char>& mine = out.masks[level - 1];
    const std::vector<S>& w = mediator_values[level - 1];
    for (std::size_t x = 0; x < m; ++x) {
      if (!above[x]) {
        mine[x] = 0;
        continue;
      }
      S best_gain{};
      std::size_t best_witness = m;
      for_each_below(order, x, [&](std::size_t y) {
        if (y == x || !above[y]) return;
        const S gain = w[y] - w[x];
        if (best_witness == m || gain > best_gain) {
          best_gain = gain;
          best_witness = y;
        }
      });
      if (best_witness != m && best_gain > eps + slack) {
        mine[x] = 0;
        ExclusionWitness e;
        e.element = x;
        e.level = level;
        e.witness = best_witness;
        if constexpr (scalar_traits<S>::exact)
          e.gain = to_double(best_gain);
        else
          e.gain = static_cast<double>(best_gain);
        out.exclusions.push_back(e);
      } else {
        mine[x] = 1;
      }
    }
  }
  return out;
}

void validate_chain(const ChainProblem& problem) {
  const std::size_t n = problem.mediators.size();
  const std::size_t states = problem.prior.belief.num_states();
  if (problem.grid.num_states() != states)
    fail(ErrorCode::DimensionMismatch, "grid and prior state counts differ");
  if (problem.sender.num_states() != states)
    fail(ErrorCode::DimensionMismatch, "sender utility state count mismatch");
  for (const UtilityFunction& u : problem.mediators)
    if (u.num_states() != states)
      fail(ErrorCode::DimensionMismatch, "mediator utility state count mismatch");
  if (problem.eps < 0.0) fail(ErrorCode::InvalidArgument, "eps must be nonnegative");
  if (n >= 2 && states != 2)
    fail(ErrorCode::UnsupportedMode,
         "chain solving with two or more mediators is restricted to binary "
         "states; reduce the state count or the mediator count");
  if (problem.eps == 0.0)
    for (const UtilityFunction& u : problem.mediators)
      if (!u.declared_continuous())
        fail(ErrorCode::UnsupportedMode,
             "eps = 0 requires mediator utilities declared continuous; "
             "solve with eps > 0 instead");
  if (n >= 1) {
    if (problem.denominator < 1)
      fail(ErrorCode::InvalidArgument, "lattice denominator must be >= 1");
    if (problem.grid.find(problem.prior.belief) == BeliefGrid::npos)
      fail(ErrorCode::NotRepresentable,
           "prior not representable: the prior must itself be a grid point "
           "(the point mass at the prior anchors every feasible set); add it "
           "to the grid");
  }
}

// Direct persuasion: upper concave envelope over the grid, with the
// argmax split recovered from the hull segment through the prior.
ChainSolveResult solve_unconstrained(const ChainProblem& problem,
                                     const SolverConfig& config) {
  ChainSolveResult result;
  const Belief& p = problem.prior.belief;
  result.value = concavify_unconstrained(problem.sender, problem.grid, p, config);
  if (problem.grid.num_states() == 2) {
    const std::vector<double>& pts = problem.grid.scalar_points();
    const double x = p.scalar();
    double best = problem.sender.eval_scalar(x) - 1e-12;
    std::size_t bi = 0, bj = 0;
    bool pair = false;
    std::size_t j_start = 0;
    while (j_start < pts.size() && pts[j_start] <= x) ++j_start;
    for (std::size_t i = 0; i < pts.size() && pts[i] < x; ++i)
      for (std::size_t j = j_start; j < pts.size(); ++j) {
        const double alpha = (pts[j] - x) / (pts[j] - pts[i]);
        const double v = alpha * problem.sender.eval_scalar(pts[i]) +
                         (1.0 - alpha) * problem.sender.eval_scalar(pts[j]);
        if (v > best) {
          best = v;
          bi = i;
          bj = j;
          pair = true;
        }
      }
    if (pair) {
      const double alpha = (pts[bj] - x) / (pts[bj] - pts[bi]);
      result.optimal = FiniteBeliefDistribution::binary({pts[bi], pts[bj]},
                                                        {alpha, 1.0 - alpha});
    } else {
      result.optimal = FiniteBeliefDistribution::point_mass(p);
    }
  } else {
    result.optimal = FiniteBeliefDistribution::point_mass(p);
    result.warnings.push_back(
        "optimal split not reported for unconstrained solves with 3+ states");
  }
  return result;
}

ChainSolveResult solve_rational(const ChainProblem& problem,
                                const SolverConfig& config) {
  if (problem.grid.num_states() != 2)
    fail(ErrorCode::UnsupportedMode, "rational mode is binary-state only");
  std::vector<Rational> grid;
  for (double x : problem.grid.scalar_points()) grid.push_back(rational_from_double(x));
  const Rational prior = rational_from_double(problem.prior.belief.scalar());

  ScalarLattice<Rational> lat =
      build_scalar_lattice<Rational>(grid, problem.denominator, prior, config);
  const std::size_t m = lat.counts.size();
  const std::size_t n = problem.mediators.size();

  std::vector<std::vector<Rational>> mediator_values(n);
  std::vector<Rational> grid_vals(grid.size());
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < grid.size(); ++j)
      grid_vals[j] = problem.mediators[k].eval_exact(grid[j]);
    mediator_values[k].resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      Rational acc = 0;
      for (std::size_t j = 0; j < grid.size(); ++j)
        if (lat.counts[i][j] != 0) acc += Rational(lat.counts[i][j]) * grid_vals[j];
      mediator_values[k][i] = acc / problem.denominator;
    }
  }

  const Rational eps = rational_from_double(problem.eps);
  RecursionResult<Rational> rec =
      run_recursion<Rational>(lat.order, mediator_values, eps, Rational(0));

  std::vector<Rational> sender_vals(m);
  for (std::size_t j = 0; j < grid.size(); ++j)
    grid_vals[j] = problem.sender.eval_exact(grid[j]);
  for (std::size_t i = 0; i < m; ++i) {
    Rational acc = 0;
    for (std::size_t j = 0; j < grid.size(); ++j)
      if (lat.counts[i][j] != 0) acc += Rational(lat.counts[i][j]) * grid_vals[j];
    sender_vals[i] = acc / problem.denominator;
  }

  bool have = false;
  Rational best = 0;
  std::size_t best_idx = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (!rec.masks[0][i]) continue;
    if (!have || sender_vals[i] > best) {
      best = sender_vals[i];
      best_idx = i;
      have = true;
    }
  }
  if (!have) fail(ErrorCode::NumericalStall, "feasible set M_1 is empty");

  ChainSolveResult result;
  result.used_lattice = true;
  result.value = to_double(best);
  result.value_exact = rational_to_string(best);
  result.lattice_elements = m;
  result.order_edges = lat.order_edges;
  result.sets.masks = std::move(rec.masks);
  result.sets.exclusions = std::move(rec.exclusions);
  result.optimal_index = best_idx;
  for (std::size_t i = 0; i <= n; ++i)
    result.feasible_counts.push_back(static_cast<std::size_t>(
        std::count(result.sets.masks[i].begin(), result.sets.masks[i].end(), 1)));

  std::vector<double> support;
  std::vector<double> weights;
  for (std::size_t j = 0; j < grid.size(); ++j)
    if (lat.counts[best_idx][j] > 0) {
      support.push_back(problem.grid.scalar_points()[j]);
      weights.push_back(static_cast<double>(lat.counts[best_idx][j]) /
                        problem.denominator);
    }
  result.optimal = FiniteBeliefDistribution::binary(support, weights);
  return result;
}

}  // namespace

std::size_t FeasibleSets::level_count(std::size_t i) const {
  return static_cast<std::size_t>(
      std::count(masks.at(i).begin(), masks.at(i).end(), 1));
}

FeasibleSets compute_feasible_sets(const DistributionLattice& lattice,
                                   const std::vector<UtilityFunction>& mediators,
                                   double eps, const SolverConfig& config) {
  std::vector<std::vector<double>> mediator_values;
  mediator_values.reserve(mediators.size());
  for (const UtilityFunction& u : mediators)
    mediator_values.push_back(lattice.expected_values(u));
  RecursionResult<double> rec =
      run_recursion<double>(lattice.order(), mediator_values, eps, config.eps_slack);
  FeasibleSets sets;
  sets.masks = std::move(rec.masks);
  sets.exclusions = std::move(rec.exclusions);
  return sets;
}

ChainSolveResult solve_chain(const ChainProblem& problem,
                             const ChainSolveOptions& options,
                             const SolverConfig& config) {
  validate_chain(problem);
  if (problem.mediators.empty()) {
    if (options.rational)
      fail(ErrorCode::UnsupportedMode,
           "rational mode covers lattice solves (one or more mediators)");
    return solve_unconstrained(problem, config);
  }
  if (options.rational) return solve_rational(problem, config);

  DistributionLattice lattice(problem.grid, problem.denominator, problem.prior,
                              config);
  FeasibleSets sets = compute_feasible_sets(lattice, problem.mediators,
                                            problem.eps, config);

  const std::vector<double> sender_vals = lattice.expected_values(problem.sender);
  bool have = false;
  double best = 0.0;
  std::size_t best_idx = 0;
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    if (!sets.masks[0][i]) continue;
    if (!have || sender_vals[i] > best) {
      best = sender_vals[i];
      best_idx = i;
      have = true;
    }
  }
  if (!have) fail(ErrorCode::NumericalStall, "feasible set M_1 is empty");

  ChainSolveResult result;
  result.used_lattice = true;
  result.value = best;
  result.optimal = lattice.distribution(best_idx);
  result.optimal_index = best_idx;
  result.lattice_elements = lattice.size();
  result.order_edges = lattice.order_edges();
  for (std::size_t i = 0; i <= problem.mediators.size(); ++i)
    result.feasible_counts.push_back(sets.level_count(i));
  result.sets = std::move(sets);
  return result;
}

PosetGame chain_to_poset_game(const DistributionLattice& lattice,
                              const UtilityFunction& sender,
                              const std::vector<UtilityFunction>& mediators) {
  PosetGame game;
  game.size = lattice.size();
  game.order = lattice.order();
  game.utilities.push_back(lattice.expected_values(sender));
  for (const UtilityFunction& u : mediators)
    game.utilities.push_back(lattice.expected_values(u));
  game.start = std::nullopt;  // every mean-p element is reachable
  return game;
}

double naive_all_domination_bound(const DistributionLattice& lattice,
                                  const UtilityFunction& sender,
                                  const std::vector<UtilityFunction>& mediators,
                                  const DominationOptions& opt) {
  const std::vector<double> sender_vals = lattice.expected_values(sender);
  bool have = false;
  double best = 0.0;
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const FiniteBeliefDistribution dist = lattice.distribution(i);
    bool ok = true;
    for (const UtilityFunction& u : mediators) {
      if (dist.num_states() == 2)
        ok = check_set_via_pairs(u, dist.support(), opt);
      else
        ok = check_set(u, dist.support(), lattice.grid(), opt);
      if (!ok) break;
    }
    if (!ok) continue;
    if (!have || sender_vals[i] > best) {
      best = sender_vals[i];
      have = true;
    }
  }
  if (!have)
    fail(ErrorCode::NumericalStall,
         "no lattice element passes all-mediator domination (the point mass "
         "at the prior should)");
  return best;
}

}  // namespace persuasion
