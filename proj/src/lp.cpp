#include "persuasion/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace persuasion {

namespace {

template <class S>
S abs_of(const S& x) {
  return x < S(0) ? S(-x) : x;
}

// Classic dense tableau.  Columns: structural variables first, then
// artificials.  Row 0..m-1 are constraints, row m is the phase objective.
template <class S>
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, S(0)) {}

  S& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const S& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void pivot(std::size_t pr, std::size_t pc) {
    const S piv = at(pr, pc);
    for (std::size_t c = 0; c < cols_; ++c) at(pr, c) /= piv;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr) continue;
      const S factor = at(r, pc);
      if (factor == S(0)) continue;
      for (std::size_t c = 0; c < cols_; ++c) at(r, c) -= factor * at(pr, c);
    }
  }

 private:
  std::size_t rows_, cols_;
  std::vector<S> data_;
};

// Runs the simplex on the given objective row (already stored in the last
// tableau row).  `allowed` masks the columns that may enter the basis.
// Returns Optimal or Unbounded; throws on iteration stall.
template <class S>
LpStatus run_simplex(Tableau<S>& t, std::size_t m, std::size_t total_cols,
                     std::size_t rhs_col, std::vector<std::size_t>& basis,
                     const std::vector<char>& allowed, const S& tol,
                     std::size_t iteration_cap, int& iterations) {
  for (;;) {
    // Bland: entering column = lowest index with positive reduced cost.
    std::size_t enter = total_cols;
    for (std::size_t c = 0; c < total_cols; ++c) {
      if (!allowed[c]) continue;
      if (t.at(m, c) > tol) {
        enter = c;
        break;
      }
    }
    if (enter == total_cols) return LpStatus::Optimal;

    // Ratio test; ties go to the row whose basic variable has lowest index.
    std::size_t leave = m;
    bool have = false;
    S best_ratio{};
    for (std::size_t r = 0; r < m; ++r) {
      const S& a = t.at(r, enter);
      if (a <= tol) continue;
      S ratio = t.at(r, rhs_col) / a;
      if (!have || ratio < best_ratio ||
          (ratio == best_ratio && basis[r] < basis[leave])) {
        best_ratio = ratio;
        leave = r;
        have = true;
      }
    }
    if (!have) return LpStatus::Unbounded;

    t.pivot(leave, enter);
    basis[leave] = enter;
    if (static_cast<std::size_t>(++iterations) > iteration_cap)
      fail(ErrorCode::NumericalStall,
           "simplex stalled after " + std::to_string(iterations) + " iterations");
  }
}

}  // namespace

template <class S>
LpResultT<S> solve_lp(const LpProblemT<S>& problem, const SolverConfig& config) {
  const std::size_t n = problem.objective.size();
  const std::size_t m0 = problem.eq_matrix.size();
  if (problem.eq_rhs.size() != m0)
    fail(ErrorCode::DimensionMismatch,
         "lp: matrix has " + std::to_string(m0) + " rows but rhs has " +
             std::to_string(problem.eq_rhs.size()));
  for (std::size_t r = 0; r < m0; ++r)
    if (problem.eq_matrix[r].size() != n)
      fail(ErrorCode::DimensionMismatch,
           "lp: row " + std::to_string(r) + " has " +
               std::to_string(problem.eq_matrix[r].size()) + " entries, expected " +
               std::to_string(n));
  if (!problem.lower.empty() && problem.lower.size() != n)
    fail(ErrorCode::DimensionMismatch, "lp: lower bound vector length mismatch");
  if (!problem.upper.empty() && problem.upper.size() != n)
    fail(ErrorCode::DimensionMismatch, "lp: upper bound vector length mismatch");

  const S tol = scalar_traits<S>::tolerance(config.feasibility_tol);

  std::vector<S> lower(n, S(0));
  if (!problem.lower.empty()) lower = problem.lower;

  // Shift x = lower + y with y >= 0.  Finite upper bounds become extra rows
  // y_j + s_j = upper_j - lower_j with a fresh slack variable s_j.
  std::vector<std::size_t> ub_vars;
  if (!problem.upper.empty())
    for (std::size_t j = 0; j < n; ++j)
      if (problem.upper[j].has_value()) {
        if (*problem.upper[j] < lower[j])
          return {LpStatus::Infeasible, S(0), {}, 0};
        ub_vars.push_back(j);
      }

  const std::size_t m = m0 + ub_vars.size();
  const std::size_t n_struct = n + ub_vars.size();
  const std::size_t n_total = n_struct + m;  // + artificials
  const std::size_t rhs_col = n_total;

  // Two objective rows would complicate the pivot loop; run the phases
  // sequentially on one row instead, rebuilding the row between phases.
  Tableau<S> t(m + 1, n_total + 1);
  std::vector<std::size_t> basis(m);

  for (std::size_t r = 0; r < m0; ++r) {
    S rhs = problem.eq_rhs[r];
    for (std::size_t j = 0; j < n; ++j) rhs -= problem.eq_matrix[r][j] * lower[j];
    const bool flip = rhs < S(0);
    for (std::size_t j = 0; j < n; ++j)
      t.at(r, j) = flip ? S(-problem.eq_matrix[r][j]) : problem.eq_matrix[r][j];
    t.at(r, rhs_col) = flip ? S(-rhs) : rhs;
  }
  for (std::size_t k = 0; k < ub_vars.size(); ++k) {
    const std::size_t r = m0 + k;
    t.at(r, ub_vars[k]) = S(1);
    t.at(r, n + k) = S(1);
    t.at(r, rhs_col) = *problem.upper[ub_vars[k]] - lower[ub_vars[k]];
  }
  for (std::size_t r = 0; r < m; ++r) {
    t.at(r, n_struct + r) = S(1);
    basis[r] = n_struct + r;
  }

  // Phase 1: maximize -sum(artificials): objective row = sum of constraint
  // rows over the structural columns.
  for (std::size_t c = 0; c <= n_total; ++c) {
    S sum{};
    for (std::size_t r = 0; r < m; ++r) sum += t.at(r, c);
    t.at(m, c) = (c >= n_struct && c < n_total) ? S(0) : sum;
  }

  std::vector<char> allowed(n_total, 1);
  for (std::size_t c = n_struct; c < n_total; ++c) allowed[c] = 0;

  int iterations = 0;
  run_simplex(t, m, n_total, rhs_col, basis, allowed, tol,
              config.simplex_iteration_cap, iterations);
  if (t.at(m, rhs_col) > tol) {
    // Residual infeasibility: phase-1 optimum short of zero.
    return {LpStatus::Infeasible, S(0), {}, iterations};
  }

  // Drive leftover artificials out of the basis; rows with no structural
  // pivot are redundant and stay parked on a zero-valued artificial.
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] < n_struct) continue;
    std::size_t pc = n_struct;
    for (std::size_t c = 0; c < n_struct; ++c)
      if (abs_of(t.at(r, c)) > tol) {
        pc = c;
        break;
      }
    if (pc < n_struct) {
      t.pivot(r, pc);
      basis[r] = pc;
    }
  }

  // Phase 2 objective in terms of the current basis: c_j reduced by the
  // basic costs.  Artificials stay locked out.
  std::vector<S> costs(n_total, S(0));
  for (std::size_t j = 0; j < n; ++j) costs[j] = problem.objective[j];
  for (std::size_t c = 0; c <= n_total; ++c) {
    S z{};
    for (std::size_t r = 0; r < m; ++r) {
      const S& cb = costs[basis[r]];
      if (cb != S(0)) z += cb * t.at(r, c);
    }
    S cj = c < n_total ? costs[c] : S(0);
    t.at(m, c) = cj - z;
  }

  const LpStatus status = run_simplex(t, m, n_total, rhs_col, basis, allowed, tol,
                                      config.simplex_iteration_cap, iterations);
  if (status == LpStatus::Unbounded) return {LpStatus::Unbounded, S(0), {}, iterations};

  std::vector<S> y(n_struct, S(0));
  for (std::size_t r = 0; r < m; ++r)
    if (basis[r] < n_struct) y[basis[r]] = t.at(r, rhs_col);

  LpResultT<S> result;
  result.status = LpStatus::Optimal;
  result.iterations = iterations;
  result.solution.resize(n);
  for (std::size_t j = 0; j < n; ++j) result.solution[j] = lower[j] + y[j];
  S value{};
  for (std::size_t j = 0; j < n; ++j)
    value += problem.objective[j] * result.solution[j];
  result.value = value;
  return result;
}

template <class S>
bool check_feasible(const std::vector<std::vector<S>>& eq_matrix,
                    const std::vector<S>& eq_rhs, const SolverConfig& config) {
  LpProblemT<S> p;
  const std::size_t n = eq_matrix.empty() ? 0 : eq_matrix[0].size();
  p.objective.assign(n, S(0));
  p.eq_matrix = eq_matrix;
  p.eq_rhs = eq_rhs;
  return solve_lp(p, config).status == LpStatus::Optimal;
}

template LpResultT<double> solve_lp<double>(const LpProblemT<double>&,
                                            const SolverConfig&);
template LpResultT<Rational> solve_lp<Rational>(const LpProblemT<Rational>&,
                                                const SolverConfig&);
template bool check_feasible<double>(const std::vector<std::vector<double>>&,
                                     const std::vector<double>&,
                                     const SolverConfig&);
template bool check_feasible<Rational>(const std::vector<std::vector<Rational>>&,
                                       const std::vector<Rational>&,
                                       const SolverConfig&);

}  // namespace persuasion
