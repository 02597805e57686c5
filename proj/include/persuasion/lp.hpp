#pragma once

#include <optional>
#include <string>
#include <vector>

#include "persuasion/config.hpp"
#include "persuasion/errors.hpp"
#include "persuasion/rational.hpp"

namespace persuasion {

enum class LpStatus { Optimal, Infeasible, Unbounded };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

// maximize objective . x  subject to  eq_matrix x = eq_rhs,
// lower <= x (componentwise), x <= upper where an upper bound is present.
// Lower bounds default to zero when the vector is left empty.
template <class S>
struct LpProblemT {
  std::vector<S> objective;
  std::vector<std::vector<S>> eq_matrix;
  std::vector<S> eq_rhs;
  std::vector<S> lower;
  std::vector<std::optional<S>> upper;
};

template <class S>
struct LpResultT {
  LpStatus status = LpStatus::Infeasible;
  S value{};
  std::vector<S> solution;
  int iterations = 0;
};

using LpProblem = LpProblemT<double>;
using LpResult = LpResultT<double>;

// Dense two-phase simplex with Bland's anti-cycling rule and lowest-index
// tie-breaking; deterministic for bit-identical input.  Only the vertex
// optimum is reported.  Instances here are tiny, so no sparsity is used.
template <class S>
LpResultT<S> solve_lp(const LpProblemT<S>& problem,
                      const SolverConfig& config = SolverConfig::defaults());

// Phase one only: is there an x with eq_matrix x = eq_rhs within bounds?
template <class S>
bool check_feasible(const std::vector<std::vector<S>>& eq_matrix,
                    const std::vector<S>& eq_rhs,
                    const SolverConfig& config = SolverConfig::defaults());

extern template LpResultT<double> solve_lp<double>(const LpProblemT<double>&,
                                                   const SolverConfig&);
extern template LpResultT<Rational> solve_lp<Rational>(
    const LpProblemT<Rational>&, const SolverConfig&);
extern template bool check_feasible<double>(
    const std::vector<std::vector<double>>&, const std::vector<double>&,
    const SolverConfig&);
extern template bool check_feasible<Rational>(
    const std::vector<std::vector<Rational>>&, const std::vector<Rational>&,
    const SolverConfig&);

}  // namespace persuasion
