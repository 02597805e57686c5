#pragma once

#include <cstddef>

namespace persuasion {

// One configuration record shared by every module.  All feasibility and
// comparison tolerances downstream inherit from here.
struct SolverConfig {
  double feasibility_tol = 1e-9;   // LP feasibility, chord/envelope margins
  double eps_slack = 1e-9;         // added to eps in float-mode membership tests
  double belief_sum_tol = 1e-12;   // probability vectors must sum to 1 within this
  double mean_match_tol = 1e-9;    // lattice elements must hit the prior mean within this
  double domination_step = 1e-3;   // chord sampling step for closed-form pieces

  std::size_t lattice_cap = 200000;
  std::size_t clique_cap = 10000;
  std::size_t backward_induction_cap = 5000;
  std::size_t simplex_iteration_cap = 20000;

  static const SolverConfig& defaults() {
    static const SolverConfig cfg{};
    return cfg;
  }
};

}  // namespace persuasion
