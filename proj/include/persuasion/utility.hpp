#pragma once

#include <optional>
#include <string>
#include <vector>

#include "persuasion/belief.hpp"
#include "persuasion/grid.hpp"
#include "persuasion/rational.hpp"

namespace persuasion {

struct CosineTerm {
  double amplitude = 0.0;
  double angular_frequency = 0.0;
  double phase = 0.0;
};

// One closed-form piece on [lo, hi]: polynomial (degree <= 6, ascending
// coefficients) plus an optional cosine term a*cos(w*x + phi).
struct UtilityPiece {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> poly;
  std::optional<CosineTerm> cosine;
  // Exact mirrors of lo/hi/poly for the rational mode.
  Rational lo_exact, hi_exact;
  std::vector<Rational> poly_exact;
};

struct ValueAtBelief {
  Belief belief;
  double value;
};

// Indirect utility v: simplex -> R.  Closed form is binary-state only;
// grid-sampled works for any state count via piecewise-linear interpolation
// (Freudenthal cells on the simplex mesh for three or more states).
class UtilityFunction {
 public:
  static UtilityFunction piecewise(std::vector<UtilityPiece> pieces,
                                   bool declared_continuous);
  static UtilityFunction grid_sampled(BeliefGrid grid, std::vector<double> values,
                                      bool declared_continuous);
  static UtilityFunction constant(double c);

  bool is_closed_form() const { return closed_form_; }
  bool declared_continuous() const { return declared_continuous_; }
  std::size_t num_states() const;
  const std::vector<UtilityPiece>& pieces() const { return pieces_; }
  const BeliefGrid& sample_grid() const { return sample_grid_; }
  const std::vector<double>& sample_values() const { return sample_values_; }

  double eval(const Belief& q) const;
  // Binary shortcut on the state-1 probability.  At a shared breakpoint the
  // left piece wins; this convention is fixed so golden values are stable.
  double eval_scalar(double x) const;

  // Exact evaluation for the rational mode.  Cosine terms are rejected.
  Rational eval_exact(const Rational& x) const;

  bool has_cosine() const;

 private:
  bool closed_form_ = true;
  bool declared_continuous_ = true;
  std::vector<UtilityPiece> pieces_;
  BeliefGrid sample_grid_ = BeliefGrid::binary_points({0.0, 1.0});
  std::vector<double> sample_values_;
};

double expected_utility(const UtilityFunction& u, const FiniteBeliefDistribution& mu);

}  // namespace persuasion
