#pragma once

#include <cstdint>
#include <vector>

#include "persuasion/belief.hpp"
#include "persuasion/config.hpp"
#include "persuasion/convex_order.hpp"
#include "persuasion/grid.hpp"
#include "persuasion/utility.hpp"

namespace persuasion {

// Dense bit matrix; row i holds the down-set of element i.
class OrderBitMatrix {
 public:
  explicit OrderBitMatrix(std::size_t n = 0)
      : n_(n), words_((n + 63) / 64), bits_(n_ * words_, 0) {}

  std::size_t size() const { return n_; }
  std::size_t words_per_row() const { return words_; }
  void set(std::size_t i, std::size_t j) {
    bits_[i * words_ + j / 64] |= std::uint64_t(1) << (j % 64);
  }
  bool get(std::size_t i, std::size_t j) const {
    return (bits_[i * words_ + j / 64] >> (j % 64)) & 1u;
  }
  const std::uint64_t* row(std::size_t i) const { return bits_.data() + i * words_; }
  std::size_t edge_count() const;  // pairs i != j with j in row i
  // True iff row a is a subset of row b.
  bool row_subset(std::size_t a, std::size_t b) const;

 private:
  std::size_t n_, words_;
  std::vector<std::uint64_t> bits_;
};

// Binary-state lattice over scalar grid points, templated so the rational
// mode shares the enumeration and order construction.
template <class S>
struct ScalarLattice {
  std::vector<S> grid;
  int denominator = 1;
  S prior{};
  std::vector<std::vector<int>> counts;  // canonical order; weights are counts/Q
  OrderBitMatrix order;
  std::size_t order_edges = 0;
};

// Canonical comparison of two count vectors viewed as distributions on the
// (ascending) grid: lexicographic on the (point, weight) support sequence.
bool canonical_counts_less(const std::vector<int>& a, const std::vector<int>& b);

template <class S>
ScalarLattice<S> build_scalar_lattice(const std::vector<S>& grid, int denominator,
                                      const S& prior, const SolverConfig& config);

extern template ScalarLattice<double> build_scalar_lattice<double>(
    const std::vector<double>&, int, const double&, const SolverConfig&);
extern template ScalarLattice<Rational> build_scalar_lattice<Rational>(
    const std::vector<Rational>&, int, const Rational&, const SolverConfig&);

// All distributions with weights k/Q on grid points and mean equal to the
// prior, with the precomputed convex-order relation.
class DistributionLattice {
 public:
  DistributionLattice(BeliefGrid grid, int denominator, Prior prior,
                      const SolverConfig& config = SolverConfig::defaults());

  const BeliefGrid& grid() const { return grid_; }
  int denominator() const { return denominator_; }
  const Prior& prior() const { return prior_; }
  std::size_t size() const { return counts_.size(); }
  const std::vector<int>& counts(std::size_t i) const { return counts_[i]; }
  FiniteBeliefDistribution distribution(std::size_t i) const;
  std::vector<double> weights(std::size_t i) const;

  // elem_a precedes elem_b in the convex order (a is a contraction of b).
  bool leq(std::size_t a, std::size_t b) const { return order_.get(b, a); }
  const OrderBitMatrix& order() const { return order_; }
  std::size_t order_edges() const { return order_edges_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t find(const std::vector<int>& counts) const;
  std::size_t find(const FiniteBeliefDistribution& dist) const;
  std::size_t find_point_mass(const Belief& b) const;

  // E[u] for every element; grid values are evaluated once.
  std::vector<double> expected_values(const UtilityFunction& u) const;

 private:
  BeliefGrid grid_;
  int denominator_;
  Prior prior_;
  std::vector<std::vector<int>> counts_;
  OrderBitMatrix order_;
  std::size_t order_edges_ = 0;
};

inline DistributionLattice enumerate_lattice(
    const BeliefGrid& grid, int denominator, const Prior& prior,
    const SolverConfig& config = SolverConfig::defaults()) {
  return DistributionLattice(grid, denominator, prior, config);
}

}  // namespace persuasion
