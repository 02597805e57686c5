#include "persuasion/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace persuasion {

std::size_t OrderBitMatrix::edge_count() const {
  std::size_t total = 0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t w = 0; w < words_; ++w)
      total += static_cast<std::size_t>(std::popcount(bits_[i * words_ + w]));
  return total - n_;  // the relation is reflexive
}

bool OrderBitMatrix::row_subset(std::size_t a, std::size_t b) const {
  const std::uint64_t* ra = row(a);
  const std::uint64_t* rb = row(b);
  for (std::size_t w = 0; w < words_; ++w)
    if (ra[w] & ~rb[w]) return false;
  return true;
}

bool canonical_counts_less(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t ia = 0, ib = 0;
  const std::size_t m = a.size();
  for (;;) {
    while (ia < m && a[ia] == 0) ++ia;
    while (ib < m && b[ib] == 0) ++ib;
    if (ia == m || ib == m) return ib != m;  // shorter support is a prefix
    if (ia != ib) return ia < ib;            // earlier grid point first
    if (a[ia] != b[ib]) return a[ia] < b[ib];
    ++ia;
    ++ib;
  }
}

namespace {

template <class S>
void enumerate_counts(const std::vector<S>& grid, int remaining, std::size_t j,
                      S partial, const S& target, const S& tol, std::size_t cap,
                      std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (j + 1 == grid.size()) {
    S total = partial + S(remaining) * grid[j];
    S gap = total - target;
    if (gap < S(0)) gap = S(-gap);
    if (gap <= tol) {
      current.push_back(remaining);
      out.push_back(current);
      current.pop_back();
      if (out.size() > cap)
        fail(ErrorCode::CapExceeded,
             "lattice exceeds the cap of " + std::to_string(cap) +
                 " elements; use a coarser grid or smaller denominator");
    }
    return;
  }
  // After placing k units here, the rest land on later (larger) points, so
  // the reachable weighted sum spans [base + rest*grid[j+1], base +
  // rest*grid.back()]; both bounds decrease in k.
  for (int k = 0; k <= remaining; ++k) {
    const int rest = remaining - k;
    const S base = partial + S(k) * grid[j];
    if (base + S(rest) * grid.back() < target - tol) break;
    if (base + S(rest) * grid[j + 1] > target + tol) continue;
    current.push_back(k);
    enumerate_counts(grid, rest, j + 1, base, target, tol, cap, current, out);
    current.pop_back();
  }
}

// Per-element E[(x - t)+] * Q at every grid kink; convex-order dominance is
// equivalent to componentwise dominance of these profiles (means match by
// construction).
template <class S>
std::vector<S> tail_profile(const std::vector<S>& grid, const std::vector<int>& counts) {
  const std::size_t m = grid.size();
  std::vector<S> profile(m, S(0));
  for (std::size_t t = 0; t < m; ++t) {
    S acc{};
    for (std::size_t j = t + 1; j < m; ++j)
      if (counts[j] > 0) acc += S(counts[j]) * (grid[j] - grid[t]);
    profile[t] = acc;
  }
  return profile;
}

}  // namespace

template <class S>
ScalarLattice<S> build_scalar_lattice(const std::vector<S>& grid, int denominator,
                                      const S& prior, const SolverConfig& config) {
  if (denominator < 1)
    fail(ErrorCode::InvalidArgument, "lattice denominator must be >= 1");
  if (grid.empty()) fail(ErrorCode::InvalidArgument, "lattice grid is empty");

  ScalarLattice<S> lat;
  lat.grid = grid;
  lat.denominator = denominator;
  lat.prior = prior;

  const S mean_tol =
      scalar_traits<S>::tolerance(config.mean_match_tol) * S(denominator);
  const S target = prior * S(denominator);
  std::vector<int> current;
  enumerate_counts(grid, denominator, std::size_t(0), S(0), target, mean_tol,
                   config.lattice_cap, current, lat.counts);
  if (lat.counts.empty())
    fail(ErrorCode::NotRepresentable,
         "prior not representable: no weight vector with denominator " +
             std::to_string(denominator) +
             " on the given grid has mean equal to the prior");
  std::sort(lat.counts.begin(), lat.counts.end(), canonical_counts_less);

  const std::size_t n = lat.counts.size();
  std::vector<std::vector<S>> profiles(n);
  for (std::size_t i = 0; i < n; ++i) profiles[i] = tail_profile(grid, lat.counts[i]);

  const S order_tol =
      scalar_traits<S>::tolerance(config.feasibility_tol) * S(denominator);
  lat.order = OrderBitMatrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        lat.order.set(i, i);
        continue;
      }
      bool leq = true;
      for (std::size_t t = 0; t < grid.size() && leq; ++t)
        leq = profiles[j][t] <= profiles[i][t] + order_tol;
      if (leq) lat.order.set(i, j);  // j is a contraction of i
    }
  }
  lat.order_edges = lat.order.edge_count();
  return lat;
}

template ScalarLattice<double> build_scalar_lattice<double>(
    const std::vector<double>&, int, const double&, const SolverConfig&);
template ScalarLattice<Rational> build_scalar_lattice<Rational>(
    const std::vector<Rational>&, int, const Rational&, const SolverConfig&);

DistributionLattice::DistributionLattice(BeliefGrid grid, int denominator,
                                         Prior prior, const SolverConfig& config)
    : grid_(std::move(grid)), denominator_(denominator), prior_(std::move(prior)) {
  if (grid_.num_states() != prior_.belief.num_states())
    fail(ErrorCode::DimensionMismatch, "grid and prior state counts differ");

  if (grid_.num_states() == 2) {
    ScalarLattice<double> lat = build_scalar_lattice<double>(
        grid_.scalar_points(), denominator, prior_.belief.scalar(), config);
    counts_ = std::move(lat.counts);
    order_ = std::move(lat.order);
    order_edges_ = lat.order_edges;
    return;
  }

  // General state count: enumerate with the full coordinatewise mean
  // constraint, order via the transport LP.
  const std::size_t m = grid_.size();
  const std::size_t states = grid_.num_states();
  std::vector<Belief> pts = grid_.points();
  std::vector<int> current;
  std::vector<double> partial(states, 0.0);
  const double tol = config.mean_match_tol * denominator;

  std::vector<std::vector<int>> found;
  // Depth-first over count vectors; prune on the first coordinate only
  // (coarse but correct; general-state lattices stay small by design).
  auto rec = [&](auto&& self, int remaining, std::size_t j) -> void {
    if (j + 1 == m) {
      bool ok = true;
      for (std::size_t k = 0; k < states && ok; ++k) {
        const double total = partial[k] + remaining * pts[j][k];
        ok = std::abs(total - denominator * prior_.belief[k]) <= tol;
      }
      if (ok) {
        current.push_back(remaining);
        found.push_back(current);
        current.pop_back();
        if (found.size() > config.lattice_cap)
          fail(ErrorCode::CapExceeded, "lattice exceeds the configured cap");
      }
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      current.push_back(k);
      for (std::size_t d = 0; d < states; ++d) partial[d] += k * pts[j][d];
      self(self, remaining - k, j + 1);
      for (std::size_t d = 0; d < states; ++d) partial[d] -= k * pts[j][d];
      current.pop_back();
    }
  };
  rec(rec, denominator, 0);
  if (found.empty())
    fail(ErrorCode::NotRepresentable,
         "prior not representable on the weight grid for this belief grid");
  std::sort(found.begin(), found.end(), canonical_counts_less);
  counts_ = std::move(found);

  const std::size_t n = counts_.size();
  std::vector<FiniteBeliefDistribution> dists;
  dists.reserve(n);
  for (std::size_t i = 0; i < n; ++i) dists.push_back(distribution(i));
  order_ = OrderBitMatrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        order_.set(i, i);
        continue;
      }
      if (is_contraction(dists[j], dists[i], config.feasibility_tol, config))
        order_.set(i, j);
    }
  order_edges_ = order_.edge_count();
}

FiniteBeliefDistribution DistributionLattice::distribution(std::size_t i) const {
  std::vector<Belief> support;
  std::vector<double> weights;
  for (std::size_t j = 0; j < counts_[i].size(); ++j)
    if (counts_[i][j] > 0) {
      support.push_back(grid_.point(j));
      weights.push_back(static_cast<double>(counts_[i][j]) / denominator_);
    }
  return FiniteBeliefDistribution(std::move(support), std::move(weights));
}

std::vector<double> DistributionLattice::weights(std::size_t i) const {
  std::vector<double> w(counts_[i].size());
  for (std::size_t j = 0; j < w.size(); ++j)
    w[j] = static_cast<double>(counts_[i][j]) / denominator_;
  return w;
}

std::size_t DistributionLattice::find(const std::vector<int>& counts) const {
  for (std::size_t i = 0; i < counts_.size(); ++i)
    if (counts_[i] == counts) return i;
  return npos;
}

std::size_t DistributionLattice::find(const FiniteBeliefDistribution& dist) const {
  std::vector<int> counts(grid_.size(), 0);
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const std::size_t j = grid_.find(dist.support()[i]);
    if (j == npos) return npos;
    const double scaled = dist.weights()[i] * denominator_;
    const long c = std::lround(scaled);
    if (std::abs(scaled - static_cast<double>(c)) > 1e-6) return npos;
    counts[j] = static_cast<int>(c);
  }
  return find(counts);
}

std::size_t DistributionLattice::find_point_mass(const Belief& b) const {
  const std::size_t j = grid_.find(b);
  if (j == npos) return npos;
  std::vector<int> counts(grid_.size(), 0);
  counts[j] = denominator_;
  return find(counts);
}

std::vector<double> DistributionLattice::expected_values(const UtilityFunction& u) const {
  std::vector<double> grid_values(grid_.size());
  for (std::size_t j = 0; j < grid_.size(); ++j) grid_values[j] = u.eval(grid_.point(j));
  std::vector<double> out(counts_.size(), 0.0);
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < grid_values.size(); ++j)
      if (counts_[i][j] != 0) acc += counts_[i][j] * grid_values[j];
    out[i] = acc / denominator_;
  }
  return out;
}

}  // namespace persuasion
