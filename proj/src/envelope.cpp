#include "persuasion/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "persuasion/lp.hpp"

namespace persuasion {

LowerHull1D::LowerHull1D(std::vector<double> xs, std::vector<double> ys) {
  if (xs.size() != ys.size() || xs.empty())
    fail(ErrorCode::InvalidArgument, "hull needs matching nonempty coordinates");
  std::vector<std::size_t> idx(xs.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return xs[a] < xs[b] || (xs[a] == xs[b] && ys[a] < ys[b]);
  });
  // Andrew monotone chain, lower part; duplicate x keeps the lower value.
  for (std::size_t t : idx) {
    const double x = xs[t], y = ys[t];
    if (!xs_.empty() && xs_.back() == x) continue;
    while (xs_.size() >= 2) {
      const double x1 = xs_[xs_.size() - 2], y1 = ys_[ys_.size() - 2];
      const double x2 = xs_.back(), y2 = ys_.back();
      // Drop the middle point when it lies on or above the chord.
      if ((y2 - y1) * (x - x1) >= (y - y1) * (x2 - x1)) {
        xs_.pop_back();
        ys_.pop_back();
      } else {
        break;
      }
    }
    xs_.push_back(x);
    ys_.push_back(y);
  }
}

double LowerHull1D::operator()(double x) const {
  if (x < xs_.front() - 1e-12 || x > xs_.back() + 1e-12)
    fail(ErrorCode::DomainError,
         "query " + std::to_string(x) + " outside the hull span");
  x = std::clamp(x, xs_.front(), xs_.back());
  if (xs_.size() == 1) return ys_.front();
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t j = static_cast<std::size_t>(it - xs_.begin());
  if (j == 0) j = 1;
  if (j == xs_.size()) j = xs_.size() - 1;
  const double t = (x - xs_[j - 1]) / (xs_[j] - xs_[j - 1]);
  return (1.0 - t) * ys_[j - 1] + t * ys_[j];
}

double lower_convex_envelope_lp(const std::vector<ValueAtBelief>& points,
                                const Belief& query, const SolverConfig& config) {
  if (points.empty()) fail(ErrorCode::InvalidArgument, "envelope needs points");
  const std::size_t n = points.size();
  const std::size_t states = points[0].belief.num_states();
  LpProblem p;
  p.objective.resize(n);
  for (std::size_t k = 0; k < n; ++k) p.objective[k] = -points[k].value;
  for (std::size_t d = 0; d + 1 < states; ++d) {
    std::vector<double> row(n);
    for (std::size_t k = 0; k < n; ++k) row[k] = points[k].belief[d];
    p.eq_matrix.push_back(std::move(row));
    p.eq_rhs.push_back(query[d]);
  }
  p.eq_matrix.push_back(std::vector<double>(n, 1.0));
  p.eq_rhs.push_back(1.0);
  const LpResult res = solve_lp(p, config);
  if (res.status != LpStatus::Optimal)
    fail(ErrorCode::DomainError, "query lies outside the convex hull of the points");
  return -res.value;
}

double lower_convex_envelope(const std::vector<ValueAtBelief>& points,
                             const Belief& query, const SolverConfig& config) {
  if (points.empty()) fail(ErrorCode::InvalidArgument, "envelope needs points");
  if (points[0].belief.num_states() == 2) {
    std::vector<double> xs, ys;
    xs.reserve(points.size());
    for (const ValueAtBelief& p : points) {
      xs.push_back(p.belief.scalar());
      ys.push_back(p.value);
    }
    return LowerHull1D(std::move(xs), std::move(ys))(query.scalar());
  }
  return lower_convex_envelope_lp(points, query, config);
}

LowerHull1D upper_concave_hull(const UtilityFunction& u, const BeliefGrid& grid) {
  const std::vector<double>& pts = grid.scalar_points();
  std::vector<double> xs = pts, ys(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) ys[i] = -u.eval_scalar(pts[i]);
  return LowerHull1D(std::move(xs), std::move(ys));
}

double concavify_unconstrained(const UtilityFunction& u, const BeliefGrid& grid,
                               const Belief& p, const SolverConfig& config) {
  if (grid.num_states() == 2) return -upper_concave_hull(u, grid)(p.scalar());
  std::vector<ValueAtBelief> pts;
  pts.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Belief b = grid.point(i);
    const double v = u.eval(b);
    pts.push_back(ValueAtBelief{std::move(b), -v});
  }
  return -lower_convex_envelope_lp(pts, p, config);
}

}  // namespace persuasion
