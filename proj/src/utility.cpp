#include "persuasion/utility.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace persuasion {

namespace {

double horner(const std::vector<double>& poly, double x) {
  double v = 0.0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) v = v * x + *it;
  return v;
}

double eval_piece(const UtilityPiece& p, double x) {
  double v = horner(p.poly, x);
  if (p.cosine)
    v += p.cosine->amplitude *
         std::cos(p.cosine->angular_frequency * x + p.cosine->phase);
  return v;
}

}  // namespace

UtilityFunction UtilityFunction::piecewise(std::vector<UtilityPiece> pieces,
                                           bool declared_continuous) {
  if (pieces.empty())
    fail(ErrorCode::InvalidArgument, "piecewise utility needs at least one piece");
  std::sort(pieces.begin(), pieces.end(),
            [](const UtilityPiece& a, const UtilityPiece& b) { return a.lo < b.lo; });
  const double tol = 1e-9;
  if (std::abs(pieces.front().lo) > tol || std::abs(pieces.back().hi - 1.0) > tol)
    fail(ErrorCode::InvalidArgument, "pieces must cover [0, 1]");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const UtilityPiece& p = pieces[i];
    if (p.hi <= p.lo)
      fail(ErrorCode::InvalidArgument, "piece interval is empty or reversed");
    if (p.poly.empty() && !p.cosine)
      fail(ErrorCode::InvalidArgument, "piece has neither polynomial nor cosine");
    if (p.poly.size() > 7)
      fail(ErrorCode::InvalidArgument, "polynomial degree above 6 is not supported");
    if (i + 1 < pieces.size() && std::abs(p.hi - pieces[i + 1].lo) > tol)
      fail(ErrorCode::InvalidArgument, "pieces leave a gap in [0, 1]");
  }
  UtilityFunction u;
  u.closed_form_ = true;
  u.declared_continuous_ = declared_continuous;
  u.pieces_ = std::move(pieces);
  for (UtilityPiece& p : u.pieces_) {
    if (p.poly_exact.empty())
      for (double c : p.poly) p.poly_exact.push_back(rational_from_double(c));
    if (p.lo_exact == 0 && p.hi_exact == 0) {
      p.lo_exact = rational_from_double(p.lo);
      p.hi_exact = rational_from_double(p.hi);
    }
  }
  return u;
}

UtilityFunction UtilityFunction::grid_sampled(BeliefGrid grid,
                                              std::vector<double> values,
                                              bool declared_continuous) {
  if (grid.size() != values.size())
    fail(ErrorCode::DimensionMismatch,
         "grid-sampled utility: " + std::to_string(grid.size()) + " points vs " +
             std::to_string(values.size()) + " values");
  for (double v : values)
    if (!std::isfinite(v))
      fail(ErrorCode::InvalidArgument, "grid-sampled utility values must be finite");
  if (grid.num_states() == 2 && grid.size() < 2)
    fail(ErrorCode::InvalidArgument, "binary grid-sampled utility needs >= 2 points");
  UtilityFunction u;
  u.closed_form_ = false;
  u.declared_continuous_ = declared_continuous;
  u.sample_grid_ = std::move(grid);
  u.sample_values_ = std::move(values);
  return u;
}

UtilityFunction UtilityFunction::constant(double c) {
  UtilityPiece p;
  p.lo = 0.0;
  p.hi = 1.0;
  p.poly = {c};
  return piecewise({p}, true);
}

std::size_t UtilityFunction::num_states() const {
  return closed_form_ ? 2 : sample_grid_.num_states();
}

bool UtilityFunction::has_cosine() const {
  for (const UtilityPiece& p : pieces_)
    if (p.cosine) return true;
  return false;
}

double UtilityFunction::eval_scalar(double x) const {
  if (x < -1e-12 || x > 1.0 + 1e-12)
    fail(ErrorCode::DomainError,
         "belief " + std::to_string(x) + " outside [0, 1]");
  x = std::clamp(x, 0.0, 1.0);
  if (closed_form_) {
    // First piece whose upper end reaches x: the left piece wins at shared
    // endpoints.
    for (const UtilityPiece& p : pieces_)
      if (x <= p.hi + 1e-12) return eval_piece(p, x);
    return eval_piece(pieces_.back(), x);
  }
  const std::vector<double>& pts = sample_grid_.scalar_points();
  if (x <= pts.front()) return sample_values_.front();
  if (x >= pts.back()) return sample_values_.back();
  auto it = std::upper_bound(pts.begin(), pts.end(), x);
  const std::size_t j = static_cast<std::size_t>(it - pts.begin());
  const double x0 = pts[j - 1], x1 = pts[j];
  const double t = (x - x0) / (x1 - x0);
  return (1.0 - t) * sample_values_[j - 1] + t * sample_values_[j];
}

double UtilityFunction::eval(const Belief& q) const {
  if (num_states() == 2) return eval_scalar(q.scalar());
  if (q.num_states() != num_states())
    fail(ErrorCode::DimensionMismatch, "belief/utility state counts differ");
  // Piecewise-linear interpolation on the Freudenthal triangulation of the
  // simplex mesh, via cumulative coordinates.
  const int r = sample_grid_.mesh_resolution();
  const std::size_t K = num_states();
  std::vector<double> xi(K);
  double acc = 0.0;
  for (std::size_t k = K; k-- > 0;) {
    acc += q[k];
    xi[k] = acc * r;
  }
  std::vector<int> base(K);
  std::vector<double> frac(K);
  for (std::size_t k = 0; k < K; ++k) {
    base[k] = static_cast<int>(std::floor(xi[k] + 1e-12));
    base[k] = std::min(base[k], r);
    frac[k] = xi[k] - base[k];
  }
  base[0] = r;
  frac[0] = 0.0;
  std::vector<std::size_t> order(K);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });

  auto vertex_value = [&](const std::vector<int>& v) {
    std::vector<double> coords(K);
    double sum = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      const int hi = v[k];
      const int lo = k + 1 < K ? v[k + 1] : 0;
      coords[k] = std::max(0.0, static_cast<double>(hi - lo) / r);
      sum += coords[k];
    }
    for (double& c : coords) c /= sum;
    const std::size_t idx = sample_grid_.find(Belief(coords));
    if (idx == BeliefGrid::npos)
      fail(ErrorCode::DomainError, "mesh interpolation left the simplex");
    return sample_values_[idx];
  };

  // Freudenthal cell walk: vertices are base plus unit increments in order
  // of descending fractional part; ties resolve by coordinate index, which
  // keeps every visited vertex monotone in the cumulative coordinates.
  std::vector<double> s(K);
  for (std::size_t t = 0; t < K; ++t) s[t] = frac[order[t]];
  double value = 0.0;
  std::vector<int> vertex = base;
  const double w0 = 1.0 - s[0];
  if (w0 > 1e-15) value += w0 * vertex_value(vertex);
  for (std::size_t t = 1; t <= K; ++t) {
    vertex[order[t - 1]] += 1;
    const double w = t < K ? s[t - 1] - s[t] : s[K - 1];
    if (w > 1e-15) value += w * vertex_value(vertex);
  }
  return value;
}

Rational UtilityFunction::eval_exact(const Rational& x) const {
  if (x < 0 || x > 1)
    fail(ErrorCode::DomainError, "belief outside [0, 1] in exact evaluation");
  if (closed_form_) {
    for (const UtilityPiece& p : pieces_) {
      if (x <= p.hi_exact) {
        if (p.cosine)
          fail(ErrorCode::UnsupportedMode,
               "cosine terms are not available in exact arithmetic");
        Rational v = 0;
        for (auto it = p.poly_exact.rbegin(); it != p.poly_exact.rend(); ++it)
          v = v * x + *it;
        return v;
      }
    }
    fail(ErrorCode::DomainError, "no piece covers the query point");
  }
  if (sample_grid_.num_states() != 2)
    fail(ErrorCode::UnsupportedMode,
         "exact evaluation of sampled utilities is binary-state only");
  const std::vector<double>& pts = sample_grid_.scalar_points();
  const Rational lo = rational_from_double(pts.front());
  const Rational hi = rational_from_double(pts.back());
  if (x <= lo) return rational_from_double(sample_values_.front());
  if (x >= hi) return rational_from_double(sample_values_.back());
  for (std::size_t j = 1; j < pts.size(); ++j) {
    const Rational x1 = rational_from_double(pts[j]);
    if (x <= x1) {
      const Rational x0 = rational_from_double(pts[j - 1]);
      const Rational v0 = rational_from_double(sample_values_[j - 1]);
      const Rational v1 = rational_from_double(sample_values_[j]);
      if (x == x1) return v1;
      return v0 + (v1 - v0) * (x - x0) / (x1 - x0);
    }
  }
  fail(ErrorCode::DomainError, "no cell covers the query point");
}

double expected_utility(const UtilityFunction& u, const FiniteBeliefDistribution& mu) {
  double acc = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i)
    acc += mu.weights()[i] * u.eval(mu.support()[i]);
  return acc;
}

}  // namespace persuasion
