#include "persuasion/domination.hpp"

#include <algorithm>
#include <cmath>

#include "persuasion/envelope.hpp"

namespace persuasion {

namespace {

double horner(const std::vector<double>& poly, double x) {
  double v = 0.0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) v = v * x + *it;
  return v;
}

double piece_value(const UtilityPiece& p, double x) {
  double v = horner(p.poly, x);
  if (p.cosine)
    v += p.cosine->amplitude *
         std::cos(p.cosine->angular_frequency * x + p.cosine->phase);
  return v;
}

int effective_degree(const std::vector<double>& poly) {
  int d = -1;
  for (std::size_t k = 0; k < poly.size(); ++k)
    if (poly[k] != 0.0) d = static_cast<int>(k);
  return d;
}

void consider(double x, double value, double chord_a, double slope, double a,
              PairCheck& out) {
  const double gap = value - (chord_a + slope * (x - a));
  if (gap > out.gap) {
    out.gap = gap;
    out.violating_point = x;
  }
}

}  // namespace

PairCheck check_pair_scalar(const UtilityFunction& u, double a, double b,
                            const DominationOptions& opt) {
  if (a > b) std::swap(a, b);
  PairCheck out;
  out.gap = 0.0;
  if (b - a <= 1e-15) return out;

  const double ua = u.eval_scalar(a), ub = u.eval_scalar(b);
  const double slope = (ub - ua) / (b - a);

  if (!u.is_closed_form()) {
    // Piecewise linear between sample points: kinks decide.
    const std::vector<double>& pts = u.sample_grid().scalar_points();
    for (double x : pts)
      if (x > a && x < b) consider(x, u.eval_scalar(x), ua, slope, a, out);
    consider(a, ua, ua, slope, a, out);
    consider(b, ub, ua, slope, a, out);
  } else {
    for (const UtilityPiece& p : u.pieces()) {
      const double lo = std::max(p.lo, a);
      const double hi = std::min(p.hi, b);
      if (lo > hi) continue;
      // Piece closure values at both cut points: this also sees the far
      // side of a jump at a shared breakpoint.
      consider(lo, piece_value(p, lo), ua, slope, a, out);
      consider(hi, piece_value(p, hi), ua, slope, a, out);
      if (p.cosine) {
        const double fine = opt.step / 10.0;
        for (double x = lo + fine; x < hi; x += fine)
          consider(x, piece_value(p, x), ua, slope, a, out);
        continue;
      }
      const int deg = effective_degree(p.poly);
      if (deg <= 1) continue;
      if (deg == 2) {
        // Stationary point of (piece - chord) in closed form.
        const double c1 = p.poly.size() > 1 ? p.poly[1] : 0.0;
        const double c2 = p.poly[2];
        const double x_star = (slope - c1) / (2.0 * c2);
        if (x_star > lo && x_star < hi)
          consider(x_star, piece_value(p, x_star), ua, slope, a, out);
        continue;
      }
      for (double x = lo + opt.step; x < hi; x += opt.step)
        consider(x, piece_value(p, x), ua, slope, a, out);
    }
  }
  out.dominating = out.gap <= opt.tolerance;
  return out;
}

bool check_collection(const UtilityFunction& u, const std::vector<Belief>& beliefs,
                      const DominationOptions& opt) {
  if (beliefs.empty())
    fail(ErrorCode::InvalidArgument, "collection check needs at least one belief");
  const std::size_t states = beliefs[0].num_states();
  if (beliefs.size() > states)
    fail(ErrorCode::InvalidArgument,
         "collection longer than the number of states");
  if (beliefs.size() == 1) return true;
  if (states == 2)
    return check_pair_scalar(u, beliefs[0].scalar(), beliefs[1].scalar(), opt)
        .dominating;

  // General case: sample the weight simplex.
  const std::size_t k = beliefs.size();
  long r = std::lround(1.0 / opt.step);
  r = std::clamp(r, 1l, 60l);
  std::vector<int> alpha(k, 0);
  bool ok = true;
  auto rec = [&](auto&& self, std::size_t pos, int remaining) -> void {
    if (!ok) return;
    if (pos + 1 == k) {
      alpha[pos] = remaining;
      double lhs = 0.0;
      std::vector<double> mix(states, 0.0);
      for (std::size_t i = 0; i < k; ++i) {
        const double w = static_cast<double>(alpha[i]) / r;
        lhs += w * u.eval(beliefs[i]);
        for (std::size_t d = 0; d < states; ++d) mix[d] += w * beliefs[i][d];
      }
      if (lhs < u.eval(Belief(mix)) - opt.tolerance) ok = false;
      return;
    }
    for (int t = 0; t <= remaining && ok; ++t) {
      alpha[pos] = t;
      self(self, pos + 1, remaining - t);
    }
  };
  rec(rec, 0, static_cast<int>(r));
  return ok;
}

SetCheck check_set_detail(const UtilityFunction& u, const std::vector<Belief>& points,
                          const BeliefGrid& mean_grid, const DominationOptions& opt) {
  if (points.empty())
    fail(ErrorCode::InvalidArgument, "set check needs at least one point");
  SetCheck out;
  std::vector<ValueAtBelief> data;
  data.reserve(points.size());
  for (const Belief& q : points) data.push_back(ValueAtBelief{q, u.eval(q)});

  if (points[0].num_states() == 2) {
    std::vector<double> xs, ys;
    for (const ValueAtBelief& p : data) {
      xs.push_back(p.belief.scalar());
      ys.push_back(p.value);
    }
    const double lo = *std::min_element(xs.begin(), xs.end());
    const double hi = *std::max_element(xs.begin(), xs.end());
    LowerHull1D hull(std::move(xs), std::move(ys));
    for (double m : mean_grid.scalar_points()) {
      if (m < lo || m > hi) continue;
      const double gap = u.eval_scalar(m) - hull(m);
      if (gap > out.gap) {
        out.gap = gap;
        out.violating_mean = m;
      }
    }
  } else {
    for (std::size_t i = 0; i < mean_grid.size(); ++i) {
      const Belief m = mean_grid.point(i);
      double env;
      try {
        env = lower_convex_envelope(data, m);
      } catch (const SolverError& e) {
        if (e.code() == ErrorCode::DomainError) continue;  // outside hull
        throw;
      }
      const double gap = u.eval(m) - env;
      if (gap > out.gap) {
        out.gap = gap;
        out.violating_mean = m[m.num_states() - 1];
      }
    }
  }
  out.dominating = out.gap <= opt.tolerance;
  return out;
}

bool check_set(const UtilityFunction& u, const std::vector<Belief>& points,
               const BeliefGrid& mean_grid, const DominationOptions& opt) {
  return check_set_detail(u, points, mean_grid, opt).dominating;
}

bool check_set_via_pairs(const UtilityFunction& u, const std::vector<Belief>& points,
                         const DominationOptions& opt) {
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i; j < points.size(); ++j)
      if (!check_pair_scalar(u, points[i].scalar(), points[j].scalar(), opt)
               .dominating)
        return false;
  return true;
}

std::vector<Belief> dominating_partners(const UtilityFunction& u, const Belief& q1,
                                        const BeliefGrid& grid,
                                        const DominationOptions& opt) {
  if (q1.num_states() != 2)
    fail(ErrorCode::InvalidArgument, "dominating_partners is binary-state only");
  std::vector<Belief> out;
  const double x1 = q1.scalar();
  for (double x2 : grid.scalar_points())
    if (check_pair_scalar(u, x1, x2, opt).dominating)
      out.push_back(Belief::binary(x2));
  return out;
}

std::vector<std::vector<char>> pair_domination_table(const UtilityFunction& u,
                                                     const std::vector<double>& points,
                                                     const DominationOptions& opt) {
  const std::size_t m = points.size();
  std::vector<std::vector<char>> table(m, std::vector<char>(m, 0));
  for (std::size_t i = 0; i < m; ++i) {
    table[i][i] = 1;
    for (std::size_t j = i + 1; j < m; ++j) {
      const char d = check_pair_scalar(u, points[i], points[j], opt).dominating;
      table[i][j] = d;
      table[j][i] = d;
    }
  }
  return table;
}

namespace {

// Bron-Kerbosch with pivoting; grids are small, sets are index vectors.
void bron_kerbosch(const std::vector<std::vector<char>>& adj, std::vector<std::size_t>& R,
                   std::vector<std::size_t> P, std::vector<std::size_t> X,
                   std::vector<std::vector<std::size_t>>& out, std::size_t cap) {
  if (P.empty() && X.empty()) {
    out.push_back(R);
    if (out.size() > cap)
      fail(ErrorCode::CapExceeded, "maximal clique enumeration exceeded the cap");
    return;
  }
  std::size_t pivot = static_cast<std::size_t>(-1);
  std::size_t best = 0;
  for (const auto* set : {&P, &X})
    for (std::size_t v : *set) {
      std::size_t deg = 0;
      for (std::size_t w : P) deg += adj[v][w];
      if (pivot == static_cast<std::size_t>(-1) || deg > best) {
        pivot = v;
        best = deg;
      }
    }
  std::vector<std::size_t> candidates;
  for (std::size_t v : P)
    if (!adj[pivot][v]) candidates.push_back(v);
  for (std::size_t v : candidates) {
    std::vector<std::size_t> P2, X2;
    for (std::size_t w : P)
      if (adj[v][w] && w != v) P2.push_back(w);
    for (std::size_t w : X)
      if (adj[v][w] && w != v) X2.push_back(w);
    R.push_back(v);
    bron_kerbosch(adj, R, std::move(P2), std::move(X2), out, cap);
    R.pop_back();
    P.erase(std::find(P.begin(), P.end(), v));
    X.push_back(v);
  }
}

}  // namespace

SupportFamily maximal_dominating_supports(const UtilityFunction& u,
                                          const BeliefGrid& grid,
                                          const DominationOptions& opt) {
  if (grid.num_states() != 2)
    fail(ErrorCode::InvalidArgument,
         "maximal support enumeration is binary-state only");
  const std::vector<double>& pts = grid.scalar_points();
  const auto adj = pair_domination_table(u, pts, opt);

  std::vector<std::size_t> R, P(pts.size()), X;
  for (std::size_t i = 0; i < pts.size(); ++i) P[i] = i;
  std::vector<std::vector<std::size_t>> cliques;
  bron_kerbosch(adj, R, std::move(P), std::move(X), cliques, opt.clique_cap);

  for (auto& c : cliques) std::sort(c.begin(), c.end());
  std::sort(cliques.begin(), cliques.end());
  cliques.erase(std::unique(cliques.begin(), cliques.end()), cliques.end());

  // Pairwise domination implies set domination in one dimension (the
  // envelope facets are chords); confirm against the set-level check.
  for (const auto& c : cliques) {
    std::vector<Belief> beliefs;
    for (std::size_t i : c) beliefs.push_back(Belief::binary(pts[i]));
    if (!check_set(u, beliefs, grid, opt))
      fail(ErrorCode::InvalidArgument,
           "internal inconsistency: clique failed the set-level check");
  }

  SupportFamily family;
  family.supports = std::move(cliques);
  family.all_maximal = true;
  return family;
}

}  // namespace persuasion
