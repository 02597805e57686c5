#include "persuasion/poset_game.hpp"

#include <string>

namespace persuasion {

namespace {

// Calls fn(j) for every j in the down-set row.
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

void validate(const PosetGame& game) {
  if (game.size == 0) fail(ErrorCode::InvalidArgument, "poset game has no elements");
  if (game.order.size() != game.size)
    fail(ErrorCode::DimensionMismatch, "order matrix size mismatch");
  if (game.utilities.empty())
    fail(ErrorCode::InvalidArgument, "poset game needs at least agent 0's utility");
  for (const auto& w : game.utilities)
    if (w.size() != game.size)
      fail(ErrorCode::DimensionMismatch, "utility vector length mismatch");
  if (game.start && *game.start >= game.size)
    fail(ErrorCode::InvalidArgument, "start element out of range");
  audit_partial_order(game.order);
}

}  // namespace

void audit_partial_order(const OrderBitMatrix& order) {
  const std::size_t n = order.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!order.get(i, i))
      fail(ErrorCode::OrderViolation,
           "relation is not reflexive at element " + std::to_string(i));
    for_each_below(order, i, [&](std::size_t j) {
      if (j != i && order.get(j, i))
        fail(ErrorCode::OrderViolation,
             "relation is not antisymmetric on elements " + std::to_string(i) +
                 " and " + std::to_string(j));
      // j <= i: everything below j must lie below i.
      if (!order.row_subset(j, i))
        fail(ErrorCode::OrderViolation,
             "relation is not transitive through element " + std::to_string(j));
    });
  }
}

PosetValue poset_game_value(const PosetGame& game, double eps,
                            const SolverConfig& config) {
  validate(game);
  if (eps < 0.0) fail(ErrorCode::InvalidArgument, "eps must be nonnegative");
  const std::size_t n_agents = game.utilities.size();  // agents 0..n
  const std::size_t n = game.size;
  const double slack = eps + config.eps_slack;

  PosetValue out;
  out.feasible.assign(n_agents, std::vector<char>(n, 1));
  // out.feasible[i] holds X_{i+1}; X_{n+1} is all of X.
  for (std::size_t agent = n_agents - 1; agent >= 1; --agent) {
    const std::vector<char>& above = out.feasible[agent];  // X_{agent+1}
    std::vector<char>& mine = out.feasible[agent - 1];     // X_{agent}
    const std::vector<double>& w = game.utilities[agent];
    for (std::size_t x = 0; x < n; ++x) {
      if (!above[x]) {
        mine[x] = 0;
        continue;
      }
      bool keep = true;
      for_each_below(game.order, x, [&](std::size_t y) {
        if (keep && above[y] && w[y] > w[x] + slack) keep = false;
      });
      mine[x] = keep;
    }
  }

  const std::vector<char>& x1 = out.feasible[0];
  const std::vector<double>& w0 = game.utilities[0];
  bool have = false;
  auto try_element = [&](std::size_t x) {
    if (!x1[x]) return;
    if (!have || w0[x] > out.value) {
      out.value = w0[x];
      out.argmax = x;
      have = true;
    }
  };
  if (game.start) {
    for_each_below(game.order, *game.start, try_element);
  } else {
    for (std::size_t x = 0; x < n; ++x) try_element(x);
  }
  if (!have)
    fail(ErrorCode::InvalidArgument,
         "empty feasible down-set (start element outside the poset?)");
  return out;
}

double verify_backward_induction(const PosetGame& game, double eps,
                                 const SolverConfig& config) {
  validate(game);
  if (game.size > config.backward_induction_cap)
    fail(ErrorCode::CapExceeded,
         "backward induction cap exceeded: " + std::to_string(game.size) + " > " +
             std::to_string(config.backward_induction_cap));
  const std::size_t n = game.size;
  const std::size_t n_agents = game.utilities.size();
  const double slack = eps + config.eps_slack;

  // final[x] = final token position if the token sits at x before the
  // current agent moves, all later agents playing their computed policies.
  std::vector<std::size_t> final_pos(n);
  for (std::size_t x = 0; x < n; ++x) final_pos[x] = x;

  for (std::size_t agent = n_agents - 1; agent >= 1; --agent) {
    const std::vector<double>& w = game.utilities[agent];
    std::vector<std::size_t> next(n);
    for (std::size_t x = 0; x < n; ++x) {
      // Best reachable continuation value for this agent.
      bool have = false;
      double best = 0.0;
      std::size_t best_move = x;
      for_each_below(game.order, x, [&](std::size_t y) {
        const double v = w[final_pos[y]];
        if (!have || v > best) {
          best = v;
          best_move = y;
          have = true;
        }
      });
      const double stay = w[final_pos[x]];
      // Full-revelation refinement: keep the token when staying is an
      // eps-best reply.
      next[x] = stay >= best - slack ? final_pos[x] : final_pos[best_move];
    }
    final_pos = std::move(next);
  }

  const std::vector<double>& w0 = game.utilities[0];
  bool have = false;
  double value = 0.0;
  auto try_move = [&](std::size_t x) {
    const double v = w0[final_pos[x]];
    if (!have || v > value) {
      value = v;
      have = true;
    }
  };
  if (game.start) {
    for_each_below(game.order, *game.start, try_move);
  } else {
    for (std::size_t x = 0; x < n; ++x) try_move(x);
  }
  if (!have) fail(ErrorCode::InvalidArgument, "no move available to agent 0");
  return value;
}

}  // namespace persuasion
