#include "persuasion/cli.hpp"

#include <chrono>
#include <optional>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "persuasion/envelope.hpp"
#include "persuasion/problem_io.hpp"
#include "persuasion/solver_single.hpp"
#include "persuasion/svg.hpp"

namespace persuasion::cli {

namespace {

using nlohmann::json;

constexpr int kOk = 0, kInputError = 2, kSolverError = 3, kVerifyFail = 4;

struct CommonFlags {
  std::string input;
  double eps = -1.0;  // <0 means "use the file's value"
  double grid_step = 0.0;
  int denominator = 0;
  bool rational = false;
  bool timing = false;
};

ChainProblem load_with_overrides(const CommonFlags& flags) {
  ChainProblem problem = load_problem(flags.input);
  if (flags.eps >= 0.0) problem.eps = flags.eps;
  if (flags.grid_step > 0.0) problem.grid = BeliefGrid::binary_step(flags.grid_step);
  if (flags.denominator > 0) problem.denominator = flags.denominator;
  return problem;
}

json grid_echo(const BeliefGrid& grid) {
  json out;
  out["descriptor"] = grid.descriptor();
  out["size"] = grid.size();
  if (grid.num_states() == 2 && grid.size() <= 32) out["points"] = grid.scalar_points();
  return out;
}

json config_echo(const ChainProblem& problem, const CommonFlags& flags,
                 const std::string& mode) {
  json cfg;
  cfg["input"] = flags.input;
  cfg["states"] = problem.prior.belief.num_states();
  cfg["prior"] = problem.prior.belief.coords();
  cfg["mediators"] = problem.mediators.size();
  cfg["eps"] = problem.eps;
  cfg["denominator"] = problem.denominator;
  cfg["rational"] = flags.rational;
  cfg["grid"] = grid_echo(problem.grid);
  cfg["mode"] = mode;
  return cfg;
}

json distribution_json(const FiniteBeliefDistribution& dist) {
  json out;
  if (dist.num_states() == 2) {
    std::vector<double> pts;
    for (const Belief& b : dist.support()) pts.push_back(b.scalar());
    out["points"] = pts;
  } else {
    json pts = json::array();
    for (const Belief& b : dist.support()) pts.push_back(b.coords());
    out["points"] = pts;
  }
  out["weights"] = dist.weights();
  return out;
}

std::string solve_mode(const ChainProblem& problem, bool rational) {
  if (problem.mediators.empty()) return "unconstrained";
  if (problem.mediators.size() == 1 && problem.eps == 0.0 && !rational)
    return "single";
  return "chain";
}

int exit_code_for(const SolverError& e) {
  switch (e.code()) {
    case ErrorCode::InputError:
    case ErrorCode::NotRepresentable:
      return kInputError;
    default:
      return kSolverError;
  }
}

void emit(std::ostream& out, const RunReport& report, bool timing) {
  out << report.to_string(timing);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::InputError, path + ": cannot open for writing");
  f << content;
  if (!f) fail(ErrorCode::InputError, path + ": write failed");
}

std::vector<double> parse_double_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(token, &pos));
      while (pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos])))
        ++pos;
      if (pos != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      fail(ErrorCode::InputError, what + ": bad number '" + token + "'");
    }
  }
  if (out.empty()) fail(ErrorCode::InputError, what + ": empty list");
  return out;
}

json solve_to_json(const ChainProblem& problem, const CommonFlags& flags,
                   const std::string& mode) {
  json result;
  result["mode"] = mode;
  if (mode == "single") {
    SingleSolveResult r =
        solve_single(problem.sender, problem.mediators[0], problem.prior.belief,
                     problem.grid);
    result["value"] = r.value;
    std::vector<double> posts;
    for (const Belief& b : r.posteriors) posts.push_back(b.scalar());
    result["posteriors"] = posts;
    result["weights"] = r.weights;
    result["used_no_information"] = r.used_no_information;
    return result;
  }
  ChainSolveOptions options;
  options.rational = flags.rational;
  ChainSolveResult r = solve_chain(problem, options);
  result["value"] = r.value;
  if (!r.value_exact.empty()) result["value_exact"] = r.value_exact;
  result["distribution"] = distribution_json(*r.optimal);
  result["support_size"] = r.optimal->size();
  if (r.used_lattice) {
    result["feasible_set_sizes"] = r.feasible_counts;
    result["lattice"] = {{"elements", r.lattice_elements},
                         {"order_edges", r.order_edges}};
    if (flags.rational) {
      std::vector<std::string> wx;
      for (double w : r.optimal->weights()) {
        const long num = std::lround(w * problem.denominator);
        Rational q(num, problem.denominator);
        wx.push_back(rational_to_string(q));
      }
      result["weights_exact"] = wx;
    }
  }
  if (!r.warnings.empty()) result["warnings"] = r.warnings;
  return result;
}

int cmd_solve(const CommonFlags& flags, std::ostream& out, std::ostream& err) {
  std::optional<ChainProblem> loaded;
  try {
    loaded = load_with_overrides(flags);
  } catch (const SolverError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  ChainProblem& problem = *loaded;
  const std::string mode = solve_mode(problem, flags.rational);
  RunReport report;
  report.body["command"] = "solve";
  report.body["config"] = config_echo(problem, flags, mode);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    report.body["result"] = solve_to_json(problem, flags, mode);
  } catch (const SolverError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  report.body["warnings"] = json::array();
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
          .count();
  emit(out, report, flags.timing);
  return kOk;
}

struct SweepArgs {
  double from = 0.0, to = 1.0, step = 0.01;
  std::string svg_path;
};

int cmd_sweep(const CommonFlags& flags, const SweepArgs& args, std::ostream& out,
              std::ostream& err) {
  std::optional<ChainProblem> loaded;
  try {
    loaded = load_with_overrides(flags);
  } catch (const SolverError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  ChainProblem& problem = *loaded;
  try {
    if (problem.prior.belief.num_states() != 2)
      fail(ErrorCode::UnsupportedMode, "sweep is binary-state only");
    if (args.step <= 0.0) fail(ErrorCode::InputError, "--step must be positive");
    if (args.to < args.from) fail(ErrorCode::InputError, "--to must be >= --from");

    std::vector<double> priors;
    const long steps = std::lround((args.to - args.from) / args.step);
    for (long k = 0; k <= steps; ++k) {
      const double p = args.from + static_cast<double>(k) * args.step;
      if (p <= args.to + 1e-12) priors.push_back(std::min(p, args.to));
    }

    LowerHull1D hull = upper_concave_hull(problem.sender, problem.grid);
    std::vector<SweepRow> rows;
    std::optional<ChordHighlight> chord;

    if (problem.mediators.size() <= 1 && problem.eps == 0.0) {
      std::vector<std::pair<double, double>> constrained;
      if (problem.mediators.empty()) {
        for (double p : priors) constrained.emplace_back(p, -hull(p));
      } else {
        constrained = sweep_single(problem.sender, problem.mediators[0],
                                   BeliefGrid::binary_points(priors), problem.grid);
      }
      for (std::size_t i = 0; i < priors.size(); ++i) {
        SweepRow row;
        row.prior = priors[i];
        row.sender_value = problem.sender.eval_scalar(priors[i]);
        row.cav_unconstrained = -hull(priors[i]);
        row.cav_constrained = constrained[i].second;
        rows.push_back(row);
      }
      if (!args.svg_path.empty() && !problem.mediators.empty()) {
        // Highlight the optimal chord at the middle prior when it splits.
        ChainProblem at_mid = problem;
        at_mid.prior = Prior{Belief::binary(priors[priors.size() / 2])};
        SingleSolveResult mid =
            solve_single(at_mid.sender, at_mid.mediators[0], at_mid.prior.belief,
                         at_mid.grid);
        if (mid.posteriors.size() == 2) {
          const double a = mid.posteriors[0].scalar(), b = mid.posteriors[1].scalar();
          chord = ChordHighlight{a, problem.sender.eval_scalar(a), b,
                                 problem.sender.eval_scalar(b)};
        }
      }
    } else {
      for (double p : priors) {
        ChainProblem sub = problem;
        sub.prior = Prior{Belief::binary(p)};
        ChainSolveResult r = solve_chain(sub);
        SweepRow row;
        row.prior = p;
        row.sender_value = problem.sender.eval_scalar(p);
        row.cav_unconstrained = -hull(p);
        row.cav_constrained = r.value;
        rows.push_back(row);
      }
    }

    out << sweep_to_csv(rows);
    if (!args.svg_path.empty()) write_file(args.svg_path, render_sweep_svg(rows, chord));
    return kOk;
  } catch (const SolverError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

struct CheckArgs {
  std::string pair, set, dist;
  int mediator = 1;
};

int cmd_check(const CommonFlags& flags, const CheckArgs& args, std::ostream& out,
              std::ostream& err) {
  std::optional<ChainProblem> loaded;
  try {
    loaded = load_with_overrides(flags);
  } catch (const SolverError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  ChainProblem& problem = *loaded;
  try {
    const int given = (!args.pair.empty()) + (!args.set.empty()) + (!args.dist.empty());
    if (given != 1)
      fail(ErrorCode::InputError,
           "check needs exactly one of --pair, --set, --dist");
    if (args.mediator < 1 ||
        static_cast<std::size_t>(args.mediator) > problem.mediators.size())
      fail(ErrorCode::InputError,
           "--mediator out of range (problem has " +
               std::to_string(problem.mediators.size()) + ")");
    const UtilityFunction& target =
        problem.mediators[static_cast<std::size_t>(args.mediator - 1)];

    RunReport report;
    report.body["command"] = "check";
    report.body["config"] = config_echo(problem, flags, "check");
    report.body["config"]["mediator"] = args.mediator;
    json result;

    if (!args.pair.empty()) {
      std::vector<double> q = parse_double_list(args.pair, "--pair");
      if (q.size() != 2) fail(ErrorCode::InputError, "--pair needs two beliefs");
      PairCheck pc = check_pair_scalar(target, q[0], q[1]);
      result["check"] = "pair";
      result["query"] = q;
      result["dominating"] = pc.dominating;
      if (!pc.dominating) {
        const double a = std::min(q[0], q[1]), b = std::max(q[0], q[1]);
        result["violating_mean"] = pc.violating_point;
        result["gap"] = pc.gap;
        if (b > a)
          result["violating_weights"] =
              std::vector<double>{(b - pc.violating_point) / (b - a),
                                  (pc.violating_point - a) / (b - a)};
      }
    } else if (!args.set.empty()) {
      std::vector<double> q = parse_double_list(args.set, "--set");
      std::vector<Belief> beliefs;
      for (double x : q) beliefs.push_back(Belief::binary(x));
      SetCheck sc = check_set_detail(target, beliefs, problem.grid);
      result["check"] = "set";
      result["query"] = q;
      result["dominating"] = sc.dominating;
      if (!sc.dominating) {
        result["violating_mean"] = sc.violating_mean;
        result["gap"] = sc.gap;
      }
    } else {
      std::vector<double> w = parse_double_list(args.dist, "--dist");
      if (w.size() != problem.grid.size())
        fail(ErrorCode::InputError,
             "--dist needs one weight per grid point (" +
                 std::to_string(problem.grid.size()) + ")");
      std::vector<double> pts = problem.grid.scalar_points();
      FiniteBeliefDistribution mu = FiniteBeliefDistribution::binary(pts, w);
      MembershipResult mr =
          membership_M_eps(mu, target, problem.grid, std::max(problem.eps, 0.0));
      result["check"] = "distribution";
      result["weights"] = w;
      result["member"] = mr.member;
      result["utility"] = mr.utility;
      result["best_deviation_value"] = mr.best_deviation_value;
      if (!mr.member) result["deviation_weights"] = mr.deviation_weights;
    }

    report.body["result"] = result;
    report.body["warnings"] = json::array();
    emit(out, report, flags.timing);
    return kOk;
  } catch (const SolverError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

bool color_allowed(const std::ostream& err) {
  return &err == &std::cerr && std::getenv("NO_COLOR") == nullptr;
}

int cmd_verify(const CommonFlags& flags, std::ostream& out, std::ostream& err) {
  std::optional<ChainProblem> loaded;
  try {
    loaded = load_with_overrides(flags);
  } catch (const SolverError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  ChainProblem& problem = *loaded;
  try {
    if (problem.mediators.empty())
      fail(ErrorCode::InputError, "verify needs at least one mediator");
    ChainSolveResult chain = solve_chain(problem);

    DistributionLattice lattice(problem.grid, problem.denominator, problem.prior);
    const SolverConfig& cfg = SolverConfig::defaults();
    if (lattice.size() > cfg.backward_induction_cap)
      fail(ErrorCode::CapExceeded,
           "lattice too large for the backward-induction verifier (" +
               std::to_string(lattice.size()) +
               " elements); use a coarser grid or smaller denominator");
    PosetGame game =
        chain_to_poset_game(lattice, problem.sender, problem.mediators);
    PosetValue pv = poset_game_value(game, problem.eps);
    const double bi = verify_backward_induction(game, problem.eps);

    const bool pass = chain.value == pv.value && pv.value == bi;
    RunReport report;
    report.body["command"] = "verify";
    report.body["config"] = config_echo(problem, flags, "verify");
    report.body["result"] = {{"chain_value", chain.value},
                             {"poset_value", pv.value},
                             {"backward_induction_value", bi},
                             {"verdict", pass ? "PASS" : "FAIL"}};
    report.body["warnings"] = json::array();
    emit(out, report, flags.timing);
    const char* green = color_allowed(err) ? "\033[32m" : "";
    const char* red = color_allowed(err) ? "\033[31m" : "";
    const char* reset = color_allowed(err) ? "\033[0m" : "";
    err << "verify: " << (pass ? green : red) << (pass ? "PASS" : "FAIL") << reset
        << " (chain=" << format_significant(chain.value)
        << ", backward_induction=" << format_significant(bi) << ")\n";
    return pass ? kOk : kVerifyFail;
  } catch (const SolverError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

int cmd_plot(const std::string& csv_path, const std::string& out_path,
             std::ostream& err) {
  try {
    std::ifstream in(csv_path, std::ios::binary);
    if (!in) fail(ErrorCode::InputError, csv_path + ": cannot open file");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::vector<SweepRow> rows = parse_sweep_csv(buffer.str());
    write_file(out_path, render_sweep_svg(rows));
    return kOk;
  } catch (const SolverError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"mediated-persuasion solver"};
  app.require_subcommand(1);

  CommonFlags flags;
  SweepArgs sweep_args;
  CheckArgs check_args;
  std::string plot_csv, plot_out;

  auto add_common = [&](CLI::App* cmd, bool with_solver_flags) {
    cmd->add_option("file", flags.input, "problem file (JSON)")->required();
    cmd->add_option("--eps", flags.eps, "override the problem's eps");
    if (with_solver_flags) {
      cmd->add_option("--grid-step", flags.grid_step, "override with a step grid");
      cmd->add_option("--denominator", flags.denominator,
                      "override the lattice denominator");
    }
    cmd->add_flag("--timing", flags.timing, "include timing in the report");
  };

  CLI::App* solve = app.add_subcommand("solve", "compute the sender's optimal value");
  add_common(solve, true);
  solve->add_flag("--rational", flags.rational, "exact rational arithmetic");

  CLI::App* sweep = app.add_subcommand("sweep", "value across a prior range (CSV)");
  add_common(sweep, true);
  sweep->add_option("--from", sweep_args.from, "first prior")->required();
  sweep->add_option("--to", sweep_args.to, "last prior")->required();
  sweep->add_option("--step", sweep_args.step, "prior increment")->required();
  sweep->add_option("--svg", sweep_args.svg_path, "also render an SVG");

  CLI::App* check = app.add_subcommand("check", "affine-domination checks");
  add_common(check, false);
  check->add_option("--pair", check_args.pair, "q1,q2");
  check->add_option("--set", check_args.set, "q1,q2,...");
  check->add_option("--dist", check_args.dist, "weights over the grid points");
  check->add_option("--mediator", check_args.mediator, "1-based mediator index");

  CLI::App* verify = app.add_subcommand("verify", "cross-check the chain solver");
  add_common(verify, true);

  CLI::App* plot = app.add_subcommand("plot", "render a sweep CSV as SVG");
  plot->add_option("csv", plot_csv, "sweep CSV path")->required();
  plot->add_option("-o,--output", plot_out, "output SVG path")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (solve->parsed()) return cmd_solve(flags, out, err);
    if (sweep->parsed()) return cmd_sweep(flags, sweep_args, out, err);
    if (check->parsed()) return cmd_check(flags, check_args, out, err);
    if (verify->parsed()) return cmd_verify(flags, out, err);
    if (plot->parsed()) return cmd_plot(plot_csv, plot_out, err);
  } catch (const SolverError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  return kInputError;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace persuasion::cli
