#include "persuasion/problem_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace persuasion {

using nlohmann::json;

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      boost::multiprecision::cpp_int num(text.substr(0, slash));
      boost::multiprecision::cpp_int den(text.substr(slash + 1));
      if (den == 0)
        fail(ErrorCode::InvalidArgument, "rational with zero denominator: " + text);
      return Rational(num, den);
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos)
      return Rational(boost::multiprecision::cpp_int(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    bool negative = false;
    if (!digits.empty() && (digits[0] == '+' || digits[0] == '-')) {
      negative = digits[0] == '-';
      digits = digits.substr(1);
    }
    if (digits.empty()) fail(ErrorCode::InvalidArgument, "bad rational literal: " + text);
    boost::multiprecision::cpp_int num(digits);
    boost::multiprecision::cpp_int den = 1;
    for (std::size_t k = 0; k < text.size() - dot - 1; ++k) den *= 10;
    Rational r(num, den);
    return negative ? Rational(-r) : r;
  } catch (const SolverError&) {
    throw;
  } catch (const std::exception&) {
    fail(ErrorCode::InvalidArgument, "bad rational literal: " + text);
  }
}

namespace {

struct NumberSpec {
  double value = 0.0;
  Rational exact;
};

[[noreturn]] void input_error(const std::string& path, const std::string& what) {
  fail(ErrorCode::InputError, path + ": " + what);
}

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& path) {
  for (const auto& item : obj.items())
    if (!allowed.count(item.key()))
      input_error(path, "unknown field '" + item.key() + "'");
}

NumberSpec parse_number(const json& node, const std::string& path) {
  NumberSpec out;
  if (node.is_number()) {
    out.value = node.get<double>();
    out.exact = rational_from_double(out.value);
    return out;
  }
  if (node.is_string()) {
    try {
      out.exact = parse_rational(node.get<std::string>());
    } catch (const SolverError& e) {
      input_error(path, e.what());
    }
    out.value = to_double(out.exact);
    return out;
  }
  input_error(path, "expected a number or a rational string like \"1/3\"");
}

std::vector<NumberSpec> parse_number_array(const json& node, const std::string& path) {
  if (!node.is_array()) input_error(path, "expected an array of numbers");
  std::vector<NumberSpec> out;
  for (std::size_t i = 0; i < node.size(); ++i)
    out.push_back(parse_number(node[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

UtilityFunction parse_utility(const json& node, std::size_t states,
                              const std::string& path) {
  if (!node.is_object()) input_error(path, "expected a utility object");
  if (!node.contains("type")) input_error(path, "missing 'type'");
  const std::string type = node["type"].get<std::string>();
  const bool continuous = node.value("continuous", true);

  if (type == "piecewise") {
    check_keys(node, {"type", "continuous", "pieces"}, path);
    if (states != 2)
      input_error(path, "piecewise closed forms are defined for 2 states only");
    if (!node.contains("pieces") || !node["pieces"].is_array())
      input_error(path, "missing 'pieces' array");
    std::vector<UtilityPiece> pieces;
    for (std::size_t i = 0; i < node["pieces"].size(); ++i) {
      const json& pj = node["pieces"][i];
      const std::string ppath = path + ".pieces[" + std::to_string(i) + "]";
      check_keys(pj, {"interval", "poly", "cosine"}, ppath);
      if (!pj.contains("interval") || !pj["interval"].is_array() ||
          pj["interval"].size() != 2)
        input_error(ppath, "'interval' must be [lo, hi]");
      UtilityPiece piece;
      const NumberSpec lo = parse_number(pj["interval"][0], ppath + ".interval[0]");
      const NumberSpec hi = parse_number(pj["interval"][1], ppath + ".interval[1]");
      piece.lo = lo.value;
      piece.hi = hi.value;
      piece.lo_exact = lo.exact;
      piece.hi_exact = hi.exact;
      if (pj.contains("poly"))
        for (const NumberSpec& c : parse_number_array(pj["poly"], ppath + ".poly")) {
          piece.poly.push_back(c.value);
          piece.poly_exact.push_back(c.exact);
        }
      if (pj.contains("cosine")) {
        const json& cj = pj["cosine"];
        check_keys(cj, {"amplitude", "frequency", "phase"}, ppath + ".cosine");
        CosineTerm term;
        term.amplitude = parse_number(cj.at("amplitude"), ppath + ".cosine.amplitude").value;
        term.angular_frequency =
            parse_number(cj.at("frequency"), ppath + ".cosine.frequency").value;
        term.phase = parse_number(cj.at("phase"), ppath + ".cosine.phase").value;
        piece.cosine = term;
      }
      pieces.push_back(std::move(piece));
    }
    try {
      return UtilityFunction::piecewise(std::move(pieces), continuous);
    } catch (const SolverError& e) {
      input_error(path, e.what());
    }
  }

  if (type == "grid_sampled") {
    check_keys(node, {"type", "continuous", "points", "mesh_resolution", "values"},
               path);
    if (!node.contains("values")) input_error(path, "missing 'values'");
    std::vector<double> values;
    for (const NumberSpec& v : parse_number_array(node["values"], path + ".values"))
      values.push_back(v.value);
    try {
      if (states == 2) {
        if (!node.contains("points"))
          input_error(path, "binary grid_sampled utilities need 'points'");
        std::vector<double> pts;
        for (const NumberSpec& v :
             parse_number_array(node["points"], path + ".points"))
          pts.push_back(v.value);
        return UtilityFunction::grid_sampled(BeliefGrid::binary_points(pts),
                                             std::move(values), continuous);
      }
      if (!node.contains("mesh_resolution"))
        input_error(path, "grid_sampled utilities with 3+ states need 'mesh_resolution'");
      const int r = node["mesh_resolution"].get<int>();
      return UtilityFunction::grid_sampled(BeliefGrid::simplex_mesh(states, r),
                                           std::move(values), continuous);
    } catch (const SolverError& e) {
      if (e.code() == ErrorCode::InputError) throw;
      input_error(path, e.what());
    }
  }

  input_error(path, "unknown utility type '" + type + "' (piecewise | grid_sampled)");
}

BeliefGrid parse_grid(const json& node, std::size_t states, const std::string& path) {
  if (!node.is_object()) input_error(path, "expected a grid object");
  check_keys(node, {"step", "points", "mesh_resolution"}, path);
  try {
    if (states == 2) {
      if (node.contains("step") == node.contains("points"))
        input_error(path, "binary grids take exactly one of 'step' or 'points'");
      if (node.contains("step"))
        return BeliefGrid::binary_step(
            parse_number(node["step"], path + ".step").value);
      std::vector<double> pts;
      for (const NumberSpec& v : parse_number_array(node["points"], path + ".points"))
        pts.push_back(v.value);
      return BeliefGrid::binary_points(std::move(pts));
    }
    if (!node.contains("mesh_resolution"))
      input_error(path, "grids with 3+ states need 'mesh_resolution'");
    return BeliefGrid::simplex_mesh(states, node["mesh_resolution"].get<int>());
  } catch (const SolverError& e) {
    if (e.code() == ErrorCode::InputError) throw;
    input_error(path, e.what());
  }
}

}  // namespace

ChainProblem parse_problem(const json& doc, const std::string& origin) {
  if (!doc.is_object()) input_error(origin, "problem file must hold a JSON object");
  check_keys(doc,
             {"description", "states", "prior", "sender_utility",
              "mediator_utilities", "grid", "denominator", "eps"},
             origin);
  for (const char* field : {"states", "prior", "sender_utility", "grid"})
    if (!doc.contains(field))
      input_error(origin, std::string("missing required field '") + field + "'");

  const std::size_t states = doc["states"].get<std::size_t>();
  if (states < 2) input_error(origin + ".states", "need at least 2 states");

  if (!doc["prior"].is_array() || doc["prior"].size() != states)
    input_error(origin + ".prior",
                "expected an array of " + std::to_string(states) + " probabilities");
  std::vector<double> prior_coords;
  for (const NumberSpec& v : parse_number_array(doc["prior"], origin + ".prior"))
    prior_coords.push_back(v.value);

  ChainProblem problem{
      parse_utility(doc["sender_utility"], states, origin + ".sender_utility"),
      {},
      Prior{Belief(std::move(prior_coords))},
      parse_grid(doc["grid"], states, origin + ".grid"),
      doc.value("denominator", 1),
      0.0};

  if (doc.contains("mediator_utilities")) {
    if (!doc["mediator_utilities"].is_array())
      input_error(origin + ".mediator_utilities", "expected an array");
    for (std::size_t i = 0; i < doc["mediator_utilities"].size(); ++i)
      problem.mediators.push_back(parse_utility(
          doc["mediator_utilities"][i], states,
          origin + ".mediator_utilities[" + std::to_string(i) + "]"));
  }

  if (doc.contains("eps"))
    problem.eps = parse_number(doc["eps"], origin + ".eps").value;
  if (problem.eps < 0.0) input_error(origin + ".eps", "eps must be nonnegative");
  if (doc.contains("denominator") && problem.denominator < 1)
    input_error(origin + ".denominator", "denominator must be a positive integer");

  // A lattice solve anchors the point mass at the prior, so a declared
  // denominator requires the prior to sit on the grid.
  if (doc.contains("denominator") && !problem.mediators.empty() &&
      problem.grid.find(problem.prior.belief) == BeliefGrid::npos) {
    std::ostringstream msg;
    msg << "prior not representable: prior";
    if (states == 2) msg << " " << problem.prior.belief.scalar();
    msg << " is not a grid point; add it to grid.points or adjust the prior";
    input_error(origin + ".prior", msg.str());
  }
  return problem;
}

ChainProblem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InputError, path + ": cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::InputError, path + ": " + e.what());
  }
  return parse_problem(doc, path);
}

std::string RunReport::to_string(bool include_timing) const {
  json out = body;
  if (include_timing) out["timing_ms"] = elapsed_ms;
  return out.dump(2) + "\n";
}

RunReport RunReport::parse(const std::string& text) {
  RunReport report;
  try {
    report.body = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::InputError, std::string("report parse: ") + e.what());
  }
  if (report.body.contains("timing_ms")) {
    report.elapsed_ms = report.body["timing_ms"].get<double>();
    report.body.erase("timing_ms");
  }
  return report;
}

std::string format_significant(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
  return buf;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "prior,v_s,cav_unconstrained,cav_constrained\n";
  for (const SweepRow& r : rows)
    out << format_significant(r.prior) << ',' << format_significant(r.sender_value)
        << ',' << format_significant(r.cav_unconstrained) << ','
        << format_significant(r.cav_constrained) << '\n';
  return out.str();
}

std::vector<SweepRow> parse_sweep_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line != "prior,v_s,cav_unconstrained,cav_constrained")
    fail(ErrorCode::InputError,
         "csv: expected header 'prior,v_s,cav_unconstrained,cav_constrained'");
  std::vector<SweepRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    SweepRow row;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &row.prior, &row.sender_value,
                    &row.cav_unconstrained, &row.cav_constrained) != 4)
      fail(ErrorCode::InputError,
           "csv line " + std::to_string(lineno) + ": expected four numbers");
    rows.push_back(row);
  }
  if (rows.empty()) fail(ErrorCode::InputError, "csv: no data rows");
  return rows;
}

}  // namespace persuasion
