#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "persuasion/solver_chain.hpp"

namespace persuasion {

// Parses and fully validates a problem file (JSON).  Unknown fields are
// rejected; messages carry the offending field path and a remediation hint
// where one exists.
ChainProblem load_problem(const std::string& path);
ChainProblem parse_problem(const nlohmann::json& doc, const std::string& origin);

// Everything a run emits: command echo, resolved configuration, result
// payload, warnings.  Timing is kept out of the serialized form unless
// explicitly requested so repeated runs stay byte-identical.
struct RunReport {
  nlohmann::json body = nlohmann::json::object();
  double elapsed_ms = 0.0;

  std::string to_string(bool include_timing = false) const;
  static RunReport parse(const std::string& text);
};

struct SweepRow {
  double prior = 0.0;
  double sender_value = 0.0;
  double cav_unconstrained = 0.0;
  double cav_constrained = 0.0;
};

// Header "prior,v_s,cav_unconstrained,cav_constrained"; 12 significant
// digits.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> parse_sweep_csv(const std::string& text);

std::string format_significant(double value, int digits = 12);

}  // namespace persuasion
