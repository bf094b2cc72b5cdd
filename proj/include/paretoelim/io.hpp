#pragma once

// File formats. Problems:
//   { "decision_vars": [...], "objectives": [<term list>...],
//     "constraints": [<term list>...], "weight_mode": "convex" | "explicit" }
// Every malformed input raises SchemaError naming the offending field.

#include <string>
#include <vector>

#include <json.hpp>

#include "paretoelim/eliminate.hpp"
#include "paretoelim/front.hpp"
#include "paretoelim/problem.hpp"

namespace paretoelim {

nlohmann::json problem_to_json(const MOProblem& p);
MOProblem problem_from_json(const nlohmann::json& j);

MOProblem load_problem(const std::string& path);
void save_problem(const MOProblem& p, const std::string& path);

/// Parses a JSON file; IoError when unreadable, SchemaError (with line and
/// column) when malformed.
nlohmann::json read_json_file(const std::string& path);
/// Pretty-printed with a trailing newline.
void write_json_file(const nlohmann::json& j, const std::string& path);

EliminantSystem load_eliminant(const std::string& path);

/// { "y": [...], "n_a": k }
struct SysidInput {
  std::vector<double> y;
  int n_a = 1;
};
SysidInput sysid_input_from_json(const nlohmann::json& j);

/// One ParetoPoint per line.
void write_points_jsonl(const std::string& path, const std::vector<ParetoPoint>& points);

}  // namespace paretoelim
