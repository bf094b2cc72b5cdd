#include "paretoelim/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "paretoelim/errors.hpp"

namespace paretoelim {

namespace {

const nlohmann::json& field(const nlohmann::json& j, const char* name) {
  if (!j.contains(name)) throw SchemaError(std::string("missing field '") + name + "'");
  return j.at(name);
}

std::vector<Polynomial> polynomial_list(const nlohmann::json& j, const char* name, const SpacePtr& space) {
  const auto& list = field(j, name);
  if (!list.is_array()) throw SchemaError(std::string("'") + name + "' must be an array of term lists");
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    try {
      out.push_back(polynomial_from_json(list[i], space));
    } catch (const SchemaError& e) {
      throw SchemaError(std::string(name) + "[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return out;
}

}  // namespace

nlohmann::json problem_to_json(const MOProblem& p) {
  p.validate();
  nlohmann::json j;
  j["decision_vars"] = p.decision_space->names();
  j["objectives"] = nlohmann::json::array();
  for (const auto& f : p.objectives) j["objectives"].push_back(to_json(f));
  j["constraints"] = nlohmann::json::array();
  for (const auto& g : p.constraints) j["constraints"].push_back(to_json(g));
  j["weight_mode"] = std::string(to_string(p.weight_mode));
  return j;
}

MOProblem problem_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("problem must be a JSON object");
  const auto& vars = field(j, "decision_vars");
  if (!vars.is_array() || vars.empty()) throw SchemaError("'decision_vars' must be a non-empty array of names");
  std::vector<std::string> names;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (!vars[i].is_string()) throw SchemaError("decision_vars[" + std::to_string(i) + "] must be a string");
    const auto name = vars[i].get<std::string>();
    if (!seen.insert(name).second) throw SchemaError("decision_vars: duplicate variable '" + name + "'");
    names.push_back(name);
  }
  SpacePtr space;
  try {
    space = VariableSpace::create(names, Role::decision);
  } catch (const InvalidArgument& e) {
    throw SchemaError(std::string("decision_vars: ") + e.what());
  }
  auto objectives = polynomial_list(j, "objectives", space);
  if (objectives.size() < 2)
    throw SchemaError("'objectives' needs at least two entries, got " + std::to_string(objectives.size()));
  std::vector<Polynomial> constraints;
  if (j.contains("constraints")) constraints = polynomial_list(j, "constraints", space);
  WeightMode mode = WeightMode::convex;
  if (j.contains("weight_mode")) {
    if (!j["weight_mode"].is_string()) throw SchemaError("'weight_mode' must be a string");
    try {
      mode = weight_mode_from_string(j["weight_mode"].get<std::string>());
    } catch (const InvalidArgument& e) {
      throw SchemaError(e.what());
    }
  }
  MOProblem p;
  p.decision_space = space;
  p.objectives = std::move(objectives);
  p.constraints = std::move(constraints);
  p.weight_mode = mode;
  try {
    p.validate();
  } catch (const InvalidArgument& e) {
    throw SchemaError(e.what());
  }
  return p;
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // translate the byte offset into line:column
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SchemaError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

void write_json_file(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

MOProblem load_problem(const std::string& path) {
  const auto j = read_json_file(path);
  try {
    return problem_from_json(j);
  } catch (const SchemaError& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

void save_problem(const MOProblem& p, const std::string& path) { write_json_file(problem_to_json(p), path); }

EliminantSystem load_eliminant(const std::string& path) {
  const auto j = read_json_file(path);
  try {
    return eliminant_from_json(j);
  } catch (const SchemaError& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

SysidInput sysid_input_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("sysid input must be a JSON object");
  const auto& y = field(j, "y");
  if (!y.is_array()) throw SchemaError("'y' must be an array of numbers");
  SysidInput in;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!y[i].is_number()) throw SchemaError("y[" + std::to_string(i) + "] must be a number");
    in.y.push_back(y[i].get<double>());
  }
  const auto& na = field(j, "n_a");
  if (!na.is_number_integer()) throw SchemaError("'n_a' must be an integer");
  in.n_a = na.get<int>();
  return in;
}

void write_points_jsonl(const std::string& path, const std::vector<ParetoPoint>& points) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  for (const auto& p : points) out << to_json(p).dump() << '\n';
}

}  // namespace paretoelim
