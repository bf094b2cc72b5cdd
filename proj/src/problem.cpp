#include "paretoelim/problem.hpp"

#include <algorithm>

#include "paretoelim/errors.hpp"

namespace paretoelim {

std::string_view to_string(WeightMode mode) {
  return mode == WeightMode::convex ? "convex" : "explicit";
}

WeightMode weight_mode_from_string(std::string_view text) {
  if (text == "convex") return WeightMode::convex;
  if (text == "explicit") return WeightMode::explicit_weights;
  throw InvalidArgument("weight_mode must be \"convex\" or \"explicit\", got '" + std::string(text) + "'");
}

void MOProblem::validate() const {
  if (!decision_space || decision_space->size() == 0) throw InvalidArgument("problem has no decision variables");
  if (objectives.size() < 2)
    throw InvalidArgument("a multi-objective problem needs at least two objectives, got " +
                          std::to_string(objectives.size()));
  auto check = [&](const std::vector<Polynomial>& polys, const char* what) {
    for (std::size_t i = 0; i < polys.size(); ++i)
      if (!same_space(polys[i].space(), decision_space))
        throw InvalidArgument(std::string(what) + " " + std::to_string(i + 1) +
                              " is not a polynomial in the decision variables");
  };
  check(objectives, "objective");
  check(constraints, "constraint");
}

MOProblem make_problem(std::vector<std::string> decision_vars, std::vector<Polynomial> objectives,
                       std::vector<Polynomial> constraints, WeightMode mode) {
  MOProblem p;
  p.decision_space = VariableSpace::create(std::move(decision_vars), Role::decision);
  for (auto& f : objectives) p.objectives.push_back(embed(f, p.decision_space));
  for (auto& g : constraints) p.constraints.push_back(embed(g, p.decision_space));
  p.weight_mode = mode;
  p.validate();
  return p;
}

int PFSystem::max_degree() const {
  int d = -1;
  for (int di : degrees) d = std::max(d, di);
  return d;
}

PFSystem make_pf_system(SpacePtr space, std::vector<Polynomial> equations) {
  PFSystem sys;
  sys.space = std::move(space);
  for (auto& e : equations) {
    if (!same_space(e.space(), sys.space)) throw InvalidArgument("PF system equation is over a different space");
    sys.degrees.push_back(e.degree());
  }
  sys.equations = std::move(equations);
  for (std::size_t i = 0; i < sys.space->size(); ++i)
    (sys.space->role(i) == Role::objective ? sys.keep_vars : sys.eliminate_vars).push_back(i);
  return sys;
}

SpacePtr pf_space(const MOProblem& p, WeightMode mode) {
  p.validate();
  const std::size_t m = p.num_objectives();
  const std::size_t nw = mode == WeightMode::convex ? m - 1 : m;
  std::vector<std::string> names = p.decision_space->names();
  std::vector<Role> roles(names.size(), Role::decision);
  auto push = [&](const std::string& name, Role role) {
    if (p.decision_space->find(name))
      throw InvalidArgument("decision variable name '" + name + "' is reserved for the PF system");
    names.push_back(name);
    roles.push_back(role);
  };
  for (std::size_t i = 0; i < nw; ++i) push("w" + std::to_string(i + 1), Role::weight);
  for (std::size_t k = 0; k < p.num_constraints(); ++k) push("lambda" + std::to_string(k + 1), Role::multiplier);
  for (std::size_t i = 0; i < m; ++i) push("s" + std::to_string(i + 1), Role::objective);
  return VariableSpace::create(std::move(names), std::move(roles));
}

namespace {

Polynomial lagrangian_over(const MOProblem& p, WeightMode mode, const SpacePtr& space) {
  const std::size_t m = p.num_objectives();
  const auto weights = space->indices_with_role(Role::weight);
  const auto multipliers = space->indices_with_role(Role::multiplier);

  std::vector<Polynomial> w;
  for (std::size_t idx : weights) w.push_back(Polynomial::variable(space, idx));
  if (mode == WeightMode::convex) {
    Polynomial last = Polynomial::constant(space, 1.0);
    for (const auto& wi : w) last -= wi;
    w.push_back(last);
  }

  Polynomial L(space);
  for (std::size_t i = 0; i < m; ++i) L += w[i] * embed(p.objectives[i], space);
  for (std::size_t k = 0; k < p.num_constraints(); ++k)
    L -= Polynomial::variable(space, multipliers[k]) * embed(p.constraints[k], space);
  return L;
}

}  // namespace

Polynomial build_lagrangian(const MOProblem& p, WeightMode mode) {
  return lagrangian_over(p, mode, pf_space(p, mode));
}

PFSystem build_pf_system(const MOProblem& p, WeightMode mode) {
  const SpacePtr space = pf_space(p, mode);
  const Polynomial L = lagrangian_over(p, mode, space);

  std::vector<Polynomial> eqs;
  for (std::size_t j = 0; j < p.num_decisions(); ++j) eqs.push_back(differentiate(L, j));
  for (const auto& g : p.constraints) eqs.push_back(embed(g, space));
  const auto objectives = space->indices_with_role(Role::objective);
  for (std::size_t i = 0; i < p.num_objectives(); ++i)
    eqs.push_back(Polynomial::variable(space, objectives[i]) - embed(p.objectives[i], space));
  if (mode == WeightMode::explicit_weights) {
    Polynomial sum = Polynomial::constant(space, -1.0);
    for (std::size_t idx : space->indices_with_role(Role::weight)) sum += Polynomial::variable(space, idx);
    eqs.push_back(sum);
  }
  return make_pf_system(space, std::move(eqs));
}

std::vector<double> objective_values(const MOProblem& p, std::span<const double> x) {
  std::vector<double> out;
  out.reserve(p.num_objectives());
  for (const auto& f : p.objectives) out.push_back(f.evaluate(x));
  return out;
}

std::vector<double> objective_values(const MOProblem& p, const std::map<std::string, double>& x) {
  std::vector<double> out;
  out.reserve(p.num_objectives());
  for (const auto& f : p.objectives) out.push_back(f.evaluate(x));
  return out;
}

}  // namespace paretoelim
