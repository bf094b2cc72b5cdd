#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "paretoelim/polyring.hpp"

namespace paretoelim {

/// How the convex weights enter the Lagrangian.
///  - convex:   w_m is replaced by 1 - (w_1 + ... + w_{m-1}); m-1 weight variables.
///  - explicit_weights: all m weights are variables and sum(w) - 1 = 0 is added.
enum class WeightMode { convex, explicit_weights };

std::string_view to_string(WeightMode mode);
WeightMode weight_mode_from_string(std::string_view text);

/// Simultaneous minimization of m >= 2 polynomial objectives subject to
/// polynomial equality constraints g_k(x) = 0.
struct MOProblem {
  SpacePtr decision_space;
  std::vector<Polynomial> objectives;
  std::vector<Polynomial> constraints;
  WeightMode weight_mode = WeightMode::convex;

  std::size_t num_decisions() const { return decision_space ? decision_space->size() : 0; }
  std::size_t num_objectives() const { return objectives.size(); }
  std::size_t num_constraints() const { return constraints.size(); }

  /// Throws InvalidArgument when m < 2 or a polynomial is not over decision_space.
  void validate() const;
};

MOProblem make_problem(std::vector<std::string> decision_vars, std::vector<Polynomial> objectives,
                       std::vector<Polynomial> constraints, WeightMode mode = WeightMode::convex);

/// Polynomial system whose solution set projects onto (a superset of) the
/// Pareto front: stationarity, feasibility and objective relations s_i - f_i(x).
struct PFSystem {
  SpacePtr space;
  std::vector<Polynomial> equations;
  std::vector<int> degrees;
  std::vector<std::size_t> keep_vars;       // objective variables s
  std::vector<std::size_t> eliminate_vars;  // everything else

  int max_degree() const;
  std::size_t num_keep() const { return keep_vars.size(); }
};

/// Wrap an arbitrary equation list; variables with Role::objective are kept.
PFSystem make_pf_system(SpacePtr space, std::vector<Polynomial> equations);

/// Variable space (x, w, lambda, s) used for the PF system of `p`.
/// Weight names are w1.., multipliers lambda1.., objective values s1..
SpacePtr pf_space(const MOProblem& p, WeightMode mode);

/// sum_i w_i f_i(x) - sum_k lambda_k g_k(x) over pf_space(p, mode).
Polynomial build_lagrangian(const MOProblem& p, WeightMode mode);
inline Polynomial build_lagrangian(const MOProblem& p) { return build_lagrangian(p, p.weight_mode); }

PFSystem build_pf_system(const MOProblem& p, WeightMode mode);
inline PFSystem build_pf_system(const MOProblem& p) { return build_pf_system(p, p.weight_mode); }

/// (f_1(x), ..., f_m(x)); `x` in decision-space order.
std::vector<double> objective_values(const MOProblem& p, std::span<const double> x);
std::vector<double> objective_values(const MOProblem& p, const std::map<std::string, double>& x);

}  // namespace paretoelim
