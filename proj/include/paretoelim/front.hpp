#pragma once

// Geometry of the front at a point of the eliminant variety: normal space,
// weights, decisions and the supporting-hyperplane check.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "paretoelim/eliminate.hpp"
#include "paretoelim/newton.hpp"
#include "paretoelim/problem.hpp"

namespace paretoelim {

struct PointResiduals {
  std::optional<double> eliminant;  // max_i |t_i(s)|
  std::optional<double> kkt;        // ||KKT(x, lambda)||_2 for the recovered w
  std::optional<double> objective;  // max_i |s_i - f_i(x)|
};

struct ParetoPoint {
  std::vector<double> s;
  std::optional<std::vector<double>> w;
  std::optional<std::vector<double>> x;
  std::optional<std::vector<double>> lambda;
  PointResiduals residuals;
};

/// One JSON object per point (JSON-lines friendly).
nlohmann::json to_json(const ParetoPoint& p);
ParetoPoint pareto_point_from_json(const nlohmann::json& j);

/// Row i is the gradient of t_i at s.
Eigen::MatrixXd eliminant_jacobian(const EliminantSystem& t, std::span<const double> s);

/// max_i |t_i(s)|.
double eliminant_residual(const EliminantSystem& t, std::span<const double> s);

/// Nearest point of the eliminant variety reached by minimum-norm Newton steps
/// from s; useful before weight recovery at rounded coordinates.
std::vector<double> project_to_variety(const EliminantSystem& t, std::span<const double> s, double tol = 1e-13);

struct WeightRecovery {
  bool feasible = false;
  std::vector<double> w;   // sums to 1, components >= 0 (when feasible)
  double distance = 0.0;   // distance of w to the normal space (multi-polynomial case)
};

/// A nonnegative vector in the row space of the eliminant Jacobian at s,
/// normalized to sum 1. Infeasible when none exists (s on the variety but not
/// supported by a nonnegative weight). Throws ZeroGradient when ||J|| <= tol.
WeightRecovery recover_weights(const EliminantSystem& t, std::span<const double> s, double tol = 1e-8);

struct CriticalPoint {
  std::vector<double> x;
  std::vector<double> lambda;
  std::vector<double> s;  // objective values at x
  double kkt_residual = 0.0;
  double weighted_objective = 0.0;
};

/// KKT system of sum_i w_i f_i - sum_k lambda_k g_k over (x, lambda).
PolySystem kkt_system(const MOProblem& p, std::span<const double> w);

/// Typical magnitude of decision variables: max(1, |constant| / max |other coefficient|)
/// over all objectives and constraints.
double decision_scale(const MOProblem& p);

struct RecoverOptions {
  int starts = 64;
  std::uint64_t seed = 42;
  double tol = 1e-9;        // accepted KKT residual
  double merge_tol = 1e-8;  // duplicate roots (infinity norm)
  NewtonOptions newton;
};

/// Real critical points of the weighted-sum problem for fixed w, from the
/// given decision seeds plus a Gaussian cloud; sorted by weighted objective.
/// Throws NoConvergence when nothing converges.
std::vector<CriticalPoint> recover_decisions(const MOProblem& p, std::span<const double> w,
                                             const std::vector<std::vector<double>>& seeds = {},
                                             const RecoverOptions& options = {});

struct TangencyResult {
  bool pass = false;
  double min_margin = 0.0;  // min over samples of w.(s' - s)
};

/// Supporting hyperplane test: w.s' >= w.s - tol for every sample s'.
TangencyResult tangency_certificate(std::span<const double> s, std::span<const double> w,
                                    const std::vector<std::vector<double>>& samples, double tol = 1e-9);

}  // namespace paretoelim
