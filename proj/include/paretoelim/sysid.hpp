#pragma once

// Misfit-versus-latency identification of an autonomous AR model
//   a(q) yhat = e,  a monic in its last coefficient,
// posed as the bi-objective problem min (||y - yhat||^2, ||e||^2).

#include <cstdint>
#include <vector>

#include <optional>
#include <string>

#include "paretoelim/eliminate.hpp"
#include "paretoelim/problem.hpp"

namespace paretoelim {

/// (N - n_a) x (n_a + 1) Hankel matrix H[i][j] = yhat[i + j].
/// Throws SizeViolation unless N >= n_a + 2.
std::vector<std::vector<Polynomial>> build_hankel(const std::vector<Polynomial>& yhat, int n_a);

/// Variable layout of the misfit-latency PF system.
struct MisfitLatencyLayout {
  std::size_t N = 0;
  int n_a = 0;
  std::vector<std::size_t> a;       // free coefficients a_0 .. a_{n_a-1}
  std::vector<std::size_t> yhat;    // N
  std::vector<std::size_t> e;       // N - n_a
  std::vector<std::size_t> lambda;  // N - n_a
  std::size_t alpha = 0;
  std::size_t s1 = 0;
  std::size_t s2 = 0;
};

struct MisfitLatencySystem {
  PFSystem pf;
  MisfitLatencyLayout layout;
  /// Blocks, in order: -(Y')^T lambda (n_a), alpha (y - yhat) + T_a^T lambda (N),
  /// (1 - alpha) e + lambda (N - n_a), Y a - e (N - n_a), s1 - ||y - yhat||^2,
  /// s2 - ||e||^2: 3N - n_a + 2 equations.
  std::size_t block_equation_count = 0;
  /// The closed-form count 3N - 2 n_a + 2 quoted for this construction.
  std::size_t quoted_equation_count = 0;
};

/// Stationarity of 1/2 (alpha ||y - yhat||^2 + (1 - alpha) ||e||^2) - lambda^T (Y a - e)
/// plus the objective relations. Keep variables: s1, s2.
MisfitLatencySystem build_misfit_latency_pf(const std::vector<double>& y, int n_a);

/// Lagrangian above over the layout's space (used to cross-check the blocks).
Polynomial misfit_latency_lagrangian(const MisfitLatencySystem& sys, const std::vector<double>& y);

struct ScalarizedModel {
  double alpha = 0.0;
  double s1 = 0.0;  // ||y - yhat||^2
  double s2 = 0.0;  // ||e||^2
  std::vector<double> a;  // all n_a + 1 coefficients (last = 1)
  std::vector<double> yhat;
  std::vector<double> e;
  std::vector<double> lambda;
  double kkt_residual = 0.0;
};

/// Global minimizer of alpha ||y - yhat||^2 + (1 - alpha) ||e||^2 for fixed
/// 0 < alpha < 1: scan of the reduced objective over a (yhat eliminated by
/// linear least squares), then Newton on the KKT system from the best scan
/// points and random seeds.
ScalarizedModel latency_misfit_scalarized(const std::vector<double>& y, int n_a, double alpha, int starts = 64,
                                          std::uint64_t seed = 42);

struct InterceptOracle {
  double value = 0.0;     // the objective value at the axis
  std::vector<double> a;  // all n_a + 1 coefficients (last = 1)
};

/// s2-axis intercept: latency of the best pure AR model, min over monic a of
/// ||Y(y) a||^2 (linear least squares on the data Hankel matrix).
InterceptOracle ar_latency_oracle(const std::vector<double>& y, int n_a);

/// s1-axis intercept: misfit of the best exact autonomous model,
/// min ||y - yhat||^2 s.t. Y(yhat) a = 0, by dense sampling of a in
/// [-range, range]^n_a with the inner least squares solved exactly, then
/// Newton refinement.
InterceptOracle exact_model_misfit_oracle(const std::vector<double>& y, int n_a, double range = 3.0,
                                          int samples_per_axis = 601);

/// Real roots of a univariate polynomial (companion matrix); coefficients in
/// increasing degree.
std::vector<double> real_roots(const std::vector<double>& coefficients, double imag_tol = 1e-8);

/// Univariate restriction of a bivariate eliminant to one axis: coefficients,
/// in increasing degree, of t(s, 0) (axis = 0) or t(0, s) (axis = 1).
std::vector<double> axis_restriction(const Polynomial& t, std::size_t axis);

struct MisfitLatencyOptions {
  EliminateOptions eliminate;
  int alpha_grid = 20;  // alpha_k = k / (alpha_grid + 1)
  int starts = 64;
  std::uint64_t seed = 42;
};

/// Matching of one axis intercept: the real nonnegative root of the axis
/// restriction closest to the oracle value.
struct InterceptCheck {
  double oracle = 0.0;
  std::optional<double> root;
  double relative_error = 0.0;  // |root - oracle| / max(|oracle|, 1e-300); inf when no root
  std::vector<double> roots;    // all real roots of the restriction
};

struct MisfitLatencyReport {
  MisfitLatencySystem system;
  std::optional<EliminantSystem> eliminant;
  std::string failure;               // why elimination stopped, if it did
  std::vector<DegreeRecord> profile; // per-degree ranks, also on failure
  std::vector<ScalarizedModel> samples;
  std::optional<double> max_sample_residual;  // max |t_i| over samples
  InterceptOracle ar;                // s2 intercept oracle (s1 = 0)
  InterceptOracle exact;             // s1 intercept oracle (s2 = 0)
  std::optional<InterceptCheck> s1_intercept, s2_intercept;
};

/// Build, eliminate, sample the scalarized front and compare intercepts.
/// Elimination failures (degree cap, size limit) are recorded, not thrown.
MisfitLatencyReport run_misfit_latency(const std::vector<double>& y, int n_a, const MisfitLatencyOptions& options = {});

nlohmann::json to_json(const MisfitLatencyReport& r);

}  // namespace paretoelim
