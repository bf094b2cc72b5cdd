#pragma once

// Damped Gauss-Newton for polynomial systems (square or not). Steps are
// minimum-norm least-squares corrections, so underdetermined systems converge
// to a nearby point of the solution set.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "paretoelim/polyring.hpp"

namespace paretoelim {

class PolySystem {
 public:
  explicit PolySystem(std::vector<Polynomial> equations);

  std::size_t num_equations() const { return eqs_.size(); }
  std::size_t num_variables() const { return nvars_; }
  const std::vector<Polynomial>& equations() const { return eqs_; }

  Eigen::VectorXd residual(const Eigen::VectorXd& z) const;
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& z) const;

 private:
  std::vector<Polynomial> eqs_;
  std::vector<std::vector<Polynomial>> jac_;  // jac_[i][j] = d eq_i / d z_j
  std::size_t nvars_ = 0;
};

struct NewtonOptions {
  int max_iterations = 100;
  double tolerance = 1e-12;  // on the residual 2-norm
  int max_halvings = 30;
};

struct NewtonResult {
  Eigen::VectorXd z;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

NewtonResult newton_solve(const PolySystem& sys, Eigen::VectorXd z0, const NewtonOptions& options = {});

/// Newton from `starts` Gaussian seeds (standard deviation `scale`); returns
/// the converged roots with duplicates (distance <= merge_tol) removed.
std::vector<NewtonResult> newton_multistart(const PolySystem& sys, int starts, std::uint64_t seed, double scale,
                                            const NewtonOptions& options = {}, double merge_tol = 1e-8);

}  // namespace paretoelim
