#include "paretoelim/newton.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <span>

#include "paretoelim/errors.hpp"

namespace paretoelim {

PolySystem::PolySystem(std::vector<Polynomial> equations) : eqs_(std::move(equations)) {
  if (eqs_.empty()) throw InvalidArgument("empty polynomial system");
  nvars_ = eqs_.front().space()->size();
  jac_.resize(eqs_.size());
  for (std::size_t i = 0; i < eqs_.size(); ++i) {
    if (eqs_[i].space()->size() != nvars_) throw InvalidArgument("system equations live in different spaces");
    for (std::size_t j = 0; j < nvars_; ++j) jac_[i].push_back(differentiate(eqs_[i], j));
  }
}

Eigen::VectorXd PolySystem::residual(const Eigen::VectorXd& z) const {
  std::span<const double> zs(z.data(), static_cast<std::size_t>(z.size()));
  Eigen::VectorXd r(static_cast<Eigen::Index>(eqs_.size()));
  for (std::size_t i = 0; i < eqs_.size(); ++i) r(static_cast<Eigen::Index>(i)) = eqs_[i].evaluate(zs);
  return r;
}

Eigen::MatrixXd PolySystem::jacobian(const Eigen::VectorXd& z) const {
  std::span<const double> zs(z.data(), static_cast<std::size_t>(z.size()));
  Eigen::MatrixXd j(static_cast<Eigen::Index>(eqs_.size()), static_cast<Eigen::Index>(nvars_));
  for (std::size_t r = 0; r < eqs_.size(); ++r)
    for (std::size_t c = 0; c < nvars_; ++c)
      j(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = jac_[r][c].evaluate(zs);
  return j;
}

NewtonResult newton_solve(const PolySystem& sys, Eigen::VectorXd z0, const NewtonOptions& options) {
  NewtonResult res;
  res.z = std::move(z0);
  Eigen::VectorXd f = sys.residual(res.z);
  res.residual = f.norm();
  for (res.iterations = 0; res.iterations < options.max_iterations; ++res.iterations) {
    if (!std::isfinite(res.residual)) break;
    if (res.residual <= options.tolerance) {
      res.converged = true;
      return res;
    }
    const Eigen::VectorXd step = sys.jacobian(res.z).completeOrthogonalDecomposition().solve(-f);
    double alpha = 1.0;
    bool accepted = false;
    for (int h = 0; h <= options.max_halvings; ++h, alpha *= 0.5) {
      Eigen::VectorXd trial = res.z + alpha * step;
      Eigen::VectorXd ft = sys.residual(trial);
      const double nt = ft.norm();
      if (std::isfinite(nt) && nt < res.residual) {
        res.z = std::move(trial);
        f = std::move(ft);
        res.residual = nt;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  res.converged = res.residual <= options.tolerance;
  return res;
}

std::vector<NewtonResult> newton_multistart(const PolySystem& sys, int starts, std::uint64_t seed, double scale,
                                            const NewtonOptions& options, double merge_tol) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, scale);
  std::vector<NewtonResult> roots;
  const auto n = static_cast<Eigen::Index>(sys.num_variables());
  for (int s = 0; s < starts; ++s) {
    Eigen::VectorXd z0(n);
    for (Eigen::Index i = 0; i < n; ++i) z0(i) = normal(rng);
    NewtonResult r = newton_solve(sys, std::move(z0), options);
    if (!r.converged) continue;
    bool duplicate = false;
    for (const auto& known : roots)
      if ((known.z - r.z).norm() <= merge_tol * std::max(1.0, known.z.norm())) duplicate = true;
    if (!duplicate) roots.push_back(std::move(r));
  }
  return roots;
}

}  // namespace paretoelim
