#include "paretoelim/front.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "paretoelim/errors.hpp"

namespace paretoelim {

namespace {

// Lawson-Hanson active-set solver for min ||A x - b|| subject to x >= 0.
Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  const Eigen::Index n = a.cols();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  const double tol = 10 * std::numeric_limits<double>::epsilon() * a.cwiseAbs().colwise().sum().maxCoeff() *
                     static_cast<double>(std::max(a.rows(), n));
  auto solve_passive = [&]() {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < n; ++j)
      if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
    Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
    if (!idx.empty()) {
      const Eigen::VectorXd zp = a(Eigen::all, idx).colPivHouseholderQr().solve(b);
      for (std::size_t k = 0; k < idx.size(); ++k) z(idx[k]) = zp(static_cast<Eigen::Index>(k));
    }
    return z;
  };
  for (int outer = 0; outer < 3 * n + 10; ++outer) {
    const Eigen::VectorXd grad = a.transpose() * (b - a * x);
    Eigen::Index best = -1;
    for (Eigen::Index j = 0; j < n; ++j)
      if (!passive[static_cast<std::size_t>(j)] && grad(j) > tol && (best < 0 || grad(j) > grad(best))) best = j;
    if (best < 0) break;
    passive[static_cast<std::size_t>(best)] = true;
    for (int inner = 0; inner < 3 * n + 10; ++inner) {
      const Eigen::VectorXd z = solve_passive();
      double alpha = 1.0;
      bool clipped = false;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (!passive[static_cast<std::size_t>(j)] || z(j) > tol) continue;
        const double denom = x(j) - z(j);
        if (denom > 0.0) alpha = std::min(alpha, x(j) / denom);
        clipped = true;
      }
      if (!clipped) {
        x = z;
        break;
      }
      x += alpha * (z - x);
      for (Eigen::Index j = 0; j < n; ++j)
        if (passive[static_cast<std::size_t>(j)] && x(j) <= tol) {
          passive[static_cast<std::size_t>(j)] = false;
          x(j) = 0.0;
        }
    }
  }
  return x;
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

std::vector<double> normalized_nonnegative(Eigen::VectorXd w) {
  w = w.cwiseMax(0.0);
  w /= w.sum();
  return to_std(w);
}

}  // namespace

nlohmann::json to_json(const ParetoPoint& p) {
  nlohmann::json j;
  j["s"] = p.s;
  if (p.w) j["w"] = *p.w;
  if (p.x) j["x"] = *p.x;
  if (p.lambda) j["lambda"] = *p.lambda;
  nlohmann::json r = nlohmann::json::object();
  if (p.residuals.eliminant) r["eliminant"] = *p.residuals.eliminant;
  if (p.residuals.kkt) r["kkt"] = *p.residuals.kkt;
  if (p.residuals.objective) r["objective"] = *p.residuals.objective;
  j["residuals"] = r;
  return j;
}

ParetoPoint pareto_point_from_json(const nlohmann::json& j) {
  try {
    ParetoPoint p;
    p.s = j.at("s").get<std::vector<double>>();
    if (j.contains("w")) p.w = j["w"].get<std::vector<double>>();
    if (j.contains("x")) p.x = j["x"].get<std::vector<double>>();
    if (j.contains("lambda")) p.lambda = j["lambda"].get<std::vector<double>>();
    if (j.contains("residuals")) {
      const auto& r = j["residuals"];
      if (r.contains("eliminant")) p.residuals.eliminant = r["eliminant"].get<double>();
      if (r.contains("kkt")) p.residuals.kkt = r["kkt"].get<double>();
      if (r.contains("objective")) p.residuals.objective = r["objective"].get<double>();
    }
    return p;
  } catch (const nlohmann::json::exception& ex) {
    throw SchemaError(std::string("malformed point: ") + ex.what());
  }
}

Eigen::MatrixXd eliminant_jacobian(const EliminantSystem& t, std::span<const double> s) {
  const std::size_t m = t.space->size();
  if (s.size() != m)
    throw InvalidArgument("point has " + std::to_string(s.size()) + " coordinates, expected " + std::to_string(m));
  Eigen::MatrixXd j(static_cast<Eigen::Index>(t.polynomials.size()), static_cast<Eigen::Index>(m));
  for (std::size_t r = 0; r < t.polynomials.size(); ++r)
    for (std::size_t c = 0; c < m; ++c)
      j(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = differentiate(t.polynomials[r], c).evaluate(s);
  return j;
}

double eliminant_residual(const EliminantSystem& t, std::span<const double> s) {
  if (s.size() != t.space->size()) throw InvalidArgument("point dimension does not match the eliminant");
  double r = 0.0;
  for (const auto& p : t.polynomials) r = std::max(r, std::abs(p.evaluate(s)));
  return r;
}

std::vector<double> project_to_variety(const EliminantSystem& t, std::span<const double> s, double tol) {
  if (s.size() != t.space->size()) throw InvalidArgument("point dimension does not match the eliminant");
  const PolySystem sys(t.polynomials);
  NewtonOptions opts;
  opts.tolerance = tol;
  Eigen::VectorXd z0 = Eigen::Map<const Eigen::VectorXd>(s.data(), static_cast<Eigen::Index>(s.size()));
  return to_std(newton_solve(sys, z0, opts).z);
}

WeightRecovery recover_weights(const EliminantSystem& t, std::span<const double> s, double tol) {
  const Eigen::MatrixXd j = eliminant_jacobian(t, s);
  if (j.norm() <= tol) throw ZeroGradient("eliminant Jacobian vanishes at the point (singular point of the variety)");
  WeightRecovery out;
  if (j.rows() == 1) {
    Eigen::VectorXd g = j.row(0).transpose();
    if (g.sum() < 0) g = -g;
    const double total = g.sum();
    if (total <= tol * g.cwiseAbs().sum()) return out;  // no orientation sums to a positive weight
    const Eigen::VectorXd w = g / total;
    if (w.minCoeff() < -tol) return out;
    out.feasible = true;
    out.w = normalized_nonnegative(w);
    return out;
  }

  // Normal space = row space of J; find the simplex point closest to it.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(j, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-6 * sv(0)) ++r;
  const Eigen::Index m = j.cols();
  const Eigen::MatrixXd q = svd.matrixV().leftCols(r);
  const Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(m, m) - q * q.transpose();
  constexpr double rho = 1e3;
  Eigen::MatrixXd a(m + 1, m);
  a.topRows(m) = proj;
  a.row(m).setConstant(rho);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m + 1);
  b(m) = rho;
  Eigen::VectorXd w = nnls(a, b);
  if (w.sum() <= 0.0) return out;
  w /= w.sum();
  out.distance = (proj * w).norm();
  if (out.distance > tol) return out;
  out.feasible = true;
  out.w = normalized_nonnegative(w);
  return out;
}

PolySystem kkt_system(const MOProblem& p, std::span<const double> w) {
  p.validate();
  if (w.size() != p.num_objectives())
    throw InvalidArgument("expected " + std::to_string(p.num_objectives()) + " weights, got " +
                          std::to_string(w.size()));
  std::vector<std::string> names = p.decision_space->names();
  std::vector<Role> roles(names.size(), Role::decision);
  for (std::size_t k = 0; k < p.num_constraints(); ++k) {
    names.push_back("lambda" + std::to_string(k + 1));
    roles.push_back(Role::multiplier);
  }
  const SpacePtr space = VariableSpace::create(std::move(names), std::move(roles));
  Polynomial l(space);
  for (std::size_t i = 0; i < p.num_objectives(); ++i) l += w[i] * embed(p.objectives[i], space);
  for (std::size_t k = 0; k < p.num_constraints(); ++k)
    l -= Polynomial::variable(space, p.num_decisions() + k) * embed(p.constraints[k], space);
  std::vector<Polynomial> eqs;
  for (std::size_t j = 0; j < p.num_decisions(); ++j) eqs.push_back(differentiate(l, j));
  for (const auto& g : p.constraints) eqs.push_back(embed(g, space));
  return PolySystem(std::move(eqs));
}

double decision_scale(const MOProblem& p) {
  double scale = 1.0;
  auto visit = [&](const Polynomial& f) {
    double constant = 0.0, other = 0.0;
    for (const auto& [mono, c] : f.terms()) {
      if (mono.degree() == 0)
        constant = std::abs(c);
      else
        other = std::max(other, std::abs(c));
    }
    if (other > 0.0) scale = std::max(scale, constant / other);
  };
  for (const auto& f : p.objectives) visit(f);
  for (const auto& g : p.constraints) visit(g);
  return scale;
}

std::vector<CriticalPoint> recover_decisions(const MOProblem& p, std::span<const double> w,
                                             const std::vector<std::vector<double>>& seeds,
                                             const RecoverOptions& options) {
  for (double wi : w)
    if (!(wi >= 0.0)) throw InvalidArgument("weights must be nonnegative");
  const PolySystem sys = kkt_system(p, w);
  const auto n = static_cast<Eigen::Index>(p.num_decisions());
  const auto k = static_cast<Eigen::Index>(p.num_constraints());

  std::vector<Eigen::VectorXd> starts;
  for (const auto& s : seeds) {
    if (static_cast<Eigen::Index>(s.size()) != n) throw InvalidArgument("seed has the wrong number of decisions");
    starts.push_back(Eigen::Map<const Eigen::VectorXd>(s.data(), n));
  }
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, decision_scale(p));
  for (int i = 0; i < options.starts; ++i) {
    Eigen::VectorXd x(n);
    for (auto& v : x) v = normal(rng);
    starts.push_back(std::move(x));
  }

  std::vector<CriticalPoint> found;
  std::vector<Eigen::VectorXd> roots;
  double best_residual = std::numeric_limits<double>::infinity();
  for (const auto& x0 : starts) {
    Eigen::VectorXd z0 = Eigen::VectorXd::Zero(n + k);
    z0.head(n) = x0;
    if (k > 0) {
      // multipliers by least squares on the stationarity rows
      const Eigen::VectorXd r = sys.residual(z0).head(n);
      const Eigen::MatrixXd jl = sys.jacobian(z0).topRightCorner(n, k);
      z0.tail(k) = jl.completeOrthogonalDecomposition().solve(-r);
    }
    const NewtonResult res = newton_solve(sys, z0, options.newton);
    best_residual = std::min(best_residual, res.residual);
    if (!(res.residual <= options.tol)) continue;
    bool duplicate = false;
    for (const auto& known : roots)
      if ((known - res.z).cwiseAbs().maxCoeff() <= options.merge_tol * std::max(1.0, known.cwiseAbs().maxCoeff()))
        duplicate = true;
    if (duplicate) continue;
    roots.push_back(res.z);
    CriticalPoint cp;
    cp.x = to_std(res.z.head(n));
    cp.lambda = to_std(res.z.tail(k));
    cp.s = objective_values(p, std::span<const double>(cp.x));
    cp.kkt_residual = res.residual;
    for (std::size_t i = 0; i < cp.s.size(); ++i) cp.weighted_objective += w[i] * cp.s[i];
    found.push_back(std::move(cp));
  }
  if (found.empty())
    throw NoConvergence("no Newton start converged on the weighted KKT system", best_residual);
  std::stable_sort(found.begin(), found.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    return a.weighted_objective < b.weighted_objective;
  });
  return found;
}

TangencyResult tangency_certificate(std::span<const double> s, std::span<const double> w,
                                    const std::vector<std::vector<double>>& samples, double tol) {
  if (s.size() != w.size()) throw InvalidArgument("point and weight dimensions differ");
  double ws = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) ws += w[i] * s[i];
  TangencyResult out;
  out.min_margin = std::numeric_limits<double>::infinity();
  for (const auto& sp : samples) {
    if (sp.size() != s.size()) throw InvalidArgument("sample dimension differs from the point");
    double v = 0.0;
    for (std::size_t i = 0; i < sp.size(); ++i) v += w[i] * sp[i];
    out.min_margin = std::min(out.min_margin, v - ws);
  }
  out.pass = out.min_margin >= -tol;
  return out;
}

}  // namespace paretoelim
