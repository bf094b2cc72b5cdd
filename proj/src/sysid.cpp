#include "paretoelim/sysid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "paretoelim/errors.hpp"
#include "paretoelim/front.hpp"
#include "paretoelim/newton.hpp"

namespace paretoelim {

namespace {

void check_sizes(std::size_t N, int n_a) {
  if (n_a < 1) throw InvalidArgument("model order n_a must be at least 1");
  if (N < static_cast<std::size_t>(n_a) + 2)
    throw SizeViolation("need N >= n_a + 2 samples (N = " + std::to_string(N) + ", n_a = " + std::to_string(n_a) +
                        ")");
}

// Full coefficient vector (a_0, ..., a_{n_a-1}, 1).
Eigen::VectorXd monic(const Eigen::VectorXd& free) {
  Eigen::VectorXd a(free.size() + 1);
  a.head(free.size()) = free;
  a(free.size()) = 1.0;
  return a;
}

// (N - n_a) x N Toeplitz operator with T(a) yhat = Y(yhat) a.
Eigen::MatrixXd toeplitz(const Eigen::VectorXd& a, std::size_t N) {
  const std::size_t n_a = a.size() - 1;
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(N - n_a, N);
  for (std::size_t i = 0; i < N - n_a; ++i)
    for (std::size_t j = 0; j <= n_a; ++j) t(i, i + j) = a(j);
  return t;
}

Eigen::MatrixXd data_hankel(const Eigen::VectorXd& y, int n_a) {
  const std::size_t rows = y.size() - n_a;
  Eigen::MatrixXd h(rows, n_a + 1);
  for (std::size_t i = 0; i < rows; ++i)
    for (int j = 0; j <= n_a; ++j) h(i, j) = y(i + j);
  return h;
}

// Best yhat for fixed a under alpha ||y - yhat||^2 + (1 - alpha) ||T yhat||^2.
Eigen::VectorXd inner_fit(const Eigen::VectorXd& y, const Eigen::MatrixXd& t, double alpha) {
  const Eigen::MatrixXd h =
      alpha * Eigen::MatrixXd::Identity(y.size(), y.size()) + (1.0 - alpha) * t.transpose() * t;
  return h.ldlt().solve(alpha * y);
}

double reduced_objective(const Eigen::VectorXd& y, const Eigen::VectorXd& free, double alpha) {
  const Eigen::MatrixXd t = toeplitz(monic(free), y.size());
  const Eigen::VectorXd yh = inner_fit(y, t, alpha);
  return alpha * (y - yh).squaredNorm() + (1.0 - alpha) * (t * yh).squaredNorm();
}

// Misfit of the closest exact trajectory of a(q): y^T T^T (T T^T)^{-1} T y.
double exact_misfit(const Eigen::VectorXd& y, const Eigen::VectorXd& free) {
  const Eigen::MatrixXd t = toeplitz(monic(free), y.size());
  const Eigen::VectorXd ty = t * y;
  return ty.dot((t * t.transpose()).ldlt().solve(ty));
}

// Candidate a-vectors: grid local minima (n_a = 1) or the best random samples.
template <class F>
std::vector<Eigen::VectorXd> scan(int n_a, double range, int samples, F&& f, std::size_t keep, std::uint64_t seed) {
  std::vector<std::pair<double, Eigen::VectorXd>> vals;
  if (n_a == 1) {
    std::vector<double> g(samples);
    for (int i = 0; i < samples; ++i) {
      Eigen::VectorXd a(1);
      a(0) = -range + 2.0 * range * i / (samples - 1);
      g[i] = f(a);
    }
    for (int i = 0; i < samples; ++i) {
      const bool left = i == 0 || g[i] <= g[i - 1];
      const bool right = i == samples - 1 || g[i] <= g[i + 1];
      if (left && right) {
        Eigen::VectorXd a(1);
        a(0) = -range + 2.0 * range * i / (samples - 1);
        vals.emplace_back(g[i], a);
      }
    }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-range, range);
    const std::size_t total = static_cast<std::size_t>(samples) * static_cast<std::size_t>(n_a) * 20;
    for (std::size_t k = 0; k < total; ++k) {
      Eigen::VectorXd a(n_a);
      for (int j = 0; j < n_a; ++j) a(j) = u(rng);
      vals.emplace_back(f(a), a);
    }
  }
  std::sort(vals.begin(), vals.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  std::vector<Eigen::VectorXd> out;
  for (std::size_t i = 0; i < vals.size() && out.size() < keep; ++i) out.push_back(vals[i].second);
  return out;
}

// Damped Newton on f with central finite differences.
template <class F>
Eigen::VectorXd refine(Eigen::VectorXd a, F&& f, int iterations = 50) {
  const int n = static_cast<int>(a.size());
  double fa = f(a);
  for (int it = 0; it < iterations; ++it) {
    const double h = 1e-4 * std::max(1.0, a.cwiseAbs().maxCoeff());
    Eigen::VectorXd g(n);
    Eigen::MatrixXd H(n, n);
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd ap = a, am = a;
      ap(i) += h;
      am(i) -= h;
      const double fp = f(ap), fm = f(am);
      g(i) = (fp - fm) / (2 * h);
      H(i, i) = (fp - 2 * fa + fm) / (h * h);
      for (int j = 0; j < i; ++j) {
        Eigen::VectorXd pp = a, pm = a, mp = a, mm = a;
        pp(i) += h, pp(j) += h;
        pm(i) += h, pm(j) -= h;
        mp(i) -= h, mp(j) += h;
        mm(i) -= h, mm(j) -= h;
        H(i, j) = H(j, i) = (f(pp) - f(pm) - f(mp) + f(mm)) / (4 * h * h);
      }
    }
    Eigen::VectorXd step;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    if (es.eigenvalues().minCoeff() > 0)
      step = -H.ldlt().solve(g);
    else
      step = -g;
    double t = 1.0;
    bool moved = false;
    for (int k = 0; k < 40; ++k, t *= 0.5) {
      const Eigen::VectorXd cand = a + t * step;
      const double fc = f(cand);
      if (fc < fa) {
        moved = fa - fc > 1e-16 * std::max(1.0, std::abs(fa));
        a = cand;
        fa = fc;
        break;
      }
    }
    if (!moved) break;
  }
  return a;
}

// Stationarity blocks over `space` with the given layout; alpha is a polynomial
// so the same code serves the PF system (alpha a variable) and fixed alpha.
std::vector<Polynomial> stationarity(const SpacePtr& space, const MisfitLatencyLayout& L, const std::vector<double>& y,
                                     const Polynomial& alpha) {
  std::vector<Polynomial> yh, a, e, lam;
  for (auto i : L.yhat) yh.push_back(Polynomial::variable(space, i));
  for (auto i : L.a) a.push_back(Polynomial::variable(space, i));
  a.push_back(Polynomial::constant(space, 1.0));
  for (auto i : L.e) e.push_back(Polynomial::variable(space, i));
  for (auto i : L.lambda) lam.push_back(Polynomial::variable(space, i));
  const std::size_t N = L.N;
  const std::size_t n_a = static_cast<std::size_t>(L.n_a);
  const std::size_t R = N - n_a;
  const auto H = build_hankel(yh, L.n_a);

  std::vector<Polynomial> eqs;
  // d/da_j: -(Y')^T lambda
  for (std::size_t j = 0; j < n_a; ++j) {
    Polynomial p(space);
    for (std::size_t i = 0; i < R; ++i) p -= H[i][j] * lam[i];
    eqs.push_back(std::move(p));
  }
  // d/dyhat_k: -(alpha (y - yhat) + T_a^T lambda); written with the sign flipped
  for (std::size_t k = 0; k < N; ++k) {
    Polynomial p = alpha * (y[k] - yh[k]);
    for (std::size_t i = 0; i < R; ++i)
      if (k >= i && k - i <= n_a) p += a[k - i] * lam[i];
    eqs.push_back(std::move(p));
  }
  // d/de_i: (1 - alpha) e_i + lambda_i
  for (std::size_t i = 0; i < R; ++i) eqs.push_back((1.0 - alpha) * e[i] + lam[i]);
  // d/dlambda_i (sign flipped): Y a - e
  for (std::size_t i = 0; i < R; ++i) {
    Polynomial p = -e[i];
    for (std::size_t j = 0; j <= n_a; ++j) p += H[i][j] * a[j];
    eqs.push_back(std::move(p));
  }
  return eqs;
}

MisfitLatencyLayout make_layout(std::size_t N, int n_a, std::vector<std::string>& names, std::vector<Role>& roles,
                                bool with_pf_vars) {
  MisfitLatencyLayout L;
  L.N = N;
  L.n_a = n_a;
  auto add = [&](std::string name, Role role) {
    names.push_back(std::move(name));
    roles.push_back(role);
    return names.size() - 1;
  };
  for (int j = 0; j < n_a; ++j) L.a.push_back(add("a" + std::to_string(j), Role::decision));
  for (std::size_t k = 1; k <= N; ++k) L.yhat.push_back(add("yhat" + std::to_string(k), Role::decision));
  for (std::size_t i = 1; i <= N - n_a; ++i) L.e.push_back(add("e" + std::to_string(i), Role::decision));
  for (std::size_t i = 1; i <= N - n_a; ++i) L.lambda.push_back(add("lambda" + std::to_string(i), Role::multiplier));
  if (with_pf_vars) {
    L.alpha = add("alpha", Role::weight);
    L.s1 = add("s1", Role::objective);
    L.s2 = add("s2", Role::objective);
  }
  return L;
}

}  // namespace

std::vector<std::vector<Polynomial>> build_hankel(const std::vector<Polynomial>& yhat, int n_a) {
  check_sizes(yhat.size(), n_a);
  const std::size_t rows = yhat.size() - n_a;
  std::vector<std::vector<Polynomial>> h(rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (int j = 0; j <= n_a; ++j) h[i].push_back(yhat[i + j]);
  return h;
}

MisfitLatencySystem build_misfit_latency_pf(const std::vector<double>& y, int n_a) {
  check_sizes(y.size(), n_a);
  for (double v : y)
    if (!std::isfinite(v)) throw InvalidArgument("data must be finite");
  std::vector<std::string> names;
  std::vector<Role> roles;
  MisfitLatencySystem out;
  out.layout = make_layout(y.size(), n_a, names, roles, true);
  const auto& L = out.layout;
  auto space = VariableSpace::create(names, roles);
  auto eqs = stationarity(space, L, y, Polynomial::variable(space, L.alpha));
  Polynomial misfit(space), latency(space);
  for (std::size_t k = 0; k < L.N; ++k) {
    const Polynomial r = y[k] - Polynomial::variable(space, L.yhat[k]);
    misfit += r * r;
  }
  for (auto i : L.e) latency += Polynomial::variable(space, i) * Polynomial::variable(space, i);
  eqs.push_back(Polynomial::variable(space, L.s1) - misfit);
  eqs.push_back(Polynomial::variable(space, L.s2) - latency);
  out.block_equation_count = eqs.size();
  out.quoted_equation_count = 3 * L.N - 2 * static_cast<std::size_t>(n_a) + 2;
  out.pf = make_pf_system(space, std::move(eqs));
  return out;
}

Polynomial misfit_latency_lagrangian(const MisfitLatencySystem& sys, const std::vector<double>& y) {
  const auto& L = sys.layout;
  const auto& space = sys.pf.space;
  const Polynomial alpha = Polynomial::variable(space, L.alpha);
  std::vector<Polynomial> yh, a, e;
  for (auto i : L.yhat) yh.push_back(Polynomial::variable(space, i));
  for (auto i : L.a) a.push_back(Polynomial::variable(space, i));
  a.push_back(Polynomial::constant(space, 1.0));
  for (auto i : L.e) e.push_back(Polynomial::variable(space, i));
  Polynomial misfit(space), latency(space), coupling(space);
  for (std::size_t k = 0; k < L.N; ++k) misfit += (y[k] - yh[k]) * (y[k] - yh[k]);
  for (const auto& ei : e) latency += ei * ei;
  const auto H = build_hankel(yh, L.n_a);
  for (std::size_t i = 0; i < H.size(); ++i) {
    Polynomial row = -e[i];
    for (std::size_t j = 0; j < a.size(); ++j) row += H[i][j] * a[j];
    coupling += Polynomial::variable(space, L.lambda[i]) * row;
  }
  return 0.5 * (alpha * misfit + (1.0 - alpha) * latency) - coupling;
}

ScalarizedModel latency_misfit_scalarized(const std::vector<double>& y, int n_a, double alpha, int starts,
                                          std::uint64_t seed) {
  check_sizes(y.size(), n_a);
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
  const Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(), y.size());
  const std::size_t N = y.size();
  const std::size_t R = N - n_a;

  std::vector<std::string> names;
  std::vector<Role> roles;
  const MisfitLatencyLayout L = make_layout(N, n_a, names, roles, false);
  auto space = VariableSpace::create(names, roles);
  const PolySystem kkt(stationarity(space, L, y, Polynomial::constant(space, alpha)));

  auto seed_from = [&](const Eigen::VectorXd& free) {
    const Eigen::MatrixXd t = toeplitz(monic(free), N);
    const Eigen::VectorXd yh = inner_fit(yv, t, alpha);
    const Eigen::VectorXd e = t * yh;
    Eigen::VectorXd z(names.size());
    z << free, yh, e, -(1.0 - alpha) * e;
    return z;
  };

  auto f = [&](const Eigen::VectorXd& a) { return reduced_objective(yv, a, alpha); };
  std::vector<Eigen::VectorXd> seeds;
  for (auto& a : scan(n_a, 10.0, 4001, f, 8, seed)) seeds.push_back(seed_from(refine(a, f)));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int k = 0; k < starts; ++k) {
    Eigen::VectorXd a(n_a);
    for (int j = 0; j < n_a; ++j) a(j) = g(rng);
    seeds.push_back(seed_from(a));
  }

  ScalarizedModel best;
  double best_value = std::numeric_limits<double>::infinity();
  double best_residual = std::numeric_limits<double>::infinity();
  NewtonOptions opts;
  opts.tolerance = 1e-13;
  for (const auto& z0 : seeds) {
    const NewtonResult r = newton_solve(kkt, z0, opts);
    best_residual = std::min(best_residual, r.residual);
    if (!(r.residual <= 1e-9 * std::max(1.0, yv.squaredNorm()))) continue;
    const Eigen::VectorXd yh = r.z.segment(n_a, N);
    const Eigen::VectorXd e = r.z.segment(n_a + N, R);
    const double s1 = (yv - yh).squaredNorm(), s2 = e.squaredNorm();
    const double value = alpha * s1 + (1.0 - alpha) * s2;
    if (value < best_value - 1e-14 * std::max(1.0, std::abs(value))) {
      best_value = value;
      best.alpha = alpha;
      best.s1 = s1;
      best.s2 = s2;
      const Eigen::VectorXd a = monic(r.z.head(n_a));
      best.a.assign(a.data(), a.data() + a.size());
      best.yhat.assign(yh.data(), yh.data() + N);
      best.e.assign(e.data(), e.data() + R);
      best.lambda.assign(r.z.data() + n_a + N + R, r.z.data() + n_a + N + 2 * R);
      best.kkt_residual = r.residual;
    }
  }
  if (!std::isfinite(best_value))
    throw NoConvergence("no KKT point of the scalarized identification problem converged", best_residual);
  return best;
}

InterceptOracle ar_latency_oracle(const std::vector<double>& y, int n_a) {
  check_sizes(y.size(), n_a);
  const Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(), y.size());
  const Eigen::MatrixXd h = data_hankel(yv, n_a);
  const Eigen::VectorXd free =
      h.leftCols(n_a).completeOrthogonalDecomposition().solve(-h.col(n_a));
  const Eigen::VectorXd a = monic(free);
  InterceptOracle out;
  out.value = (h * a).squaredNorm();
  out.a.assign(a.data(), a.data() + a.size());
  return out;
}

InterceptOracle exact_model_misfit_oracle(const std::vector<double>& y, int n_a, double range, int samples_per_axis) {
  check_sizes(y.size(), n_a);
  if (samples_per_axis < 3) throw InvalidArgument("need at least 3 samples per axis");
  const Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(), y.size());
  auto f = [&](const Eigen::VectorXd& a) { return exact_misfit(yv, a); };
  InterceptOracle out;
  out.value = std::numeric_limits<double>::infinity();
  for (const auto& a0 : scan(n_a, range, samples_per_axis, f, 8, 7)) {
    const Eigen::VectorXd a = refine(a0, f);
    const double v = f(a);
    if (v < out.value) {
      out.value = v;
      const Eigen::VectorXd full = monic(a);
      out.a.assign(full.data(), full.data() + full.size());
    }
  }
  return out;
}

std::vector<double> real_roots(const std::vector<double>& coefficients, double imag_tol) {
  std::vector<double> c = coefficients;
  const double scale = c.empty() ? 0.0 : std::abs(*std::max_element(c.begin(), c.end(), [](double a, double b) {
    return std::abs(a) < std::abs(b);
  }));
  while (!c.empty() && std::abs(c.back()) <= 1e-14 * scale) c.pop_back();
  if (c.size() < 2) return {};
  const std::size_t n = c.size() - 1;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < n; ++i) comp(i, n - 1) = -c[i] / c[n];
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  std::vector<double> roots;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const auto z = es.eigenvalues()(i);
    if (std::abs(z.imag()) <= imag_tol * std::max(1.0, std::abs(z))) roots.push_back(z.real());
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<double> axis_restriction(const Polynomial& t, std::size_t axis) {
  if (!t.space() || t.space()->size() != 2) throw InvalidArgument("axis restriction needs a bivariate polynomial");
  if (axis > 1) throw InvalidArgument("axis must be 0 or 1");
  const std::size_t other = 1 - axis;
  std::vector<double> c;
  for (const auto& [mono, coef] : t.terms()) {
    if (mono[other] != 0) continue;
    const std::size_t k = mono[axis];
    if (c.size() <= k) c.resize(k + 1, 0.0);
    c[k] += coef;
  }
  return c;
}

namespace {

InterceptCheck check_intercept(const Polynomial& t, std::size_t axis, double oracle) {
  InterceptCheck out;
  out.oracle = oracle;
  out.roots = real_roots(axis_restriction(t, axis));
  out.relative_error = std::numeric_limits<double>::infinity();
  const double scale = std::max(std::abs(oracle), 1e-300);
  for (double r : out.roots) {
    if (r < -1e-9 * std::max(1.0, std::abs(oracle))) continue;
    const double err = std::abs(r - oracle) / scale;
    if (err < out.relative_error) {
      out.relative_error = err;
      out.root = r;
    }
  }
  return out;
}

nlohmann::json to_json(const InterceptCheck& c) {
  nlohmann::json j = {{"oracle", c.oracle}, {"roots", c.roots}};
  if (c.root) {
    j["root"] = *c.root;
    j["relative_error"] = c.relative_error;
  } else {
    j["root"] = nullptr;
  }
  return j;
}

}  // namespace

MisfitLatencyReport run_misfit_latency(const std::vector<double>& y, int n_a, const MisfitLatencyOptions& options) {
  MisfitLatencyReport r;
  r.system = build_misfit_latency_pf(y, n_a);
  r.ar = ar_latency_oracle(y, n_a);
  r.exact = exact_model_misfit_oracle(y, n_a);
  for (int k = 1; k <= options.alpha_grid; ++k) {
    const double alpha = static_cast<double>(k) / (options.alpha_grid + 1);
    r.samples.push_back(latency_misfit_scalarized(y, n_a, alpha, options.starts, options.seed + k));
  }
  try {
    EliminantSystem e = eliminate(r.system.pf, options.eliminate);
    r.profile = e.profile;
    double worst = 0.0;
    for (const auto& m : r.samples) {
      const double s[2] = {m.s1, m.s2};
      worst = std::max(worst, eliminant_residual(e, std::span<const double>(s, 2)));
    }
    r.max_sample_residual = worst;
    if (e.polynomials.size() == 1) {
      r.s1_intercept = check_intercept(e.polynomials[0], 0, r.exact.value);
      r.s2_intercept = check_intercept(e.polynomials[0], 1, r.ar.value);
    }
    r.eliminant = std::move(e);
  } catch (const DegreeCapExceeded& err) {
    r.failure = err.what();
    r.profile = err.profile();
  } catch (const MacaulayTooLarge& err) {
    r.failure = err.what();
    r.profile = err.profile();
  }
  return r;
}

nlohmann::json to_json(const MisfitLatencyReport& r) {
  nlohmann::json j;
  const auto& L = r.system.layout;
  j["N"] = L.N;
  j["n_a"] = L.n_a;
  j["variables"] = r.system.pf.space->names();
  j["equations"] = r.system.block_equation_count;
  j["quoted_equation_count"] = r.system.quoted_equation_count;
  j["oracles"] = {{"ar_latency", r.ar.value},
                  {"ar_coefficients", r.ar.a},
                  {"exact_misfit", r.exact.value},
                  {"exact_coefficients", r.exact.a}};
  j["samples"] = nlohmann::json::array();
  for (const auto& m : r.samples)
    j["samples"].push_back(
        {{"alpha", m.alpha}, {"s1", m.s1}, {"s2", m.s2}, {"a", m.a}, {"kkt_residual", m.kkt_residual}});
  j["profile"] = nlohmann::json::array();
  for (const auto& d : r.profile) j["profile"].push_back(to_json(d));
  if (r.eliminant) {
    j["eliminant"] = to_json(*r.eliminant);
    j["max_sample_residual"] = *r.max_sample_residual;
    if (r.s1_intercept) j["s1_intercept"] = to_json(*r.s1_intercept);
    if (r.s2_intercept) j["s2_intercept"] = to_json(*r.s2_intercept);
  } else {
    j["eliminant"] = nullptr;
    j["failure"] = r.failure;
  }
  return j;
}

}  // namespace paretoelim
