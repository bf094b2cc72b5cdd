// Acceptance checks. Prints one PASS/FAIL line per criterion.
//
//   acceptance                 run criteria 1-7
//   acceptance --criterion 4   run a single criterion
//
// Exit status is the number of failed criteria among those run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "paretoelim/eliminate.hpp"
#include "paretoelim/front.hpp"
#include "paretoelim/macaulay.hpp"
#include "paretoelim/newton.hpp"
#include "paretoelim/oracle.hpp"
#include "paretoelim/sysid.hpp"

using namespace paretoelim;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Each example's eliminant is computed once per process.
const EliminantSystem& eliminant_of(int example) {
  static std::vector<std::unique_ptr<EliminantSystem>> cache(5);
  auto& slot = cache.at(example);
  if (!slot) {
    const MOProblem p = example == 1   ? fixtures::example1()
                        : example == 2 ? fixtures::example2()
                        : example == 3 ? fixtures::example3()
                                       : fixtures::portfolio();
    slot = std::make_unique<EliminantSystem>(eliminate(build_pf_system(p)));
  }
  return *slot;
}

MOProblem example(int k) {
  switch (k) {
    case 1:
      return fixtures::example1();
    case 2:
      return fixtures::example2();
    case 3:
      return fixtures::example3();
    default:
      return fixtures::portfolio();
  }
}

// Both polynomials divided by their coefficient on the leading monomial of
// `printed` (largest in graded order); returns the max coefficient difference.
double compare_to_printed(const Polynomial& ours, const Polynomial& printed) {
  const Monomial lead = printed.terms().rbegin()->first;
  const double a = ours.coefficient(lead), b = printed.coefficient(lead);
  if (a == 0.0) return std::numeric_limits<double>::infinity();
  std::set<Monomial, GradedOrder> all;
  for (const auto& [m, c] : ours.terms()) all.insert(m);
  for (const auto& [m, c] : printed.terms()) all.insert(m);
  double worst = 0.0;
  for (const auto& m : all) worst = std::max(worst, std::abs(ours.coefficient(m) / a - printed.coefficient(m) / b));
  return worst;
}

double unit_max_residual(const Polynomial& t, std::span<const double> s) {
  return std::abs(t.evaluate(s)) / t.max_abs_coefficient();
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  const int want_degree[3] = {2, 8, 3};
  const std::size_t want_rows[3] = {19, 3234, 49}, want_cols[3] = {36, 3003, 84};
  const auto t0 = std::chrono::steady_clock::now();
  for (int k = 1; k <= 3; ++k) {
    const EliminantSystem& e = eliminant_of(k);
    o.detail << " Ex" << k << ": d=" << e.degree_used << " " << e.rows << "x" << e.cols << ";";
    o.require(e.degree_used == want_degree[k - 1], "Example " + std::to_string(k) + " degree");
    o.require(e.rows == want_rows[k - 1] && e.cols == want_cols[k - 1], "Example " + std::to_string(k) + " size");
  }
  const double total = seconds_since(t0);
  char buf[64];
  std::snprintf(buf, sizeof buf, " total %.1f s", total);
  o.detail << buf;
  o.require(total < 60.0, "runtime under 60 s");
  return o;
}

Outcome criterion2() {
  Outcome o;
  for (int k = 1; k <= 3; ++k) {
    const EliminantSystem& e = eliminant_of(k);
    const FrontSample sample = sample_front(example(k), 41, 64, 42);
    std::set<std::vector<double>> distinct;
    double worst = 0.0;
    for (const auto& pt : sample.points) {
      distinct.insert(pt.s);
      worst = std::max(worst, eliminant_residual(e, pt.s));
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, " Ex%d: %zu distinct points, max |t| %.2e;", k, distinct.size(), worst);
    o.detail << buf;
    o.require(distinct.size() >= 15, "Example " + std::to_string(k) + " has at least 15 sampled points");
    o.require(worst <= 1e-8, "Example " + std::to_string(k) + " residual");
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  {
    auto sp = VariableSpace::create({"s1", "s2", "s3"}, Role::objective);
    const auto s1 = Polynomial::variable(sp, 0), s2 = Polynomial::variable(sp, 1), s3 = Polynomial::variable(sp, 2);
    const Polynomial printed = 5.0 * s2 * s2 - 6.0 * s2 * s3 + 2.0 * s3 * s3 - s1 - 8.0 * s2 + 2.0 * s3 + 13.0;
    const EliminantSystem& e = eliminant_of(1);
    o.require(e.polynomials.size() == 1, "Example 1 yields one polynomial");
    const double diff = compare_to_printed(e.polynomials.at(0), printed);
    char buf[96];
    std::snprintf(buf, sizeof buf, " Ex1 max coefficient difference %.2e;", diff);
    o.detail << buf;
    o.require(diff <= 1e-6, "Example 1 coefficients");
  }
  {
    auto sp = VariableSpace::create({"s1", "s2"}, Role::objective);
    const auto a = Polynomial::variable(sp, 0), b = Polynomial::variable(sp, 1);
    const Polynomial printed = pow(b, 6) - 12.0 * pow(b, 5) - 12.0 * a * pow(b, 4) + 16.0 * pow(a, 4) +
                               48.0 * pow(a, 3) * b + 48.0 * a * a * b * b + 32.0 * a * pow(b, 3) +
                               48.0 * pow(b, 4) - 32.0 * pow(a, 3) - 48.0 * a * a * b;
    const EliminantSystem& e = eliminant_of(2);
    o.require(e.polynomials.size() == 1, "Example 2 yields one polynomial");
    const double diff = compare_to_printed(e.polynomials.at(0), printed);
    char buf[96];
    std::snprintf(buf, sizeof buf, " Ex2 max coefficient difference %.2e", diff);
    o.detail << buf;
    o.require(diff <= 1e-6, "Example 2 coefficients");
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  const EliminantSystem& e = eliminant_of(3);
  o.detail << " " << e.polynomials.size() << " extracted polynomials;";
  o.require(e.polynomials.size() == 5, "five extracted polynomials");
  double worst_curve = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double x = -1.0 + 4.0 * i / 49.0;
    const std::vector<double> s = {x * x, (x - 1) * (x - 1), (x - 2) * (x - 2)};
    worst_curve = std::max(worst_curve, eliminant_residual(e, s));
  }
  auto sp = VariableSpace::create({"s1", "s2", "s3"}, Role::objective);
  const auto s1 = Polynomial::variable(sp, 0), s2 = Polynomial::variable(sp, 1), s3 = Polynomial::variable(sp, 2);
  const Polynomial t1 = s1 - 2.0 * s2 + s3 - 2.0;
  const Polynomial t2 = s2 * s2 - 2.0 * s2 * s3 + s3 * s3 - 2.0 * s2 - 2.0 * s3 + 1.0;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 9.0);
  double worst_system = 0.0, worst_printed = 0.0;
  for (int i = 0; i < 50; ++i) {
    const std::vector<double> s = project_to_variety(e, std::vector<double>{u(rng), u(rng), u(rng)});
    worst_system = std::max(worst_system, eliminant_residual(e, s));
    worst_printed = std::max({worst_printed, unit_max_residual(t1, s), unit_max_residual(t2, s)});
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, " curve max |t| %.2e; projected points: system %.2e, printed pair %.2e",
                worst_curve, worst_system, worst_printed);
  o.detail << buf;
  o.require(worst_curve <= 1e-8, "extracted polynomials vanish on the curve");
  o.require(worst_system <= 1e-8, "projected points satisfy the extracted system");
  o.require(worst_printed <= 1e-8, "printed polynomials vanish at projected points");
  return o;
}

Outcome criterion5() {
  Outcome o;
  const MOProblem p = fixtures::portfolio();
  const EliminantSystem& e = eliminant_of(4);
  o.detail << " d=" << e.degree_used << " " << e.rows << "x" << e.cols << ";";
  o.require(e.degree_used == 4 && e.rows == 384 && e.cols == 330, "degree 4, 384x330");
  const std::vector<double> s = {-16.59, 4.74};
  const WeightRecovery w = recover_weights(e, s);
  o.require(w.feasible, "weights feasible");
  char buf[200];
  std::snprintf(buf, sizeof buf, " w=(%.4f, %.4f);", w.w.at(0), w.w.at(1));
  o.detail << buf;
  o.require(std::abs(w.w[0] - 0.45) <= 0.01 && std::abs(w.w[1] - 0.55) <= 0.01, "weights (0.45, 0.55) +- 0.01");
  // decisions are solved at the weights as reported, i.e. rounded to two decimals
  std::vector<double> reported = {std::round(w.w[0] * 100) / 100, 0.0};
  reported[1] = 1.0 - reported[0];
  const auto raw = recover_decisions(p, w.w).front().x;
  const auto crit = recover_decisions(p, reported);
  const auto& x = crit.front().x;
  std::snprintf(buf, sizeof buf, " x(%.2f, %.2f)=(%.3f, %.3f, %.3f) [unrounded w: (%.3f, %.3f, %.3f)];",
                reported[0], reported[1], x[0], x[1], x[2], raw[0], raw[1], raw[2]);
  o.detail << buf;
  o.require(std::abs(x[0] - 18.18) <= 0.01 && std::abs(x[1] - 50.00) <= 0.01 && std::abs(x[2] - 31.82) <= 0.01,
            "decisions (18.18, 50.00, 31.82) +- 0.01");
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-100.0, 200.0);
  std::vector<std::vector<double>> samples;
  for (int i = 0; i < 1000; ++i) {
    const double a = u(rng), b = u(rng);
    const std::vector<double> xs = {a, b, 100.0 - a - b};
    samples.push_back(objective_values(p, std::span<const double>(xs)));
  }
  const TangencyResult t = tangency_certificate(s, w.w, samples);
  std::snprintf(buf, sizeof buf, " tangency margin %.3g over 1000 samples", t.min_margin);
  o.detail << buf;
  o.require(t.pass, "tangency certificate");
  return o;
}

Outcome criterion6() {
  Outcome o;
  const std::vector<double> y = {1, 4, 2, 3};
  const MisfitLatencyReport r = run_misfit_latency(y, 1);
  o.detail << " " << r.system.pf.space->size() << " variables, " << r.system.block_equation_count << " equations;";
  for (const auto& d : r.profile)
    o.detail << " d=" << d.degree << " " << d.rows << "x" << d.cols << " dim " << d.intersection_dim << ";";
  if (!r.eliminant) {
    o.detail << " elimination stopped: " << r.failure;
    o.require(false, "one bivariate eliminant polynomial");
    return o;
  }
  o.require(r.eliminant->polynomials.size() == 1, "exactly one bivariate eliminant polynomial");
  o.require(r.samples.size() == 20 && *r.max_sample_residual <= 1e-8, "20 alpha-grid points satisfy the eliminant");
  o.require(r.s1_intercept && r.s1_intercept->relative_error <= 1e-6, "s1 intercept matches the exact-model oracle");
  o.require(r.s2_intercept && r.s2_intercept->relative_error <= 1e-6, "s2 intercept matches the AR oracle");
  char buf[128];
  std::snprintf(buf, sizeof buf, " max sample residual %.2e", *r.max_sample_residual);
  o.detail << buf;
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.5, 1.5);

  // polynomial calculus vs finite differences
  {
    auto sp = VariableSpace::create({"a", "b", "c"}, Role::decision);
    std::uniform_int_distribution<int> var(0, 2), deg(0, 4);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      Polynomial p(sp);
      for (int t = 0; t < 8; ++t) {
        Monomial m(3);
        const int d = deg(rng);
        for (int k = 0; k < d; ++k) m[var(rng)] += 1;
        p += Polynomial::monomial(sp, m, u(rng));
      }
      std::vector<double> z = {u(rng), u(rng), u(rng)};
      for (std::size_t v = 0; v < 3; ++v) {
        auto zp = z, zm = z;
        zp[v] += 1e-5;
        zm[v] -= 1e-5;
        const double fd = (p.evaluate(zp) - p.evaluate(zm)) / 2e-5;
        const double exact = differentiate(p, v).evaluate(z);
        worst = std::max(worst, std::abs(fd - exact) / std::max(1.0, std::abs(exact)));
      }
    }
    o.require(worst <= 1e-6, "derivatives match finite differences");
    o.detail << " calculus ok;";
  }
  // Macaulay row reconstruction (exact)
  {
    bool exact = true;
    for (int k = 1; k <= 4; ++k) {
      const PFSystem sys = build_pf_system(example(k));
      const MacaulayMatrix m = build_macaulay(sys, sys.max_degree() + 1);
      std::uniform_int_distribution<std::size_t> pick(0, m.num_rows() - 1);
      for (int r = 0; r < 25; ++r) {
        const std::size_t row = pick(rng);
        Eigen::RowVectorXd expect = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(m.num_cols()));
        const Polynomial shifted =
            Polynomial::monomial(sys.space, m.rows[row].shift) * sys.equations[m.rows[row].equation];
        for (const auto& [mono, c] : shifted.terms()) {
          const std::size_t col = monomial_index(mono);
          expect(static_cast<Eigen::Index>(col)) = c * m.column_scale[col] * m.row_scale[row];
        }
        exact = exact && (m.dense.row(static_cast<Eigen::Index>(row)) - expect).cwiseAbs().maxCoeff() == 0.0;
      }
    }
    o.require(exact, "Macaulay rows reconstruct bit-for-bit");
    o.detail << " rows ok;";
  }
  // p_d and q_d vs brute-force enumeration
  {
    bool ok = true;
    std::function<std::size_t(std::size_t, int)> count = [&](std::size_t v, int d) -> std::size_t {
      if (d < 0) return 0;
      if (v == 0) return 1;
      std::size_t total = 0;
      for (int e = 0; e <= d; ++e) total += count(v - 1, d - e);
      return total;
    };
    for (std::size_t v = 1; v <= 8; ++v)
      for (int d = 0; d <= 8; ++d) ok = ok && monomial_count(v, d) == count(v, d);
    for (int k = 1; k <= 4; ++k) {
      const PFSystem sys = build_pf_system(example(k));
      for (int d = sys.max_degree(); d <= 8; ++d) {
        std::size_t rows = 0;
        for (int di : sys.degrees) rows += count(sys.space->size(), d - di);
        ok = ok && expected_rows(sys, d) == rows;
      }
    }
    o.require(ok, "p_d and q_d formulas");
    o.detail << " dimensions ok;";
  }
  // ||V^T N_d||_max bound
  {
    double worst = 0.0;
    for (int k : {1, 3, 4}) {
      const PFSystem sys = build_pf_system(example(k));
      const MacaulayMatrix m = build_macaulay(sys, eliminant_of(k).degree_used);
      const ColumnSplit split = split_columns(m, sys.keep_vars);
      const IntersectionTest t = test_intersection(m, split, kDefaultRankTolerance, true);
      const Eigen::MatrixXd n = m.dense(Eigen::all, split.elim_columns);
      worst = std::max(worst, (t.left_null.transpose() * n).cwiseAbs().maxCoeff() / t.sigma_max_N);
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, " V^T N %.1e;", worst);
    o.detail << buf;
    o.require(worst <= 10 * kDefaultRankTolerance, "left null space annihilates N_d");
  }
  // dominance filter idempotence
  {
    std::uniform_int_distribution<int> d(0, 9);
    bool ok = true;
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<std::vector<double>> pts;
      for (int i = 0; i < 40; ++i) pts.push_back({double(d(rng)), double(d(rng)), double(d(rng))});
      const auto once = dominance_filter(pts);
      ok = ok && dominance_filter(once) == once;
    }
    o.require(ok, "dominance filter idempotent");
  }
  // weight recovery scale invariance
  {
    const EliminantSystem& e = eliminant_of(4);
    EliminantSystem scaled = e;
    for (auto& t : scaled.polynomials) t *= -37.5;
    double worst = 0.0;
    for (const auto& pt : sample_front(fixtures::portfolio(), 11, 16, 42).points) {
      const auto a = recover_weights(e, pt.s), b = recover_weights(scaled, pt.s);
      worst = std::max(worst, std::abs(a.w[0] - b.w[0]));
    }
    o.require(worst <= 1e-10, "weights invariant under eliminant scaling");
  }
  // eliminate determinism (byte-identical JSON)
  {
    bool same = true;
    for (int k : {1, 3, 4}) {
      const PFSystem sys = build_pf_system(example(k));
      same = same && to_json(eliminate(sys)).dump() == to_json(eliminate(sys)).dump();
    }
    o.require(same, "byte-identical reruns");
    o.detail << " filters, scale invariance, determinism checked";
  }
  return o;
}

const char* kTitles[8] = {"",
                          "eliminant structure",
                          "front residuals",
                          "printed eliminants",
                          "Example 3 zero-set equivalence",
                          "portfolio example",
                          "misfit-latency fixture",
                          "property suites"};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      which.push_back(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion N]...\n");
      return 64;
    }
  }
  if (which.empty()) which = {1, 2, 3, 4, 5, 6, 7};
  Outcome (*const run[8])() = {nullptr,     criterion1, criterion2, criterion3,
                               criterion4, criterion5, criterion6, criterion7};
  int failed = 0;
  for (int k : which) {
    if (k < 1 || k > 7) {
      std::fprintf(stderr, "no criterion %d\n", k);
      return 64;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run[k]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    if (!o.pass) ++failed;
    std::printf("criterion %d (%s): %s -%s (%.1f s)\n", k, kTitles[k], o.pass ? "PASS" : "FAIL",
                o.detail.str().c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  return failed;
}
