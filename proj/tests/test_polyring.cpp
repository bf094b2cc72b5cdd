#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "paretoelim/errors.hpp"
#include "paretoelim/macaulay.hpp"
#include "paretoelim/polyring.hpp"

using namespace paretoelim;

namespace {

SpacePtr space_of(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("z" + std::to_string(i + 1));
  return VariableSpace::create(names, Role::decision);
}

Polynomial random_poly(const SpacePtr& sp, int max_degree, int terms, std::mt19937_64& rng, bool integer = false) {
  std::uniform_int_distribution<int> var(0, static_cast<int>(sp->size()) - 1), deg(0, max_degree), icoef(-9, 9);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  Polynomial p(sp);
  for (int t = 0; t < terms; ++t) {
    Monomial m(sp->size());
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) m[var(rng)] += 1;
    p += Polynomial::monomial(sp, m, integer ? icoef(rng) : coef(rng));
  }
  return p;
}

// every exponent vector of length v with sum <= d
void enumerate(std::size_t v, int d, std::vector<int>& cur, std::set<std::vector<int>>& out) {
  if (cur.size() == v) {
    out.insert(cur);
    return;
  }
  for (int e = 0; e <= d; ++e) {
    cur.push_back(e);
    enumerate(v, d - e, cur, out);
    cur.pop_back();
  }
}

}  // namespace

TEST_CASE("monomial enumeration") {
  CHECK(monomials_up_to(7, 2).size() == 36);
  CHECK(monomials_up_to(6, 8).size() == 3003);
  const auto uni = monomials_up_to(1, 3);
  REQUIRE(uni.size() == 4);
  for (int k = 0; k < 4; ++k) CHECK(uni[k][0] == k);
}

TEST_CASE("monomial counts match brute force for V <= 8, d <= 8") {
  for (std::size_t v = 1; v <= 8; ++v) {
    for (int d = 0; d <= 8; ++d) {
      std::set<std::vector<int>> all;
      std::vector<int> cur;
      enumerate(v, d, cur, all);
      const auto mons = monomials_up_to(v, d);
      CHECK(mons.size() == all.size());
      CHECK(monomial_count(v, d) == all.size());
      // strictly increasing total degree, no ties within a degree
      for (std::size_t i = 1; i < mons.size(); ++i) {
        CHECK(mons[i - 1].degree() <= mons[i].degree());
        CHECK(GradedOrder{}(mons[i - 1], mons[i]));
      }
    }
  }
}

TEST_CASE("Macaulay row counts match brute-force shift enumeration") {
  std::mt19937_64 rng(5);
  for (std::size_t v = 1; v <= 8; ++v) {
    auto sp = space_of(v);
    std::vector<Polynomial> eqs;
    for (int k = 0; k < 3; ++k)
      eqs.push_back(random_poly(sp, 1 + k, 4, rng) + Polynomial::monomial(sp, Monomial::unit(v, 0, 1 + k)));
    const PFSystem sys = make_pf_system(sp, eqs);
    for (int d = sys.max_degree(); d <= 8; ++d) {
      std::size_t rows = 0;
      for (int di : sys.degrees) {
        std::set<std::vector<int>> shifts;
        std::vector<int> cur;
        enumerate(v, d - di, cur, shifts);
        rows += shifts.size();
      }
      CHECK(expected_rows(sys, d) == rows);
    }
  }
}

TEST_CASE("arithmetic") {
  auto sp = VariableSpace::create({"x"}, Role::decision);
  const auto x = Polynomial::variable(sp, 0);
  CHECK((x + 1.0) * (x - 1.0) == x * x - 1.0);
  const Polynomial zero(sp);
  CHECK(x + zero == x);
  auto s = VariableSpace::create({"s1", "s2"}, Role::objective);
  const auto half = 0.5 * (Polynomial::variable(s, 0) + Polynomial::variable(s, 1));
  CHECK(half.coefficient(Monomial::unit(2, 0)) == 0.5);
  CHECK(half.coefficient(Monomial::unit(2, 1)) == 0.5);
  CHECK(zero.degree() == -1);
  CHECK_THROWS_AS(x + Polynomial::variable(s, 0), InvalidArgument);
}

TEST_CASE("differentiation") {
  auto sp = VariableSpace::create({"x", "w1", "w2"}, {Role::decision, Role::weight, Role::weight});
  const auto x = Polynomial::variable(sp, 0), w1 = Polynomial::variable(sp, 1), w2 = Polynomial::variable(sp, 2);
  CHECK(differentiate(x * x, "x") == 2.0 * x);
  const Polynomial lag = 0.5 * (w1 * x * x + w2 * (x - 1.0) * (x - 1.0) + (1.0 - w1 - w2) * (x - 2.0) * (x - 2.0));
  const Polynomial g = differentiate(lag, "x");
  CHECK(g == x - 2.0 + 2.0 * w1 + w2);
  CHECK(g.degree() == 1);
  auto s = VariableSpace::create({"s1", "s2"}, Role::objective);
  CHECK(differentiate(Polynomial::variable(s, 1) * Polynomial::variable(s, 1), "s1").is_zero());
  CHECK_THROWS_AS(differentiate(x, "nope"), InvalidArgument);
}

TEST_CASE("evaluation of printed eliminants") {
  auto s = VariableSpace::create({"s1", "s2", "s3"}, Role::objective);
  const auto s1 = Polynomial::variable(s, 0), s2 = Polynomial::variable(s, 1), s3 = Polynomial::variable(s, 2);
  const Polynomial t = 5.0 * s2 * s2 - 6.0 * s2 * s3 + 2.0 * s3 * s3 - s1 - 8.0 * s2 + 2.0 * s3 + 13.0;
  CHECK(t.evaluate(std::map<std::string, double>{{"s1", 13}, {"s2", 0}, {"s3", 0}}) == 0.0);
  CHECK(t.evaluate(std::map<std::string, double>{{"s1", 0}, {"s2", 5}, {"s3", 7}}) == 0.0);
  CHECK_THROWS_AS(t.evaluate(std::map<std::string, double>{{"s1", 0}}), InvalidArgument);

  auto q = VariableSpace::create({"s1", "s2"}, Role::objective);
  const auto a = Polynomial::variable(q, 0), b = Polynomial::variable(q, 1);
  const Polynomial t2 = pow(b, 6) - 12.0 * pow(b, 5) - 12.0 * a * pow(b, 4) + 16.0 * pow(a, 4) +
                        48.0 * pow(a, 3) * b + 48.0 * a * a * b * b + 32.0 * a * pow(b, 3) + 48.0 * pow(b, 4) -
                        32.0 * pow(a, 3) - 48.0 * a * a * b;
  // x = (0, -2): f1 = 8, f2 = -4
  CHECK(t2.evaluate(std::map<std::string, double>{{"s1", 8}, {"s2", -4}}) == 0.0);
}

TEST_CASE("calculus properties on random polynomials") {
  std::mt19937_64 rng(17);
  auto sp = space_of(4);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 50; ++trial) {
    const Polynomial p = random_poly(sp, 4, 8, rng), q = random_poly(sp, 3, 6, rng);
    for (std::size_t v = 0; v < 4; ++v) {
      // product rule
      const Polynomial lhs = differentiate(p * q, v);
      const Polynomial rhs = differentiate(p, v) * q + p * differentiate(q, v);
      std::vector<double> z(4);
      for (double& zi : z) zi = u(rng);
      CHECK(lhs.evaluate(z) == doctest::Approx(rhs.evaluate(z)).epsilon(1e-12));
      CHECK(lhs.degree() == rhs.degree());

      // finite differences
      const double h = 1e-5;
      auto zp = z, zm = z;
      zp[v] += h;
      zm[v] -= h;
      const double fd = (p.evaluate(zp) - p.evaluate(zm)) / (2 * h);
      const double exact = differentiate(p, v).evaluate(z);
      CHECK(std::abs(fd - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
    }
    // with integer coefficients every product is exact, so the term maps must agree exactly
    const Polynomial a = random_poly(sp, 3, 6, rng, true), b = random_poly(sp, 3, 6, rng, true),
                     c = random_poly(sp, 2, 5, rng, true);
    CHECK((a * b).terms() == (b * a).terms());
    CHECK(((a * b) * c).terms() == (a * (b * c)).terms());
  }
}

TEST_CASE("variable spaces") {
  CHECK_THROWS_AS(VariableSpace::create({"x", "x"}, Role::decision), InvalidArgument);
  auto sp = VariableSpace::create({"x", "s"}, {Role::decision, Role::objective});
  CHECK(sp->index("s") == 1);
  CHECK(sp->role(1) == Role::objective);
  CHECK_THROWS_AS(sp->index("y"), InvalidArgument);
}
