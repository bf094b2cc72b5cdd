#pragma once

// Problems used throughout the tests, built directly from polynomials.

#include "paretoelim/problem.hpp"

namespace fixtures {

using paretoelim::MOProblem;
using paretoelim::Polynomial;
using paretoelim::Role;
using paretoelim::VariableSpace;

// min ((x1-3)^2 + (x2-2)^2, x1 + x2, x1 + 2 x2)
inline MOProblem example1() {
  auto sp = VariableSpace::create({"x1", "x2"}, Role::decision);
  auto x1 = Polynomial::variable(sp, 0), x2 = Polynomial::variable(sp, 1);
  return paretoelim::make_problem({"x1", "x2"},
                                  {(x1 - 3.0) * (x1 - 3.0) + (x2 - 2.0) * (x2 - 2.0), x1 + x2, x1 + 2.0 * x2}, {});
}

// min (-x1^3 - x2^3, x1^2 - x2^2)  s.t.  x1^2 + (x2 + 1)^2 - 1 = 0
inline MOProblem example2() {
  auto sp = VariableSpace::create({"x1", "x2"}, Role::decision);
  auto x1 = Polynomial::variable(sp, 0), x2 = Polynomial::variable(sp, 1);
  return paretoelim::make_problem({"x1", "x2"}, {-1.0 * x1 * x1 * x1 - x2 * x2 * x2, x1 * x1 - x2 * x2},
                                  {x1 * x1 + (x2 + 1.0) * (x2 + 1.0) - 1.0});
}

// min (x^2, (x-1)^2, (x-2)^2)
inline MOProblem example3() {
  auto sp = VariableSpace::create({"x"}, Role::decision);
  auto x = Polynomial::variable(sp, 0);
  return paretoelim::make_problem({"x"}, {x * x, (x - 1.0) * (x - 1.0), (x - 2.0) * (x - 2.0)}, {});
}

// Mean-variance portfolio: min (-a^T x, x^T B x)  s.t.  sum(x) = 100
inline MOProblem portfolio() {
  auto sp = VariableSpace::create({"x1", "x2", "x3"}, Role::decision);
  Polynomial x[3] = {Polynomial::variable(sp, 0), Polynomial::variable(sp, 1), Polynomial::variable(sp, 2)};
  const double a[3] = {0.10, 0.20, 0.15};
  const double b[3][3] = {{5e-4, 1e-4, 2e-4}, {1e-4, 10e-4, 3e-4}, {2e-4, 3e-4, 7e-4}};
  Polynomial ret(sp), risk(sp);
  for (int i = 0; i < 3; ++i) {
    ret -= a[i] * x[i];
    for (int j = 0; j < 3; ++j) risk += b[i][j] * x[i] * x[j];
  }
  return paretoelim::make_problem({"x1", "x2", "x3"}, {ret, risk}, {x[0] + x[1] + x[2] - 100.0});
}

}  // namespace fixtures
