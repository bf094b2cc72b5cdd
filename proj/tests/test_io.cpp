#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "fixtures.hpp"
#include "paretoelim/errors.hpp"
#include "paretoelim/io.hpp"
#include "paretoelim/plot.hpp"

using namespace paretoelim;
namespace fs = std::filesystem;

namespace {

std::string fixture(const std::string& name) { return std::string(PARETOELIM_FIXTURE_DIR) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = (fs::temp_directory_path() / name).string();
  std::ofstream(path) << text;
  return path;
}

bool same_problem(const MOProblem& a, const MOProblem& b) {
  if (a.decision_space->names() != b.decision_space->names()) return false;
  if (a.weight_mode != b.weight_mode) return false;
  if (a.objectives.size() != b.objectives.size() || a.constraints.size() != b.constraints.size()) return false;
  for (std::size_t i = 0; i < a.objectives.size(); ++i)
    if (a.objectives[i].terms() != b.objectives[i].terms()) return false;
  for (std::size_t i = 0; i < a.constraints.size(); ++i)
    if (a.constraints[i].terms() != b.constraints[i].terms()) return false;
  return true;
}

}  // namespace

TEST_CASE("portfolio fixture file") {
  const MOProblem p = load_problem(fixture("portfolio.json"));
  CHECK(p.num_decisions() == 3);
  CHECK(p.num_objectives() == 2);
  CHECK(p.num_constraints() == 1);
  // same objective values as the in-code fixture
  const std::vector<double> x = {18.18, 50.0, 31.82};
  const auto a = objective_values(p, std::span<const double>(x));
  const auto b = objective_values(fixtures::portfolio(), std::span<const double>(x));
  CHECK(a[0] == doctest::Approx(b[0]).epsilon(1e-14));
  CHECK(a[1] == doctest::Approx(b[1]).epsilon(1e-14));
}

TEST_CASE("every fixture file loads and round-trips exactly") {
  for (const char* name : {"example1.json", "example2.json", "example3.json", "portfolio.json"}) {
    const MOProblem p = load_problem(fixture(name));
    const auto path = (fs::temp_directory_path() / (std::string("rt_") + name)).string();
    save_problem(p, path);
    CHECK(same_problem(load_problem(path), p));
    fs::remove(path);
  }
  const MOProblem ex = fixtures::example2();
  const auto path = (fs::temp_directory_path() / "rt_code.json").string();
  save_problem(ex, path);
  CHECK(same_problem(load_problem(path), ex));
  fs::remove(path);
}

TEST_CASE("schema violations") {
  const std::string one = R"([{"coeff": 1, "monomial": {"x": 2}}])";
  auto problem = [&](const std::string& vars, const std::string& objs, const std::string& extra = "") {
    return R"({"decision_vars": )" + vars + R"(, "objectives": )" + objs + extra + "}";
  };
  auto load = [&](const std::string& text) { return load_problem(write_temp("schema.json", text)); };

  CHECK_THROWS_AS(load(problem(R"(["x"])", "[]")), SchemaError);
  CHECK_THROWS_AS(load(problem(R"(["x"])", "[" + one + "]")), SchemaError);
  CHECK_THROWS_AS(load(problem(R"(["x"])", "[" + one + R"(, [{"coeff": 1, "monomial": {"z": 1}}]])")),
                  SchemaError);
  CHECK_THROWS_AS(load(problem(R"(["x", "x"])", "[" + one + "," + one + "]")), SchemaError);
  CHECK_THROWS_AS(load(problem(R"(["x"])", "[" + one + "," + one + "]", R"(, "weight_mode": "other")")),
                  SchemaError);
  CHECK_THROWS_AS(load(R"({"objectives": []})"), SchemaError);
  CHECK(load(problem(R"(["x"])", "[" + one + "," + one + "]")).num_objectives() == 2);

  // field diagnostics name the offending entry
  try {
    load(problem(R"(["x"])", "[" + one + R"(, [{"coeff": 1, "monomial": {"z": 1}}]])"));
    FAIL("expected a schema error");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("objectives[1]") != std::string::npos);
    CHECK(std::string(e.what()).find("'z'") != std::string::npos);
  }
  // parse errors carry line and column
  try {
    load("{\n  \"decision_vars\": [\"x\"],\n  oops\n}");
    FAIL("expected a schema error");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find(":3:") != std::string::npos);
  }
  CHECK_THROWS_AS(load_problem("/nonexistent/problem.json"), IoError);
}

TEST_CASE("sysid input") {
  const auto in = sysid_input_from_json(read_json_file(fixture("sysid.json")));
  CHECK(in.y == std::vector<double>{1, 4, 2, 3});
  CHECK(in.n_a == 1);
  CHECK_THROWS_AS(sysid_input_from_json(nlohmann::json::parse(R"({"y": [1, "a"], "n_a": 1})")), SchemaError);
  CHECK_THROWS_AS(sysid_input_from_json(nlohmann::json::parse(R"({"y": [1, 2]})")), SchemaError);
}

TEST_CASE("marching squares traces a circle") {
  auto f = [](double x, double y) { return x * x + y * y - 1.0; };
  const PlotBox box{-2, 2, -2, 2};
  const auto segs = marching_squares(f, box, 100, 100);
  CHECK(segs.size() > 100);
  double length = 0;
  for (const auto& s : segs) {
    CHECK(std::abs(std::hypot(s.x0, s.y0) - 1.0) < 1e-3);
    CHECK(std::abs(std::hypot(s.x1, s.y1) - 1.0) < 1e-3);
    length += std::hypot(s.x1 - s.x0, s.y1 - s.y0);
  }
  CHECK(length == doctest::Approx(2 * M_PI).epsilon(1e-3));
  // a function without a zero crossing draws nothing
  CHECK(marching_squares([](double, double) { return 1.0; }, box, 10, 10).empty());
}

TEST_CASE("saddle cells produce two disjoint segments") {
  // xy = 0.01 has branches in the first and third quadrants
  auto f = [](double x, double y) { return x * y - 0.01; };
  const auto segs = marching_squares(f, PlotBox{-1, 1, -1, 1}, 1, 1);
  CHECK(segs.size() == 2);
}

TEST_CASE("plot bounds and SVG output") {
  const auto b = inflated_bounds({{0, 0}, {10, 5}});
  CHECK(b.xmin == doctest::Approx(-2));
  CHECK(b.xmax == doctest::Approx(12));
  CHECK(b.ymin == doctest::Approx(-1));
  CHECK(b.ymax == doctest::Approx(6));

  auto sp = VariableSpace::create({"s1", "s2"}, Role::objective);
  EliminantSystem e;
  e.space = sp;
  e.polynomials = {Polynomial::variable(sp, 0) + Polynomial::variable(sp, 1) - 1.0};
  ParetoPoint p, q;
  p.s = {0.25, 0.75};
  q.s = {0.75, 0.25};
  const std::vector<ParetoPoint> pts = {p, q};
  const std::string svg = render_svg(pts, &e);
  CHECK(svg.rfind("<svg", 0) == 0);
  std::size_t circles = 0, lines = 0;
  for (std::size_t k = svg.find("<circle"); k != std::string::npos; k = svg.find("<circle", k + 1)) ++circles;
  for (std::size_t k = svg.find("<line"); k != std::string::npos; k = svg.find("<line", k + 1)) ++lines;
  CHECK(circles == 2);
  CHECK(lines > 0);
  // inputs are not modified
  CHECK(pts[0].s == std::vector<double>{0.25, 0.75});

  auto sp3 = VariableSpace::create({"s1", "s2", "s3"}, Role::objective);
  EliminantSystem e3;
  e3.space = sp3;
  e3.polynomials = {Polynomial::variable(sp3, 0)};
  CHECK_THROWS_AS(render_svg(pts, &e3), InvalidArgument);
}
