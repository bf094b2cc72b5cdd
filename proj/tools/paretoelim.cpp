// paretoelim: command-line front end.
//
//   paretoelim eliminate <problem.json> [-o eliminant.json]
//   paretoelim sample    <problem.json> [-o points.csv] [--eliminant e.json]
//   paretoelim verify    <problem.json> <eliminant.json>
//   paretoelim recover   <eliminant.json> --at s1,s2,... [--problem p.json]
//   paretoelim sysid     --y y1,y2,... --na k   (or --input sysid.json)
//   paretoelim plot      <points.csv> [<eliminant.json>] [-o front.svg]
//
// Exit codes: 0 success, 1 usage, 2 numerical failure, 3 I/O or schema.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "paretoelim/eliminate.hpp"
#include "paretoelim/errors.hpp"
#include "paretoelim/front.hpp"
#include "paretoelim/io.hpp"
#include "paretoelim/linalg.hpp"
#include "paretoelim/oracle.hpp"
#include "paretoelim/plot.hpp"
#include "paretoelim/sysid.hpp"

using namespace paretoelim;
using nlohmann::json;

namespace {

constexpr double kVerifyTolerance = 1e-8;

struct Flags {
  int degree_max = kDefaultDegreeCap;
  double rank_tol = kDefaultRankTolerance;
  int grid = 21;
  int starts = 64;
  std::uint64_t seed = 42;
  bool row_scaling = true;
  bool variable_scaling = true;
  bool completeness_check = true;
  std::string weight_mode;  // empty: as in the problem file
  std::size_t max_dense_entries = EliminateOptions{}.max_dense_entries;
};

json metadata(const std::string& command, const Flags& f) {
  return {{"command", command},
          {"degree_max", f.degree_max},
          {"rank_tol", f.rank_tol},
          {"grid", f.grid},
          {"starts", f.starts},
          {"seed", f.seed},
          {"row_scaling", f.row_scaling},
          {"variable_scaling", f.variable_scaling},
          {"completeness_check", f.completeness_check},
          {"max_dense_entries", f.max_dense_entries}};
}

EliminateOptions eliminate_options(const Flags& f) {
  EliminateOptions o;
  o.degree_max = f.degree_max;
  o.rank_tol = f.rank_tol;
  o.macaulay.row_scaling = f.row_scaling;
  o.macaulay.variable_scaling = f.variable_scaling;
  o.completeness_check = f.completeness_check;
  o.seed = f.seed;
  o.max_dense_entries = f.max_dense_entries;
  return o;
}

void emit(const json& j, const std::string& path) {
  if (path.empty())
    std::cout << j.dump(2) << '\n';
  else
    write_json_file(j, path);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw InvalidArgument("not a number: '" + item + "'");
    }
  }
  return v;
}

void print_profile(const std::vector<DegreeRecord>& profile) {
  for (const auto& r : profile) {
    std::cerr << "  d=" << r.degree << "  p_d x q_d = " << r.rows << " x " << r.cols << "  rank(M)=" << r.rank_M
              << "  rank(N)=" << r.rank_N << "  intersection=" << r.intersection_dim;
    if (r.eliminant_rank >= 0) std::cerr << "  eliminant rank=" << r.eliminant_rank;
    std::cerr << "  (" << std::fixed << std::setprecision(2) << r.seconds << " s)\n";
    std::cerr.unsetf(std::ios::floatfield);
  }
}

MOProblem problem_with_mode(const std::string& path, const Flags& f) {
  MOProblem p = load_problem(path);
  if (!f.weight_mode.empty()) p.weight_mode = weight_mode_from_string(f.weight_mode);
  return p;
}

int cmd_eliminate(const std::string& problem_path, const std::string& out, const std::string& dump_dir,
                  const Flags& f) {
  const MOProblem p = problem_with_mode(problem_path, f);
  const PFSystem sys = build_pf_system(p);
  std::cerr << "PF system: " << sys.space->size() << " variables, " << sys.equations.size()
            << " equations, max degree " << sys.max_degree() << "; linear algebra: " << linalg::backend_name()
            << '\n';
  try {
    const EliminantSystem e = eliminate(sys, eliminate_options(f));
    print_profile(e.profile);
    std::cerr << "eliminant: degree " << e.degree_used << ", " << e.rows << " x " << e.cols << ", "
              << e.polynomials.size() << " polynomial(s)\n";
    json j = to_json(e);
    j["metadata"] = metadata("eliminate", f);
    j["metadata"]["weight_mode"] = std::string(to_string(p.weight_mode));
    emit(j, out);
    if (!dump_dir.empty()) {
      MacaulayOptions mo = eliminate_options(f).macaulay;
      const MacaulayMatrix m = build_macaulay(sys, e.degree_used, mo);
      const std::string stem = dump_dir + "/macaulay_d" + std::to_string(e.degree_used);
      dump_macaulay(m, sys, stem + ".mtx", stem + ".json");
    }
  } catch (const DegreeCapExceeded& err) {
    print_profile(err.profile());
    throw;
  } catch (const MacaulayTooLarge& err) {
    print_profile(err.profile());
    throw;
  }
  return 0;
}

int cmd_sample(const std::string& problem_path, const std::string& out, const std::string& elim_path,
               const std::string& jsonl, const Flags& f) {
  const MOProblem p = problem_with_mode(problem_path, f);
  FrontSample sample = sample_front(p, f.grid, f.starts, f.seed);
  if (!elim_path.empty()) {
    const EliminantSystem e = load_eliminant(elim_path);
    for (auto& pt : sample.points) pt.residuals.eliminant = eliminant_residual(e, pt.s);
  }
  std::cerr << "sampled " << sample.points.size() << " non-dominated point(s); " << sample.failed
            << " weight(s) without a converged KKT point; " << sample.dominated << " dominated\n";
  if (out.empty())
    write_points_csv(std::cout, sample.points, p.num_objectives());
  else
    write_points_csv(out, sample.points, p.num_objectives());
  if (!jsonl.empty()) write_points_jsonl(jsonl, sample.points);
  return 0;
}

int cmd_verify(const std::string& problem_path, const std::string& elim_path, const std::string& out,
               const Flags& f) {
  const MOProblem p = problem_with_mode(problem_path, f);
  const EliminantSystem e = load_eliminant(elim_path);
  const FrontSample sample = sample_front(p, f.grid, f.starts, f.seed);
  double worst = 0.0;
  for (const auto& pt : sample.points) worst = std::max(worst, eliminant_residual(e, pt.s));
  const bool pass = !sample.points.empty() && worst <= kVerifyTolerance;
  json j = {{"points", sample.points.size()},
            {"failed", sample.failed},
            {"dominated", sample.dominated},
            {"max_residual", worst},
            {"tolerance", kVerifyTolerance},
            {"pass", pass},
            {"metadata", metadata("verify", f)}};
  emit(j, out);
  return pass ? 0 : 2;
}

int cmd_recover(const std::string& elim_path, const std::string& at, const std::string& problem_path, bool project,
                const std::string& out, const Flags& f) {
  const EliminantSystem e = load_eliminant(elim_path);
  std::vector<double> s = parse_list(at);
  if (s.size() != e.space->size())
    throw InvalidArgument("--at has " + std::to_string(s.size()) + " values, the eliminant has " +
                          std::to_string(e.space->size()) + " variables");
  json j;
  j["s"] = s;
  if (project) {
    s = project_to_variety(e, s);
    j["projected_s"] = s;
  }
  j["eliminant_residual"] = eliminant_residual(e, s);
  const WeightRecovery w = recover_weights(e, s);
  j["feasible"] = w.feasible;
  j["weights"] = w.w;
  j["distance"] = w.distance;
  int code = 0;
  if (!problem_path.empty()) {
    if (!w.feasible) {
      j["decisions"] = nullptr;
      code = 2;
    } else {
      const MOProblem p = problem_with_mode(problem_path, f);
      RecoverOptions ro;
      ro.starts = f.starts;
      ro.seed = f.seed;
      const auto crit = recover_decisions(p, w.w, {}, ro);
      j["decision_vars"] = p.decision_space->names();
      j["decisions"] = json::array();
      for (const auto& c : crit)
        j["decisions"].push_back({{"x", c.x},
                                  {"lambda", c.lambda},
                                  {"s", c.s},
                                  {"kkt_residual", c.kkt_residual},
                                  {"weighted_objective", c.weighted_objective}});
    }
  }
  j["metadata"] = metadata("recover", f);
  emit(j, out);
  return code;
}

int cmd_sysid(std::string y_text, int n_a, const std::string& input, const std::string& out,
              const std::string& pf_out, int alpha_grid, const Flags& f) {
  std::vector<double> y;
  if (!input.empty()) {
    const SysidInput in = sysid_input_from_json(read_json_file(input));
    y = in.y;
    n_a = in.n_a;
  } else {
    if (y_text.empty()) throw InvalidArgument("sysid needs --y or --input");
    y = parse_list(y_text);
  }
  MisfitLatencyOptions o;
  o.eliminate = eliminate_options(f);
  o.alpha_grid = alpha_grid;
  o.starts = f.starts;
  o.seed = f.seed;
  if (!pf_out.empty()) {
    const MisfitLatencySystem sys = build_misfit_latency_pf(y, n_a);
    json j;
    j["variables"] = sys.pf.space->names();
    j["roles"] = json::array();
    for (std::size_t i = 0; i < sys.pf.space->size(); ++i)
      j["roles"].push_back(std::string(to_string(sys.pf.space->role(i))));
    j["keep"] = json::array();
    for (auto k : sys.pf.keep_vars) j["keep"].push_back(sys.pf.space->name(k));
    j["equations"] = json::array();
    for (const auto& eq : sys.pf.equations) j["equations"].push_back(to_json(eq));
    write_json_file(j, pf_out);
  }
  const MisfitLatencyReport r = run_misfit_latency(y, n_a, o);
  std::cerr << "misfit-latency PF system: " << r.system.pf.space->size() << " variables, "
            << r.system.block_equation_count << " equations (closed-form count " << r.system.quoted_equation_count
            << ")\n";
  print_profile(r.profile);
  json j = to_json(r);
  j["metadata"] = metadata("sysid", f);
  j["metadata"]["alpha_grid"] = alpha_grid;
  emit(j, out);
  if (!r.eliminant) {
    std::cerr << "elimination stopped: " << r.failure << '\n';
    return 2;
  }
  return 0;
}

int cmd_plot(const std::string& points_path, const std::string& elim_path, const std::string& out) {
  const auto points = read_points_csv(points_path);
  std::optional<EliminantSystem> e;
  if (!elim_path.empty()) e = load_eliminant(elim_path);
  const std::string svg = render_svg(points, e ? &*e : nullptr);
  if (out.empty()) {
    std::cout << svg;
  } else {
    std::ofstream f(out);
    if (!f) throw IoError("cannot write " + out);
    f << svg;
  }
  return 0;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument:
      return 1;
    case ErrorKind::schema:
    case ErrorKind::io:
      return 3;
    default:
      return 2;
  }
}

void report_error(const std::string& kind, const std::string& message, const std::vector<DegreeRecord>* profile) {
  json j = {{"error", kind}, {"message", message}};
  if (profile) {
    j["profile"] = json::array();
    for (const auto& r : *profile) j["profile"].push_back(to_json(r));
  }
  std::cerr << j.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pareto fronts of polynomial multi-objective problems by Macaulay-matrix elimination"};
  app.require_subcommand(1);
  Flags f;

  auto add_elim_flags = [&](CLI::App* c) {
    c->add_option("--degree-max", f.degree_max, "Macaulay degree cap")->capture_default_str();
    c->add_option("--rank-tol", f.rank_tol, "relative rank tolerance")->capture_default_str();
    c->add_flag("--row-scaling,!--no-row-scaling", f.row_scaling, "scale Macaulay rows to unit norm (default on)");
    c->add_flag("--variable-scaling,!--no-variable-scaling", f.variable_scaling,
                "balance variable magnitudes before building M_d (default on)");
    c->add_flag("!--no-completeness-check", f.completeness_check,
                "accept the first degree with a nontrivial intersection");
    c->add_option("--max-entries", f.max_dense_entries, "largest Macaulay matrix (entries) factorized densely")
        ->capture_default_str();
  };
  auto add_sample_flags = [&](CLI::App* c) {
    c->add_option("--grid", f.grid, "weight grid resolution")->capture_default_str();
    c->add_option("--starts", f.starts, "Newton seeds per weight")->capture_default_str();
    c->add_option("--seed", f.seed, "random seed")->capture_default_str();
  };
  auto add_mode = [&](CLI::App* c) {
    c->add_option("--weight-mode", f.weight_mode, "override the problem's weight mode (convex|explicit)")
        ->check(CLI::IsMember({"convex", "explicit"}));
  };

  std::string problem, elim, out, dump_dir, at, points, jsonl, y_text, input, pf_out;
  int n_a = 1, alpha_grid = 20;
  bool project = false;

  auto* c_elim = app.add_subcommand("eliminate", "compute the eliminant of a problem's PF system");
  c_elim->add_option("problem", problem, "problem JSON")->required();
  c_elim->add_option("-o,--output", out, "eliminant JSON (default stdout)");
  c_elim->add_option("--dump", dump_dir, "directory for a MatrixMarket dump of the final M_d");
  c_elim->add_option("--seed", f.seed, "seed of the completeness probe")->capture_default_str();
  add_elim_flags(c_elim);
  add_mode(c_elim);

  auto* c_sample = app.add_subcommand("sample", "weighted-sum sampling of the front");
  c_sample->add_option("problem", problem, "problem JSON")->required();
  c_sample->add_option("-o,--output", out, "points CSV (default stdout)");
  c_sample->add_option("--eliminant", elim, "fill the eliminant residual column");
  c_sample->add_option("--jsonl", jsonl, "also write one JSON point per line");
  add_sample_flags(c_sample);
  add_mode(c_sample);

  auto* c_verify = app.add_subcommand("verify", "max eliminant residual over sampled front points");
  c_verify->add_option("problem", problem, "problem JSON")->required();
  c_verify->add_option("eliminant", elim, "eliminant JSON")->required();
  c_verify->add_option("-o,--output", out, "report JSON (default stdout)");
  add_sample_flags(c_verify);
  add_mode(c_verify);

  auto* c_recover = app.add_subcommand("recover", "weights (and decisions) at a point of the front");
  c_recover->add_option("eliminant", elim, "eliminant JSON")->required();
  c_recover->add_option("--at", at, "comma-separated objective values")->required()->allow_extra_args(false);
  c_recover->add_option("--problem", problem, "problem JSON, to recover decisions");
  c_recover->add_flag("--project", project, "project the point onto the eliminant variety first");
  c_recover->add_option("-o,--output", out, "report JSON (default stdout)");
  c_recover->add_option("--starts", f.starts, "Newton seeds")->capture_default_str();
  c_recover->add_option("--seed", f.seed, "random seed")->capture_default_str();
  add_mode(c_recover);

  auto* c_sysid = app.add_subcommand("sysid", "misfit-versus-latency front of an autonomous AR model");
  c_sysid->add_option("--y", y_text, "comma-separated output samples");
  c_sysid->add_option("--na", n_a, "model order")->capture_default_str();
  c_sysid->add_option("--input", input, "JSON {\"y\": [...], \"n_a\": k}");
  c_sysid->add_option("--alpha-grid", alpha_grid, "number of scalarized points")->capture_default_str();
  c_sysid->add_option("--pf-out", pf_out, "write the PF system JSON");
  c_sysid->add_option("-o,--output", out, "report JSON (default stdout)");
  c_sysid->add_option("--starts", f.starts, "Newton seeds per alpha")->capture_default_str();
  c_sysid->add_option("--seed", f.seed, "random seed")->capture_default_str();
  add_elim_flags(c_sysid);

  auto* c_plot = app.add_subcommand("plot", "SVG of sampled points and the eliminant zero curve");
  c_plot->add_option("points", points, "points CSV")->required();
  c_plot->add_option("eliminant", elim, "eliminant JSON");
  c_plot->add_option("-o,--output", out, "SVG file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("usage", e.what(), nullptr);
    return 1;
  }

  try {
    if (*c_elim) return cmd_eliminate(problem, out, dump_dir, f);
    if (*c_sample) return cmd_sample(problem, out, elim, jsonl, f);
    if (*c_verify) return cmd_verify(problem, elim, out, f);
    if (*c_recover) return cmd_recover(elim, at, problem, project, out, f);
    if (*c_sysid) return cmd_sysid(y_text, n_a, input, out, pf_out, alpha_grid, f);
    if (*c_plot) return cmd_plot(points, elim, out);
  } catch (const DegreeCapExceeded& e) {
    report_error(to_string(e.kind()), e.what(), &e.profile());
    return 2;
  } catch (const MacaulayTooLarge& e) {
    report_error(to_string(e.kind()), e.what(), &e.profile());
    return 2;
  } catch (const Error& e) {
    report_error(to_string(e.kind()), e.what(), nullptr);
    return exit_code(e.kind());
  } catch (const std::bad_alloc&) {
    report_error("numerical", "out of memory", nullptr);
    return 2;
  }
  return 1;
}
