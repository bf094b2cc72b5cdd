#include "paretoelim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "paretoelim/errors.hpp"

namespace paretoelim {

namespace {

void compositions(std::size_t parts, int total, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    current.push_back(total);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int first = 1; first <= total - static_cast<int>(parts) + 1; ++first) {
    current.push_back(first);
    compositions(parts - 1, total - first, current, out);
    current.pop_back();
  }
}

bool dominates(const std::vector<double>& a, const std::vector<double>& b) {
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strict = true;
  }
  return strict;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) fields.push_back(f);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

std::vector<std::vector<double>> simplex_grid(std::size_t m, int resolution, double eps) {
  if (m < 2) throw InvalidArgument("simplex grid needs at least two weights");
  if (resolution < 2) throw InvalidArgument("grid resolution must be at least 2");
  std::vector<std::vector<int>> comps;
  std::vector<int> current;
  compositions(m, resolution + static_cast<int>(m) - 2, current, comps);
  std::vector<std::vector<double>> grid;
  for (const auto& c : comps) {
    std::vector<double> w(m);
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) total += c[i];
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      w[i] = std::clamp(c[i] / total, eps, 1.0 - eps);
      sum += w[i];
    }
    for (double& v : w) v /= sum;
    grid.push_back(std::move(w));
  }
  return grid;
}

ParetoPoint weighted_sum_solve(const MOProblem& p, std::span<const double> w, const RecoverOptions& options) {
  double sum = 0.0;
  for (double wi : w) {
    if (!(wi > 0.0)) throw InvalidArgument("weighted-sum weights must be strictly positive");
    sum += wi;
  }
  if (std::abs(sum - 1.0) > 1e-10) throw InvalidArgument("weights must sum to 1");
  const auto candidates = recover_decisions(p, w, {}, options);
  const CriticalPoint& best = candidates.front();
  ParetoPoint pt;
  pt.s = best.s;
  pt.w = std::vector<double>(w.begin(), w.end());
  pt.x = best.x;
  pt.lambda = best.lambda;
  pt.residuals.kkt = best.kkt_residual;
  pt.residuals.objective = 0.0;
  return pt;
}

FrontSample sample_front(const MOProblem& p, int resolution, int starts, std::uint64_t seed) {
  const auto grid = simplex_grid(p.num_objectives(), resolution);
  std::mt19937_64 master(seed);
  FrontSample out;
  std::vector<ParetoPoint> solved;
  std::vector<double> previous;
  for (const auto& w : grid) {
    RecoverOptions opts;
    opts.starts = starts;
    opts.seed = master();
    try {
      std::vector<std::vector<double>> seeds;
      if (!previous.empty()) seeds.push_back(previous);
      const auto candidates = recover_decisions(p, w, seeds, opts);
      const CriticalPoint& best = candidates.front();
      ParetoPoint pt;
      pt.s = best.s;
      pt.w = w;
      pt.x = best.x;
      pt.lambda = best.lambda;
      pt.residuals.kkt = best.kkt_residual;
      pt.residuals.objective = 0.0;
      previous = best.x;
      solved.push_back(std::move(pt));
    } catch (const NoConvergence&) {
      ++out.failed;
    }
  }
  std::vector<std::vector<double>> svals;
  for (const auto& pt : solved) svals.push_back(pt.s);
  const auto keep = nondominated_indices(svals);
  out.dominated = solved.size() - keep.size();
  for (std::size_t i : keep) out.points.push_back(solved[i]);
  return out;
}

std::vector<std::size_t> nondominated_indices(const std::vector<std::vector<double>>& points) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j)
      if (j != i && dominates(points[j], points[i])) dominated = true;
    if (!dominated) keep.push_back(i);
  }
  return keep;
}

std::vector<std::vector<double>> dominance_filter(const std::vector<std::vector<double>>& points) {
  std::vector<std::vector<double>> out;
  for (std::size_t i : nondominated_indices(points)) out.push_back(points[i]);
  return out;
}

void write_points_csv(std::ostream& out, const std::vector<ParetoPoint>& points, std::size_t m) {
  for (std::size_t i = 1; i <= m; ++i) out << 's' << i << ',';
  for (std::size_t i = 1; i <= m; ++i) out << 'w' << i << ',';
  out << "kkt_residual,eliminant_residual\n";
  out << std::setprecision(17);
  for (const auto& p : points) {
    if (p.s.size() != m) throw InvalidArgument("point dimension differs from the CSV header");
    for (double v : p.s) out << v << ',';
    for (std::size_t i = 0; i < m; ++i) {
      if (p.w) out << (*p.w)[i];
      out << ',';
    }
    if (p.residuals.kkt) out << *p.residuals.kkt;
    out << ',';
    if (p.residuals.eliminant) out << *p.residuals.eliminant;
    out << '\n';
  }
}

void write_points_csv(const std::string& path, const std::vector<ParetoPoint>& points, std::size_t m) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  write_points_csv(out, points, m);
}

std::vector<ParetoPoint> read_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::string line;
  if (!std::getline(in, line)) throw SchemaError(path + ": empty CSV file");
  const auto header = split_csv(line);
  std::size_t m = 0;
  while (m < header.size() && header[m] == "s" + std::to_string(m + 1)) ++m;
  if (m < 1) throw SchemaError(path + ": header must start with s1");
  std::vector<ParetoPoint> points;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != header.size())
      throw SchemaError(path + ":" + std::to_string(lineno) + ": expected " + std::to_string(header.size()) +
                        " fields");
    ParetoPoint p;
    try {
      for (std::size_t i = 0; i < m; ++i) p.s.push_back(std::stod(fields[i]));
      for (std::size_t c = m; c < header.size(); ++c) {
        if (fields[c].empty()) continue;
        const double v = std::stod(fields[c]);
        if (header[c] == "kkt_residual")
          p.residuals.kkt = v;
        else if (header[c] == "eliminant_residual")
          p.residuals.eliminant = v;
        else if (header[c][0] == 'w') {
          if (!p.w) p.w = std::vector<double>();
          p.w->push_back(v);
        }
      }
    } catch (const std::logic_error&) {
      throw SchemaError(path + ":" + std::to_string(lineno) + ": non-numeric field");
    }
    points.push_back(std::move(p));
  }
  return points;
}

}  // namespace paretoelim
