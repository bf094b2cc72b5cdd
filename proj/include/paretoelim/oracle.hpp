#pragma once

// Weighted-sum sampling of the front, independent of the eliminant.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "paretoelim/front.hpp"

namespace paretoelim {

inline constexpr double kGridInterior = 1e-4;

/// Weights on the simplex: the positive integer compositions of
/// (resolution + m - 2) into m parts, normalized, then clamped to
/// [eps, 1 - eps] and renormalized. m = 2 gives w1 = k / resolution,
/// k = 1..resolution-1; resolution 2 gives the barycentre. Lexicographic order.
std::vector<std::vector<double>> simplex_grid(std::size_t m, int resolution, double eps = kGridInterior);

/// Global minimizer of sum_i w_i f_i among the real KKT points found by
/// multi-start Newton. Requires w_i > 0 and sum(w) = 1.
ParetoPoint weighted_sum_solve(const MOProblem& p, std::span<const double> w, const RecoverOptions& options = {});

struct FrontSample {
  std::vector<ParetoPoint> points;  // non-dominated, in grid order
  std::size_t failed = 0;           // grid weights where Newton found nothing
  std::size_t dominated = 0;        // removed by the dominance filter
};

FrontSample sample_front(const MOProblem& p, int resolution = 21, int starts = 64, std::uint64_t seed = 42);

/// Indices of the points not dominated by any other point (<= everywhere,
/// < somewhere). Duplicates do not dominate each other.
std::vector<std::size_t> nondominated_indices(const std::vector<std::vector<double>>& points);
std::vector<std::vector<double>> dominance_filter(const std::vector<std::vector<double>>& points);

/// Columns s1..sm, w1..wm, kkt_residual, eliminant_residual; 17 significant
/// digits; missing values are written as empty fields.
void write_points_csv(std::ostream& out, const std::vector<ParetoPoint>& points, std::size_t m);
void write_points_csv(const std::string& path, const std::vector<ParetoPoint>& points, std::size_t m);
std::vector<ParetoPoint> read_points_csv(const std::string& path);

}  // namespace paretoelim
