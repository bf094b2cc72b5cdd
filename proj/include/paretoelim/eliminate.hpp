#pragma once

// Numerical elimination on Macaulay matrices: degree search by the rank
// condition rank(M_d) - rank(N_d) >= 1, left null space of N_d, and
// extraction of eliminant polynomials in the objective variables.

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "paretoelim/errors.hpp"
#include "paretoelim/macaulay.hpp"
#include "paretoelim/problem.hpp"

namespace paretoelim {

inline constexpr double kDefaultRankTolerance = 1e-10;
inline constexpr int kDefaultDegreeCap = 12;

/// One step of the degree search.
struct DegreeRecord {
  int degree = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  int rank_M = 0;
  int rank_N = 0;
  int intersection_dim = 0;
  /// Rank of the eliminant Jacobian at the probe point (-1 when not checked).
  int eliminant_rank = -1;
  double seconds = 0.0;
};

nlohmann::json to_json(const DegreeRecord& r);

class DegreeCapExceeded : public Error {
 public:
  DegreeCapExceeded(const std::string& what, std::vector<DegreeRecord> profile)
      : Error(ErrorKind::degree_cap_exceeded, what), profile_(std::move(profile)) {}
  const std::vector<DegreeRecord>& profile() const { return profile_; }

 private:
  std::vector<DegreeRecord> profile_;
};

/// The next Macaulay matrix exceeds EliminateOptions::max_dense_entries.
class MacaulayTooLarge : public SizeViolation {
 public:
  MacaulayTooLarge(const std::string& what, std::vector<DegreeRecord> profile)
      : SizeViolation(what), profile_(std::move(profile)) {}
  const std::vector<DegreeRecord>& profile() const { return profile_; }

 private:
  std::vector<DegreeRecord> profile_;
};

/// Number of singular values > tol * sigma_max * max(rows, cols).
int numerical_rank(const Eigen::MatrixXd& a, double tol = kDefaultRankTolerance);

struct IntersectionTest {
  int rank_M = 0;
  int rank_N = 0;
  int dimension = 0;
  double sigma_max_M = 0.0;
  double sigma_max_N = 0.0;
  /// Orthonormal basis of the left null space of N (p x (p - rank_N)); only
  /// filled when requested.
  Eigen::MatrixXd left_null;
};

IntersectionTest test_intersection(const MacaulayMatrix& m, const ColumnSplit& split, double tol,
                                   bool want_left_null);

/// rank(M) - rank(N) with N the elimination columns of M.
int intersection_dimension(const MacaulayMatrix& m, const ColumnSplit& split, double tol = kDefaultRankTolerance);

struct EliminantSystem {
  SpacePtr space;  // the objective variables s1..sm
  std::vector<Polynomial> polynomials;
  int degree_used = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  int rank_M = 0;
  int rank_N = 0;
  int intersection_dim = 0;
  double tolerance_used = kDefaultRankTolerance;
  /// Codimension of the front at the probe point (-1 when not probed).
  int target_codimension = -1;
  std::vector<DegreeRecord> profile;
};

/// Left null space V of N, keep block of V^T M, then a rank-revealing
/// reduction to a canonical basis (pivoted reduced form) of that block.
/// Polynomials are mapped back to unscaled variables and normalized so the
/// largest-magnitude coefficient is +1; entries below 1e-10 are dropped.
EliminantSystem extract_eliminant(const MacaulayMatrix& m, const ColumnSplit& split,
                                  double tol = kDefaultRankTolerance);
EliminantSystem extract_eliminant(const MacaulayMatrix& m, const ColumnSplit& split, const IntersectionTest& test,
                                  double tol);

struct EliminateOptions {
  int degree_max = kDefaultDegreeCap;
  double rank_tol = kDefaultRankTolerance;
  MacaulayOptions macaulay;
  /// Require the eliminants to cut out the front with the right local
  /// codimension at a sampled point of the PF variety (see README).
  bool completeness_check = true;
  int probe_starts = 24;
  std::uint64_t seed = 42;
  /// Refuse to densify matrices with more entries than this.
  std::size_t max_dense_entries = 80'000'000;
};

/// Sampled point of the PF variety and the local codimension of the image of
/// the variety in objective space there.
struct FrontProbe {
  bool ok = false;
  Eigen::VectorXd point;     // full PF-space point
  Eigen::VectorXd s;         // its objective coordinates
  int codimension = 1;
};

FrontProbe probe_front(const PFSystem& sys, int starts, std::uint64_t seed);

/// Rank of the Jacobian of `polys` (w.r.t. their own variables) at `s`.
int eliminant_jacobian_rank(const std::vector<Polynomial>& polys, const Eigen::VectorXd& s);

/// Runs the degree loop and returns the eliminant at the first admissible degree.
EliminantSystem eliminate(const PFSystem& sys, const EliminateOptions& options = {});

/// Smallest admissible degree (same criterion as eliminate()).
int find_eliminant_degree(const PFSystem& sys, int degree_max = kDefaultDegreeCap,
                          double tol = kDefaultRankTolerance);

nlohmann::json to_json(const EliminantSystem& e);
EliminantSystem eliminant_from_json(const nlohmann::json& j);

}  // namespace paretoelim
