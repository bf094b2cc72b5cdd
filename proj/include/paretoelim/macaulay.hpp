#pragma once

// Macaulay matrices of a PF system.
//
// Row (i, u) holds the coefficients of u * r_i(z) for every equation r_i of
// degree d_i <= d and every shift monomial u with deg(u) <= d - d_i. Columns
// are the monomials of degree <= d in canonical graded order, so the columns
// of M_d are a prefix of the columns of M_{d+1}.

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "paretoelim/problem.hpp"

namespace paretoelim {

struct MacaulayOptions {
  /// Scale every row to unit 2-norm. Row space and ranks are unchanged.
  bool row_scaling = true;
  /// Balance coefficient magnitudes by a per-variable change of scale
  /// z_j = c_j * z'_j (least squares on log10 |coefficient|). This is a
  /// diagonal column scaling, so ranks and the keep/eliminate column
  /// pattern are unchanged; eliminants are mapped back to unscaled variables.
  bool variable_scaling = true;
  /// Build sparse storage when rows * cols exceeds this many entries.
  std::size_t sparse_threshold = 10'000'000;
};

struct RowSource {
  std::size_t equation;
  Monomial shift;
};

/// Per-variable scale factors c_j minimizing the spread of log10 |coefficient|
/// across all terms of the system (one free offset per equation).
std::vector<double> balance_variables(const PFSystem& sys);

struct MacaulayMatrix {
  SpacePtr space;
  int degree = 0;
  std::vector<Monomial> columns;
  std::vector<RowSource> rows;

  bool is_sparse = false;
  Eigen::MatrixXd dense;
  Eigen::SparseMatrix<double, Eigen::RowMajor> sparse;

  /// entry(r, c) = coefficient * column_scale[c] * row_scale[r]
  std::vector<double> row_scale;
  std::vector<double> column_scale;
  std::vector<double> variable_scale;
  MacaulayOptions options;

  std::size_t num_rows() const { return rows.size(); }
  std::size_t num_cols() const { return columns.size(); }
  Eigen::MatrixXd to_dense() const;
};

/// p_d = sum over equations with 0 <= d_i <= d of C(V + d - d_i, d - d_i).
std::size_t expected_rows(const PFSystem& sys, int d);

/// Throws InvalidArgument when d is below the maximal equation degree.
MacaulayMatrix build_macaulay(const PFSystem& sys, int d, const MacaulayOptions& options = {});

/// Same matrix as build_macaulay(sys, M.degree + 1); the rows of M are kept
/// as a prefix and only the new shifts are appended.
MacaulayMatrix extend_macaulay(const MacaulayMatrix& m, const PFSystem& sys);

struct ColumnSplit {
  std::vector<Eigen::Index> keep_columns;  // monomials in the kept variables only (incl. 1)
  std::vector<Eigen::Index> elim_columns;  // at least one eliminated variable
};

ColumnSplit split_columns(const MacaulayMatrix& m, const std::vector<std::size_t>& keep_vars);

/// Matrix Market coordinate file plus a JSON sidecar with column monomials,
/// row provenance and scale factors.
void dump_macaulay(const MacaulayMatrix& m, const PFSystem& sys, const std::string& mtx_path,
                   const std::string& sidecar_path);

}  // namespace paretoelim
