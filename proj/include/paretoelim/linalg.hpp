#pragma once

// Dense SVDs for the rank tests. LAPACK's dgesdd is loaded at run time
// (OpenBLAS or reference LAPACK) and checked once against Eigen; if no working
// library is found, Eigen's BDCSVD is used. Set PARETOELIM_SVD=eigen to force
// the fallback.

#include <string>

#include <Eigen/Dense>

namespace paretoelim::linalg {

/// Which SVD implementation is in use.
std::string backend_name();

/// Singular values in descending order. Throws NumericalError if the
/// divide-and-conquer SVD fails to converge.
Eigen::VectorXd singular_values(const Eigen::MatrixXd& a);

struct LeftSvd {
  Eigen::MatrixXd u;  // rows x rows, orthogonal
  Eigen::VectorXd s;  // min(rows, cols) singular values, descending
};

/// SVD keeping the complete left factor.
LeftSvd left_svd(const Eigen::MatrixXd& a);

/// Number of singular values above tol * s_max * max(rows, cols).
int rank_from_singular_values(const Eigen::VectorXd& s, double tol, Eigen::Index rows, Eigen::Index cols);

}  // namespace paretoelim::linalg
