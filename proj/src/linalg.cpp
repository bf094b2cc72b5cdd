#include "paretoelim/linalg.hpp"

#include <dlfcn.h>

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "paretoelim/errors.hpp"

namespace paretoelim::linalg {

namespace {

// Fortran LAPACK divide-and-conquer SVD; trailing argument is the hidden
// length of the JOBZ string.
using dgesdd_t = void (*)(const char* jobz, const int* m, const int* n, double* a, const int* lda, double* s,
                          double* u, const int* ldu, double* vt, const int* ldvt, double* work, const int* lwork,
                          int* iwork, int* info, std::size_t jobz_len);

struct Backend {
  dgesdd_t dgesdd = nullptr;
  std::string name = "eigen-bdcsvd";
};

// Returns info from dgesdd; u/vt may be null for jobz == 'N'.
int call_dgesdd(dgesdd_t fn, char jobz, Eigen::MatrixXd& work, Eigen::VectorXd& s, double* u, int ldu, double* vt,
                int ldvt) {
  const int m = static_cast<int>(work.rows());
  const int n = static_cast<int>(work.cols());
  const int lda = std::max(1, m);
  ldu = std::max(1, ldu);
  ldvt = std::max(1, ldvt);
  std::vector<int> iwork(8 * static_cast<std::size_t>(std::min(m, n)));
  double query = 0.0;
  int lwork = -1;
  int info = 0;
  double dummy = 0.0;
  fn(&jobz, &m, &n, work.data(), &lda, s.data(), u ? u : &dummy, &ldu, vt ? vt : &dummy, &ldvt, &query, &lwork,
     iwork.data(), &info, 1);
  if (info != 0) return info;
  lwork = static_cast<int>(query) + 1;
  std::vector<double> buf(static_cast<std::size_t>(lwork));
  fn(&jobz, &m, &n, work.data(), &lda, s.data(), u ? u : &dummy, &ldu, vt ? vt : &dummy, &ldvt, buf.data(), &lwork,
     iwork.data(), &info, 1);
  return info;
}

// The library SVD must agree with Eigen on a matrix large enough to reach the
// blocked BLAS-3 kernels; some optimized kernels have been seen to return
// wrong products.
bool self_test(dgesdd_t fn) {
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd a(260, 230);
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) a(i, j) = normal(rng);
  Eigen::MatrixXd work = a;
  Eigen::VectorXd s(230);
  Eigen::MatrixXd u(260, 260), vt(230, 230);
  if (call_dgesdd(fn, 'A', work, s, u.data(), 260, vt.data(), 230) != 0) return false;
  const double orth = (u.transpose() * u - Eigen::MatrixXd::Identity(260, 260)).cwiseAbs().maxCoeff();
  const double recon = (u.leftCols(230) * s.asDiagonal() * vt - a).cwiseAbs().maxCoeff();
  return orth < 1e-10 && recon < 1e-9 * s(0);
}

Backend load_backend() {
  Backend b;
  const char* forced = std::getenv("PARETOELIM_SVD");
  if (forced && std::string(forced) == "eigen") return b;
#if defined(__x86_64__) || defined(__i386__)
  // OpenBLAS picks its Cooperlake kernels on CPUs with AVX512-BF16; in the
  // 0.3.2x series their DGEMM produced wrong results. SkylakeX kernels are
  // equivalent for double precision. An explicit user setting wins.
  if (!std::getenv("OPENBLAS_CORETYPE") && __builtin_cpu_supports("avx512bf16"))
    setenv("OPENBLAS_CORETYPE", "SkylakeX", 0);
#endif
  for (const char* lib : {"libopenblas.so.0", "libopenblas.so", "liblapack.so.3", "liblapack.so"}) {
    void* handle = dlopen(lib, RTLD_NOW | RTLD_LOCAL);
    if (!handle) continue;
    auto fn = reinterpret_cast<dgesdd_t>(dlsym(handle, "dgesdd_"));
    if (fn && self_test(fn)) {
      b.dgesdd = fn;
      b.name = std::string("lapack-dgesdd (") + lib + ")";
      return b;
    }
  }
  return b;
}

const Backend& backend() {
  static const Backend b = load_backend();
  return b;
}

void check_info(int info) {
  if (info < 0) throw NumericalError("dgesdd: illegal argument " + std::to_string(-info));
  if (info > 0) throw NumericalError("dgesdd: SVD did not converge");
}

}  // namespace

std::string backend_name() { return backend().name; }

Eigen::VectorXd singular_values(const Eigen::MatrixXd& a) {
  if (a.rows() == 0 || a.cols() == 0) return Eigen::VectorXd();
  const Backend& b = backend();
  if (!b.dgesdd) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
    if (svd.info() != Eigen::Success) throw NumericalError("BDCSVD did not converge");
    return svd.singularValues();
  }
  Eigen::MatrixXd work = a;
  Eigen::VectorXd s(std::min(a.rows(), a.cols()));
  check_info(call_dgesdd(b.dgesdd, 'N', work, s, nullptr, 1, nullptr, 1));
  return s;
}

LeftSvd left_svd(const Eigen::MatrixXd& a) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  LeftSvd out;
  if (m == 0) return out;
  if (n == 0) {
    out.u = Eigen::MatrixXd::Identity(m, m);
    return out;
  }
  const Backend& b = backend();
  if (!b.dgesdd) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU);
    if (svd.info() != Eigen::Success) throw NumericalError("BDCSVD did not converge");
    out.u = svd.matrixU();
    out.s = svd.singularValues();
    return out;
  }
  Eigen::MatrixXd work = a;
  out.s.resize(std::min(m, n));
  out.u.resize(m, m);
  if (m <= n) {
    // 'S' already yields all m left singular vectors.
    Eigen::MatrixXd vt(m, n);
    check_info(call_dgesdd(b.dgesdd, 'S', work, out.s, out.u.data(), static_cast<int>(m), vt.data(),
                           static_cast<int>(m)));
  } else {
    Eigen::MatrixXd vt(n, n);
    check_info(call_dgesdd(b.dgesdd, 'A', work, out.s, out.u.data(), static_cast<int>(m), vt.data(),
                           static_cast<int>(n)));
  }
  return out;
}

int rank_from_singular_values(const Eigen::VectorXd& s, double tol, Eigen::Index rows, Eigen::Index cols) {
  if (s.size() == 0 || s(0) <= 0.0) return 0;
  const double cut = tol * s(0) * static_cast<double>(std::max(rows, cols));
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++r;
  return r;
}

}  // namespace paretoelim::linalg
