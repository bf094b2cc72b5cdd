#include "paretoelim/eliminate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "paretoelim/linalg.hpp"
#include "paretoelim/newton.hpp"

namespace paretoelim {

namespace {

constexpr double kCoefficientZero = 1e-10;

Eigen::MatrixXd densify(const MacaulayMatrix& m, std::size_t max_entries) {
  if (!m.is_sparse) return m.dense;
  const std::size_t entries = m.num_rows() * m.num_cols();
  if (entries > max_entries)
    throw SizeViolation("Macaulay matrix " + std::to_string(m.num_rows()) + "x" + std::to_string(m.num_cols()) +
                        " is too large for the dense rank tests");
  return m.to_dense();
}

double max_or_zero(const Eigen::VectorXd& s) { return s.size() ? s(0) : 0.0; }

SpacePtr keep_space_of(const MacaulayMatrix& m, std::vector<std::size_t>& keep_vars) {
  if (!m.space) throw InvalidArgument("Macaulay matrix carries no variable space");
  keep_vars = m.space->indices_with_role(Role::objective);
  std::vector<std::string> names;
  for (std::size_t v : keep_vars) names.push_back(m.space->name(v));
  return VariableSpace::create(std::move(names), Role::objective);
}

Polynomial normalized(Polynomial p) {
  double best = 0.0;
  for (const auto& [mono, c] : p.terms())
    if (std::abs(c) > std::abs(best)) best = c;  // first maximal term in graded order wins ties
  if (best == 0.0) return p;
  Polynomial::TermMap out;
  for (const auto& [mono, c] : p.terms()) {
    const double v = c / best;
    if (std::abs(v) >= kCoefficientZero) out.emplace(mono, v);
  }
  return Polynomial(p.space(), std::move(out));
}

}  // namespace

nlohmann::json to_json(const DegreeRecord& r) {
  nlohmann::json j = {{"degree", r.degree},   {"rows", r.rows},
                      {"cols", r.cols},       {"rank_M", r.rank_M},
                      {"rank_N", r.rank_N},   {"intersection_dim", r.intersection_dim}};
  if (r.eliminant_rank >= 0) j["eliminant_rank"] = r.eliminant_rank;
  return j;
}

int numerical_rank(const Eigen::MatrixXd& a, double tol) {
  if (a.size() == 0) throw InvalidArgument("numerical_rank of an empty matrix");
  return linalg::rank_from_singular_values(linalg::singular_values(a), tol, a.rows(), a.cols());
}

static IntersectionTest test_dense(const Eigen::MatrixXd& a, const ColumnSplit& split, double tol,
                                   bool want_left_null) {
  IntersectionTest t;
  const Eigen::VectorXd sm = linalg::singular_values(a);
  t.sigma_max_M = max_or_zero(sm);
  t.rank_M = linalg::rank_from_singular_values(sm, tol, a.rows(), a.cols());

  const Eigen::Index p = a.rows();
  if (split.elim_columns.empty()) {
    t.rank_N = 0;
    if (want_left_null) t.left_null = Eigen::MatrixXd::Identity(p, p);
  } else {
    const Eigen::MatrixXd n = a(Eigen::all, split.elim_columns);
    if (want_left_null) {
      linalg::LeftSvd svd = linalg::left_svd(n);
      t.sigma_max_N = max_or_zero(svd.s);
      t.rank_N = linalg::rank_from_singular_values(svd.s, tol, n.rows(), n.cols());
      t.left_null = svd.u.rightCols(p - t.rank_N);
    } else {
      const Eigen::VectorXd sn = linalg::singular_values(n);
      t.sigma_max_N = max_or_zero(sn);
      t.rank_N = linalg::rank_from_singular_values(sn, tol, n.rows(), n.cols());
    }
  }
  t.dimension = t.rank_M - t.rank_N;
  return t;
}

IntersectionTest test_intersection(const MacaulayMatrix& m, const ColumnSplit& split, double tol,
                                   bool want_left_null) {
  return test_dense(densify(m, std::numeric_limits<std::size_t>::max()), split, tol, want_left_null);
}

int intersection_dimension(const MacaulayMatrix& m, const ColumnSplit& split, double tol) {
  return test_intersection(m, split, tol, false).dimension;
}

static EliminantSystem extract_dense(const Eigen::MatrixXd& a, const MacaulayMatrix& m, const ColumnSplit& split,
                                     const IntersectionTest& test, double tol) {
  if (test.left_null.rows() != a.rows())
    throw InvalidArgument("extract_eliminant: intersection test was run without the left null space");
  std::vector<std::size_t> keep_vars;
  EliminantSystem e;
  e.space = keep_space_of(m, keep_vars);
  e.degree_used = m.degree;
  e.rows = m.num_rows();
  e.cols = m.num_cols();
  e.rank_M = test.rank_M;
  e.rank_N = test.rank_N;
  e.intersection_dim = test.dimension;
  e.tolerance_used = tol;

  const Eigen::MatrixXd k = test.left_null.transpose() * a(Eigen::all, split.keep_columns);
  if (k.size() == 0) throw EmptyEliminant("no rows survive in the left null space of N");

  Eigen::BDCSVD<Eigen::MatrixXd> svd(k, Eigen::ComputeThinV);
  const double threshold =
      tol * std::max(test.sigma_max_M, 1e-300) * static_cast<double>(std::max(a.rows(), a.cols()));
  int r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > threshold) ++r;
  if (r == 0) throw EmptyEliminant("all eliminant candidates fall below the rank tolerance");

  // Pivoted reduced form: independent of the basis chosen for the row space.
  const Eigen::MatrixXd basis = svd.matrixV().leftCols(r).transpose();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(basis);
  std::vector<Eigen::Index> pivots;
  for (int i = 0; i < r; ++i) pivots.push_back(qr.colsPermutation().indices()(i));
  std::sort(pivots.begin(), pivots.end());
  const Eigen::MatrixXd reduced = basis(Eigen::all, pivots).partialPivLu().solve(basis);

  for (int i = 0; i < r; ++i) {
    Polynomial::TermMap terms;
    for (std::size_t c = 0; c < split.keep_columns.size(); ++c) {
      const auto col = static_cast<std::size_t>(split.keep_columns[c]);
      const double v = reduced(i, static_cast<Eigen::Index>(c)) / m.column_scale[col];
      if (v == 0.0) continue;
      std::vector<Exponent> exps;
      for (std::size_t var : keep_vars) exps.push_back(m.columns[col][var]);
      terms.emplace(Monomial(std::move(exps)), v);
    }
    e.polynomials.push_back(normalized(Polynomial(e.space, std::move(terms))));
  }
  return e;
}

EliminantSystem extract_eliminant(const MacaulayMatrix& m, const ColumnSplit& split, const IntersectionTest& test,
                                  double tol) {
  return extract_dense(densify(m, std::numeric_limits<std::size_t>::max()), m, split, test, tol);
}

EliminantSystem extract_eliminant(const MacaulayMatrix& m, const ColumnSplit& split, double tol) {
  const Eigen::MatrixXd a = densify(m, std::numeric_limits<std::size_t>::max());
  const IntersectionTest test = test_dense(a, split, tol, true);
  if (test.dimension < 1) throw EmptyEliminant("rank condition not satisfied at degree " + std::to_string(m.degree));
  return extract_dense(a, m, split, test, tol);
}

FrontProbe probe_front(const PFSystem& sys, int starts, std::uint64_t seed) {
  FrontProbe best;
  std::vector<Polynomial> eqs;
  for (const auto& e : sys.equations)
    if (!e.is_zero()) eqs.push_back(e);
  if (eqs.empty()) return best;
  const PolySystem poly(eqs);
  const auto roots = newton_multistart(poly, starts, seed, 1.0);
  int best_rank_j = -1;
  int best_rho = -1;
  for (const auto& root : roots) {
    const Eigen::MatrixXd j = poly.jacobian(root.z);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(j, Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    int rank_j = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > 1e-8 * std::max(1.0, sv(0))) ++rank_j;
    const Eigen::Index nullity = j.cols() - rank_j;
    int rho = 0;
    if (nullity > 0) {
      const Eigen::MatrixXd tangent = svd.matrixV().rightCols(nullity);
      Eigen::MatrixXd s_rows(static_cast<Eigen::Index>(sys.keep_vars.size()), nullity);
      for (std::size_t i = 0; i < sys.keep_vars.size(); ++i)
        s_rows.row(static_cast<Eigen::Index>(i)) = tangent.row(static_cast<Eigen::Index>(sys.keep_vars[i]));
      Eigen::JacobiSVD<Eigen::MatrixXd> ssvd(s_rows);
      for (Eigen::Index i = 0; i < ssvd.singularValues().size(); ++i)
        if (ssvd.singularValues()(i) > 1e-6) ++rho;
    }
    if (rank_j > best_rank_j || (rank_j == best_rank_j && rho > best_rho)) {
      best_rank_j = rank_j;
      best_rho = rho;
      best.ok = true;
      best.point = root.z;
      best.codimension = static_cast<int>(sys.keep_vars.size()) - rho;
    }
  }
  if (best.ok) {
    best.s.resize(static_cast<Eigen::Index>(sys.keep_vars.size()));
    for (std::size_t i = 0; i < sys.keep_vars.size(); ++i)
      best.s(static_cast<Eigen::Index>(i)) = best.point(static_cast<Eigen::Index>(sys.keep_vars[i]));
    best.codimension = std::max(best.codimension, 1);
  }
  return best;
}

int eliminant_jacobian_rank(const std::vector<Polynomial>& polys, const Eigen::VectorXd& s) {
  if (polys.empty()) return 0;
  const auto n = static_cast<Eigen::Index>(s.size());
  Eigen::MatrixXd j(static_cast<Eigen::Index>(polys.size()), n);
  std::span<const double> pt(s.data(), static_cast<std::size_t>(n));
  for (std::size_t r = 0; r < polys.size(); ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      j(static_cast<Eigen::Index>(r), c) = differentiate(polys[r], static_cast<std::size_t>(c)).evaluate(pt);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(j);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 1e-300) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-6 * sv(0)) ++rank;
  return rank;
}

EliminantSystem eliminate(const PFSystem& sys, const EliminateOptions& options) {
  const int d0 = sys.max_degree();
  if (d0 < 0) throw InvalidArgument("PF system has no nonzero equations");
  if (options.degree_max < d0)
    throw InvalidArgument("degree cap " + std::to_string(options.degree_max) +
                          " is below the maximal equation degree " + std::to_string(d0));

  FrontProbe probe;
  if (options.completeness_check) probe = probe_front(sys, options.probe_starts, options.seed);

  std::vector<DegreeRecord> profile;
  MacaulayMatrix m = build_macaulay(sys, d0, options.macaulay);
  for (int d = d0;; ++d) {
    const auto t0 = std::chrono::steady_clock::now();
    const ColumnSplit split = split_columns(m, sys.keep_vars);
    Eigen::MatrixXd a;
    try {
      a = densify(m, options.max_dense_entries);
    } catch (const SizeViolation& err) {
      throw MacaulayTooLarge(std::string(err.what()) + " at degree " + std::to_string(d), std::move(profile));
    }
    const IntersectionTest test = test_dense(a, split, options.rank_tol, true);
    DegreeRecord rec;
    rec.degree = d;
    rec.rows = m.num_rows();
    rec.cols = m.num_cols();
    rec.rank_M = test.rank_M;
    rec.rank_N = test.rank_N;
    rec.intersection_dim = test.dimension;
    if (test.dimension >= 1) {
      EliminantSystem e = extract_dense(a, m, split, test, options.rank_tol);
      bool complete = true;
      if (probe.ok) {
        rec.eliminant_rank = eliminant_jacobian_rank(e.polynomials, probe.s);
        complete = rec.eliminant_rank >= probe.codimension;
        e.target_codimension = probe.codimension;
      }
      rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      profile.push_back(rec);
      if (complete) {
        e.profile = std::move(profile);
        return e;
      }
    } else {
      rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      profile.push_back(rec);
    }
    if (d + 1 > options.degree_max)
      throw DegreeCapExceeded("no complete eliminant up to degree cap " + std::to_string(options.degree_max),
                              std::move(profile));
    m = extend_macaulay(m, sys);
  }
}

int find_eliminant_degree(const PFSystem& sys, int degree_max, double tol) {
  EliminateOptions options;
  options.degree_max = degree_max;
  options.rank_tol = tol;
  return eliminate(sys, options).degree_used;
}

nlohmann::json to_json(const EliminantSystem& e) {
  nlohmann::json j;
  j["variables"] = e.space ? e.space->names() : std::vector<std::string>{};
  j["degree"] = e.degree_used;
  j["rows"] = e.rows;
  j["cols"] = e.cols;
  j["rank_M"] = e.rank_M;
  j["rank_N"] = e.rank_N;
  j["intersection_dim"] = e.intersection_dim;
  j["tolerance"] = e.tolerance_used;
  if (e.target_codimension >= 0) j["target_codimension"] = e.target_codimension;
  j["polynomials"] = nlohmann::json::array();
  for (const auto& p : e.polynomials) j["polynomials"].push_back(to_json(p));
  j["profile"] = nlohmann::json::array();
  for (const auto& r : e.profile) j["profile"].push_back(to_json(r));
  return j;
}

EliminantSystem eliminant_from_json(const nlohmann::json& j) {
  try {
    EliminantSystem e;
    e.space = VariableSpace::create(j.at("variables").get<std::vector<std::string>>(), Role::objective);
    e.degree_used = j.at("degree").get<int>();
    e.rows = j.value("rows", std::size_t{0});
    e.cols = j.value("cols", std::size_t{0});
    e.rank_M = j.value("rank_M", 0);
    e.rank_N = j.value("rank_N", 0);
    e.intersection_dim = j.value("intersection_dim", 0);
    e.tolerance_used = j.value("tolerance", kDefaultRankTolerance);
    e.target_codimension = j.value("target_codimension", -1);
    for (const auto& p : j.at("polynomials")) e.polynomials.push_back(polynomial_from_json(p, e.space));
    if (e.polynomials.empty()) throw SchemaError("eliminant file lists no polynomials");
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw SchemaError(std::string("malformed eliminant JSON: ") + ex.what());
  }
}

}  // namespace paretoelim
