#include "paretoelim/macaulay.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>

#include "paretoelim/errors.hpp"

namespace paretoelim {

std::vector<double> balance_variables(const PFSystem& sys) {
  const std::size_t nvars = sys.space->size();
  std::vector<std::size_t> live;
  std::size_t nterms = 0;
  for (std::size_t i = 0; i < sys.equations.size(); ++i) {
    if (sys.equations[i].is_zero()) continue;
    live.push_back(i);
    nterms += sys.equations[i].size();
  }
  const Eigen::Index unknowns = static_cast<Eigen::Index>(live.size() + nvars);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nterms), unknowns);
  Eigen::VectorXd b(static_cast<Eigen::Index>(nterms));
  Eigen::Index row = 0;
  for (std::size_t k = 0; k < live.size(); ++k) {
    for (const auto& [mono, c] : sys.equations[live[k]].terms()) {
      a(row, static_cast<Eigen::Index>(k)) = 1.0;
      for (std::size_t j = 0; j < nvars; ++j)
        a(row, static_cast<Eigen::Index>(live.size() + j)) = mono[j];
      b(row) = -std::log10(std::abs(c));
      ++row;
    }
  }
  std::vector<double> factors(nvars, 1.0);
  if (nterms == 0) return factors;
  const Eigen::VectorXd u = a.completeOrthogonalDecomposition().solve(b);
  for (std::size_t j = 0; j < nvars; ++j)
    factors[j] = std::pow(10.0, u(static_cast<Eigen::Index>(live.size() + j)));
  return factors;
}

std::size_t expected_rows(const PFSystem& sys, int d) {
  std::size_t p = 0;
  for (int di : sys.degrees)
    if (di >= 0 && di <= d) p += monomial_count(sys.space->size(), d - di);
  return p;
}

Eigen::MatrixXd MacaulayMatrix::to_dense() const {
  if (!is_sparse) return dense;
  return Eigen::MatrixXd(sparse);
}

namespace {

double column_factor(const Monomial& m, const std::vector<double>& variable_scale) {
  double f = 1.0;
  for (std::size_t j = 0; j < m.size(); ++j)
    for (Exponent k = 0; k < m[j]; ++k) f *= variable_scale[j];
  return f;
}

struct RowEntries {
  std::vector<Eigen::Index> cols;
  std::vector<double> values;
  double scale = 1.0;
};

RowEntries assemble_row(const Polynomial& eq, const Monomial& shift, const std::vector<double>& column_scale,
                        bool row_scaling) {
  RowEntries row;
  row.cols.reserve(eq.size());
  row.values.reserve(eq.size());
  double norm2 = 0.0;
  for (const auto& [mono, c] : eq.terms()) {
    const auto col = static_cast<Eigen::Index>(monomial_index(shift * mono));
    const double v = c * column_scale[static_cast<std::size_t>(col)];
    row.cols.push_back(col);
    row.values.push_back(v);
    norm2 += v * v;
  }
  if (row_scaling && norm2 > 0.0) row.scale = 1.0 / std::sqrt(norm2);
  return row;
}

void append_rows(MacaulayMatrix& m, const PFSystem& sys, const std::vector<RowSource>& sources,
                 std::vector<RowEntries>& out) {
  for (const auto& src : sources) {
    out.push_back(assemble_row(sys.equations[src.equation], src.shift, m.column_scale, m.options.row_scaling));
    m.rows.push_back(src);
    m.row_scale.push_back(out.back().scale);
  }
}

void fill_storage(MacaulayMatrix& m, const std::vector<RowEntries>& entries, std::size_t first_row) {
  const auto p = static_cast<Eigen::Index>(m.rows.size());
  const auto q = static_cast<Eigen::Index>(m.columns.size());
  if (m.is_sparse) {
    std::vector<Eigen::Triplet<double>> trip;
    for (std::size_t r = 0; r < entries.size(); ++r)
      for (std::size_t k = 0; k < entries[r].cols.size(); ++k)
        trip.emplace_back(static_cast<Eigen::Index>(first_row + r), entries[r].cols[k],
                          entries[r].values[k] * entries[r].scale);
    Eigen::SparseMatrix<double, Eigen::RowMajor> added(p, q);
    added.setFromTriplets(trip.begin(), trip.end());
    if (m.sparse.rows() == 0) {
      m.sparse = std::move(added);
    } else {
      Eigen::SparseMatrix<double, Eigen::RowMajor> old = std::move(m.sparse);
      old.conservativeResize(p, q);
      m.sparse = old + added;
    }
    return;
  }
  for (std::size_t r = 0; r < entries.size(); ++r)
    for (std::size_t k = 0; k < entries[r].cols.size(); ++k)
      m.dense(static_cast<Eigen::Index>(first_row + r), entries[r].cols[k]) +=
          entries[r].values[k] * entries[r].scale;
}

std::vector<RowSource> shifts_for(const PFSystem& sys, int d, bool exact_degree) {
  std::vector<RowSource> sources;
  const std::size_t nvars = sys.space->size();
  for (std::size_t i = 0; i < sys.equations.size(); ++i) {
    const int di = sys.degrees[i];
    if (di < 0 || di > d) continue;
    auto shifts = exact_degree ? monomials_of_degree(nvars, d - di) : monomials_up_to(nvars, d - di);
    for (auto& u : shifts) sources.push_back({i, std::move(u)});
  }
  return sources;
}

}  // namespace

MacaulayMatrix build_macaulay(const PFSystem& sys, int d, const MacaulayOptions& options) {
  if (d < sys.max_degree())
    throw InvalidArgument("Macaulay degree " + std::to_string(d) + " is below the maximal equation degree " +
                          std::to_string(sys.max_degree()));
  MacaulayMatrix m;
  m.space = sys.space;
  m.degree = d;
  m.options = options;
  const std::size_t nvars = sys.space->size();
  m.columns = monomials_up_to(nvars, d);
  m.variable_scale = options.variable_scaling ? balance_variables(sys) : std::vector<double>(nvars, 1.0);
  m.column_scale.reserve(m.columns.size());
  for (const auto& c : m.columns) m.column_scale.push_back(column_factor(c, m.variable_scale));

  const auto sources = shifts_for(sys, d, false);
  std::vector<RowEntries> entries;
  entries.reserve(sources.size());
  append_rows(m, sys, sources, entries);

  const std::size_t p = m.rows.size();
  const std::size_t q = m.columns.size();
  m.is_sparse = p * q > options.sparse_threshold;
  if (!m.is_sparse) m.dense = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q));
  fill_storage(m, entries, 0);
  return m;
}

MacaulayMatrix extend_macaulay(const MacaulayMatrix& prev, const PFSystem& sys) {
  if (!same_space(prev.space, sys.space)) throw InvalidArgument("extend_macaulay: matrix and system spaces differ");
  MacaulayMatrix m;
  m.space = sys.space;
  m.degree = prev.degree + 1;
  m.options = prev.options;
  m.variable_scale = prev.variable_scale;
  m.rows = prev.rows;
  m.row_scale = prev.row_scale;
  m.columns = prev.columns;
  m.column_scale = prev.column_scale;
  for (auto& c : monomials_of_degree(sys.space->size(), m.degree)) {
    m.column_scale.push_back(column_factor(c, m.variable_scale));
    m.columns.push_back(std::move(c));
  }

  const auto sources = shifts_for(sys, m.degree, true);
  std::vector<RowEntries> entries;
  entries.reserve(sources.size());
  append_rows(m, sys, sources, entries);

  const auto p = static_cast<Eigen::Index>(m.rows.size());
  const auto q = static_cast<Eigen::Index>(m.columns.size());
  m.is_sparse = prev.is_sparse || static_cast<std::size_t>(p * q) > m.options.sparse_threshold;
  if (m.is_sparse) {
    if (prev.is_sparse) {
      m.sparse = prev.sparse;
    } else {
      m.sparse = prev.dense.sparseView(0.0, 0.0);
    }
  } else {
    m.dense = Eigen::MatrixXd::Zero(p, q);
    m.dense.topLeftCorner(prev.dense.rows(), prev.dense.cols()) = prev.dense;
  }
  fill_storage(m, entries, prev.rows.size());
  return m;
}

ColumnSplit split_columns(const MacaulayMatrix& m, const std::vector<std::size_t>& keep_vars) {
  ColumnSplit split;
  const std::size_t nvars = m.columns.empty() ? 0 : m.columns.front().size();
  std::vector<bool> keep(nvars, false);
  for (std::size_t v : keep_vars) {
    if (v >= nvars) throw InvalidArgument("split_columns: keep variable index out of range");
    keep[v] = true;
  }
  for (std::size_t c = 0; c < m.columns.size(); ++c) {
    bool pure = true;
    for (std::size_t j = 0; j < nvars && pure; ++j)
      if (!keep[j] && m.columns[c][j] > 0) pure = false;
    (pure ? split.keep_columns : split.elim_columns).push_back(static_cast<Eigen::Index>(c));
  }
  return split;
}

void dump_macaulay(const MacaulayMatrix& m, const PFSystem& sys, const std::string& mtx_path,
                   const std::string& sidecar_path) {
  std::ofstream mtx(mtx_path);
  if (!mtx) throw IoError("cannot write " + mtx_path);
  const Eigen::MatrixXd a = m.to_dense();
  std::size_t nnz = 0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != 0.0) ++nnz;
  mtx << "%%MatrixMarket matrix coordinate real general\n";
  mtx << a.rows() << ' ' << a.cols() << ' ' << nnz << '\n';
  mtx << std::setprecision(17);
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != 0.0) mtx << i + 1 << ' ' << j + 1 << ' ' << a(i, j) << '\n';

  auto monomial_json = [&](const Monomial& mono) {
    auto o = nlohmann::json::object();
    for (std::size_t j = 0; j < mono.size(); ++j)
      if (mono[j] > 0) o[sys.space->name(j)] = mono[j];
    return o;
  };
  nlohmann::json side;
  side["degree"] = m.degree;
  side["rows"] = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows.size(); ++r)
    side["rows"].push_back({{"equation", m.rows[r].equation},
                            {"shift", monomial_json(m.rows[r].shift)},
                            {"scale", m.row_scale[r]}});
  side["columns"] = nlohmann::json::array();
  for (const auto& c : m.columns) side["columns"].push_back(monomial_json(c));
  side["column_scale"] = m.column_scale;
  side["variable_scale"] = m.variable_scale;
  std::ofstream out(sidecar_path);
  if (!out) throw IoError("cannot write " + sidecar_path);
  out << side.dump(1) << '\n';
}

}  // namespace paretoelim
