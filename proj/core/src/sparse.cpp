#include "tsfem/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>

#include "tsfem/error.hpp"

namespace tsfem {

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t r = 0; r < rows; ++r) {
    double s = 0.0;
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) s += values[k] * x[static_cast<std::size_t>(cols[k])];
    y[r] = s;
  }
}

std::vector<double> CsrMatrix::diagonal() const {
  std::vector<double> d(rows, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto first = cols.begin() + static_cast<std::ptrdiff_t>(row_ptr[r]);
    const auto last = cols.begin() + static_cast<std::ptrdiff_t>(row_ptr[r + 1]);
    const auto it = std::lower_bound(first, last, static_cast<int>(r));
    if (it != last && *it == static_cast<int>(r)) d[r] = values[static_cast<std::size_t>(it - cols.begin())];
  }
  return d;
}

double CsrMatrix::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double CsrMatrix::asymmetry() const {
  double m = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
      const auto c = static_cast<std::size_t>(cols[k]);
      const auto first = cols.begin() + static_cast<std::ptrdiff_t>(row_ptr[c]);
      const auto last = cols.begin() + static_cast<std::ptrdiff_t>(row_ptr[c + 1]);
      const auto it = std::lower_bound(first, last, static_cast<int>(r));
      const double transposed =
          (it != last && *it == static_cast<int>(r)) ? values[static_cast<std::size_t>(it - cols.begin())] : 0.0;
      m = std::max(m, std::abs(values[k] - transposed));
    }
  }
  return m;
}

Eigen::MatrixXd CsrMatrix::to_dense() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(rows));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) d(static_cast<Eigen::Index>(r), cols[k]) += values[k];
  }
  return d;
}

CsrMatrix CsrMatrix::from_dense(const Eigen::MatrixXd& dense, double drop) {
  CsrMatrix a;
  a.rows = static_cast<std::size_t>(dense.rows());
  for (Eigen::Index r = 0; r < dense.rows(); ++r) {
    for (Eigen::Index c = 0; c < dense.cols(); ++c) {
      if (std::abs(dense(r, c)) > drop || r == c) {
        a.cols.push_back(static_cast<int>(c));
        a.values.push_back(dense(r, c));
      }
    }
    a.row_ptr.push_back(a.values.size());
  }
  return a;
}

void write_matrix_market(const CsrMatrix& a, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.rows << ' ' << a.rows << ' ' << a.nnz() << '\n';
  out << std::setprecision(17);
  for (std::size_t r = 0; r < a.rows; ++r) {
    for (std::size_t k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) {
      out << r + 1 << ' ' << a.cols[k] + 1 << ' ' << a.values[k] << '\n';
    }
  }
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace tsfem
