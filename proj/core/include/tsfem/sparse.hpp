#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace tsfem {

/// Compressed sparse row matrix with a fixed sparsity pattern.
struct CsrMatrix {
  std::size_t rows = 0;
  std::vector<std::size_t> row_ptr{0};
  std::vector<int> cols;
  std::vector<double> values;

  std::size_t nnz() const noexcept { return values.size(); }

  /// y = A x
  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> diagonal() const;
  double max_abs() const;
  /// max |A_ij - A_ji|, 0 for a symmetric pattern and values.
  double asymmetry() const;
  Eigen::MatrixXd to_dense() const;

  static CsrMatrix from_dense(const Eigen::MatrixXd& dense, double drop = 0.0);
};

/// MatrixMarket coordinate (general, real) output.
void write_matrix_market(const CsrMatrix& a, const std::filesystem::path& path);

}  // namespace tsfem
