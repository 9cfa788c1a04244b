#pragma once

#include <span>
#include <vector>

#include "tsfem/sparse.hpp"

namespace tsfem {

enum class SolverMethod {
  ConjugateGradient,  ///< Jacobi-preconditioned CG
  DenseCholesky,      ///< LLT of the densified matrix, dof_count <= 3000
};

struct SolverConfig {
  SolverMethod method = SolverMethod::ConjugateGradient;
  double rel_tol = 1e-10;
  long max_iter = 0;  ///< 0 selects 20 * dof_count
};

struct SolveStats {
  long iterations = 0;
  double relative_residual = 0.0;
};

/// Solves A x = b for symmetric positive definite A. On return
/// ||A x - b|| <= rel_tol ||b||; otherwise NoConvergence or
/// NotPositiveDefinite is thrown.
std::vector<double> solve(const CsrMatrix& a, std::span<const double> b, const SolverConfig& cfg = {},
                          SolveStats* stats = nullptr);

}  // namespace tsfem
