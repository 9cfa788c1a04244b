#include "tsfem/solver.hpp"

#include <cmath>
#include <string>

#include "tsfem/error.hpp"

namespace tsfem {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double residual_norm(const CsrMatrix& a, std::span<const double> x, std::span<const double> b) {
  std::vector<double> ax(a.rows);
  a.multiply(x, ax);
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows; ++i) s += (ax[i] - b[i]) * (ax[i] - b[i]);
  return std::sqrt(s);
}

std::vector<double> conjugate_gradient(const CsrMatrix& a, std::span<const double> b, const SolverConfig& cfg,
                                       SolveStats& stats) {
  const std::size_t n = a.rows;
  const long max_iter = cfg.max_iter > 0 ? cfg.max_iter : 20 * static_cast<long>(n);
  const double bnorm = std::sqrt(dot(b, b));
  std::vector<double> x(n, 0.0);
  if (bnorm == 0.0) return x;

  std::vector<double> inv_diag = a.diagonal();
  for (double& d : inv_diag) {
    if (!(d > 0.0)) throw NotPositiveDefinite("non-positive diagonal entry");
    d = 1.0 / d;
  }

  std::vector<double> r(b.begin(), b.end()), z(n), p(n), ap(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  double rz = dot(r, z);
  const double target = cfg.rel_tol * bnorm;

  for (long it = 1; it <= max_iter; ++it) {
    a.multiply(p, ap);
    const double pap = dot(p, ap);
    if (!(pap > 0.0)) throw NotPositiveDefinite("p^T A p <= 0 in CG iteration " + std::to_string(it));
    const double step = rz / pap;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += step * p[i];
      r[i] -= step * ap[i];
    }
    stats.iterations = it;
    if (std::sqrt(dot(r, r)) <= target) {
      // Guard against drift of the recursive residual.
      const double true_res = residual_norm(a, x, b);
      if (true_res <= target) {
        stats.relative_residual = true_res / bnorm;
        return x;
      }
      a.multiply(x, ap);
      for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - ap[i];
    }
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  const double res = residual_norm(a, x, b) / bnorm;
  throw NoConvergence("conjugate gradient", static_cast<int>(max_iter), res);
}

std::vector<double> dense_cholesky(const CsrMatrix& a, std::span<const double> b, const SolverConfig& cfg,
                                   SolveStats& stats) {
  if (a.rows > 3000) throw ConfigError("dense Cholesky limited to 3000 unknowns");
  const Eigen::MatrixXd dense = a.to_dense();
  const Eigen::LLT<Eigen::MatrixXd> llt(dense);
  if (llt.info() != Eigen::Success) throw NotPositiveDefinite("Cholesky factorization failed");
  const Eigen::Map<const Eigen::VectorXd> rhs(b.data(), static_cast<Eigen::Index>(b.size()));
  const Eigen::VectorXd sol = llt.solve(rhs);
  std::vector<double> x(sol.data(), sol.data() + sol.size());
  const double bnorm = rhs.norm();
  const double res = residual_norm(a, x, b);
  stats.iterations = 1;
  stats.relative_residual = bnorm > 0.0 ? res / bnorm : res;
  if (res > cfg.rel_tol * bnorm) throw NoConvergence("dense Cholesky residual above tolerance", 1, res / bnorm);
  return x;
}

}  // namespace

std::vector<double> solve(const CsrMatrix& a, std::span<const double> b, const SolverConfig& cfg, SolveStats* stats) {
  if (!(cfg.rel_tol > 0.0 && cfg.rel_tol <= 1e-4)) throw ConfigError("rel_tol must lie in (0, 1e-4]");
  if (b.size() != a.rows) throw RankMismatch("right-hand side size differs from matrix size");
  SolveStats local;
  auto x = cfg.method == SolverMethod::DenseCholesky ? dense_cholesky(a, b, cfg, local)
                                                      : conjugate_gradient(a, b, cfg, local);
  if (stats) *stats = local;
  return x;
}

}  // namespace tsfem
