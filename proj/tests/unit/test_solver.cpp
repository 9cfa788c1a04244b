#include <doctest.h>

#include "test_util.hpp"

using namespace tsfem;

TEST_CASE("identity and diagonal systems") {
  const CsrMatrix id = CsrMatrix::from_dense(Eigen::MatrixXd::Identity(5, 5));
  const std::vector<double> b{1, 2, 3, 4, 5};
  const auto x = solve(id, b);
  for (int i = 0; i < 5; ++i) CHECK(x[i] == doctest::Approx(b[i]));

  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d(0, 0) = 2;
  d(1, 1) = 1;
  const auto y = solve(CsrMatrix::from_dense(d), std::vector<double>{2, 1});
  CHECK(y[0] == doctest::Approx(1.0));
  CHECK(y[1] == doctest::Approx(1.0));
}

TEST_CASE("CG agrees with a dense Cholesky factorization") {
  Eigen::MatrixXd m(50, 50);
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 50; ++j) m(i, j) = test::uniform();
  const Eigen::MatrixXd a = m.transpose() * m + Eigen::MatrixXd::Identity(50, 50);
  Eigen::VectorXd b(50);
  for (int i = 0; i < 50; ++i) b[i] = test::uniform();
  const Eigen::VectorXd oracle = a.llt().solve(b);

  const CsrMatrix csr = CsrMatrix::from_dense(a);
  const std::vector<double> bv(b.data(), b.data() + 50);
  SolveStats stats;
  const auto x = solve(csr, bv, {}, &stats);
  for (int i = 0; i < 50; ++i) CHECK(std::abs(x[i] - oracle[i]) < 1e-8);
  CHECK(stats.relative_residual <= 1e-10);

  SolverConfig dense;
  dense.method = SolverMethod::DenseCholesky;
  const auto xd = solve(csr, bv, dense);
  for (int i = 0; i < 50; ++i) CHECK(std::abs(xd[i] - oracle[i]) < 1e-8);
}

TEST_CASE("residual contract") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(30, 30);
  for (int i = 0; i < 30; ++i) {
    a(i, i) = 2.0 + i;
    if (i > 0) a(i, i - 1) = a(i - 1, i) = -1.0;
  }
  std::vector<double> b(30);
  for (double& v : b) v = test::uniform();
  for (double tol : {1e-4, 1e-8, 1e-12}) {
    SolverConfig cfg;
    cfg.rel_tol = tol;
    const CsrMatrix csr = CsrMatrix::from_dense(a);
    const auto x = solve(csr, b, cfg);
    std::vector<double> ax(30);
    csr.multiply(x, ax);
    double r = 0.0, bn = 0.0;
    for (int i = 0; i < 30; ++i) {
      r += (ax[i] - b[i]) * (ax[i] - b[i]);
      bn += b[i] * b[i];
    }
    CHECK(std::sqrt(r) <= tol * std::sqrt(bn));
  }
}

TEST_CASE("error paths") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(3, 3);
  a(2, 2) = -1.0;
  CHECK_THROWS_AS(solve(CsrMatrix::from_dense(a), std::vector<double>{1, 1, 1}), NotPositiveDefinite);

  Eigen::MatrixXd indefinite(2, 2);
  indefinite << 1, 2, 2, 1;
  CHECK_THROWS_AS(solve(CsrMatrix::from_dense(indefinite), std::vector<double>{1, -1}), NotPositiveDefinite);

  Eigen::MatrixXd spd = Eigen::MatrixXd::Zero(20, 20);
  for (int i = 0; i < 20; ++i) spd(i, i) = 1.0 + i * i;
  for (int i = 1; i < 20; ++i) spd(i, i - 1) = spd(i - 1, i) = 0.5;
  SolverConfig few;
  few.max_iter = 2;
  std::vector<double> b(20, 1.0);
  try {
    solve(CsrMatrix::from_dense(spd), b, few);
    FAIL("expected NoConvergence");
  } catch (const NoConvergence& e) {
    CHECK(e.iterations() == 2);
    CHECK(e.residual() > 0.0);
  }
  SolverConfig bad;
  bad.rel_tol = 1e-2;
  CHECK_THROWS_AS(solve(CsrMatrix::from_dense(spd), b, bad), ConfigError);
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(solve(CsrMatrix::from_dense(spd), b, bad), ConfigError);
}

TEST_CASE("zero right-hand side") {
  const auto x = solve(CsrMatrix::from_dense(Eigen::MatrixXd::Identity(4, 4)), std::vector<double>(4, 0.0));
  for (double v : x) CHECK(v == 0.0);
}
