#include <doctest.h>

#include <cmath>

#include "test_util.hpp"

using namespace tsfem;
using tsfem::test::standard_ellipse;
using tsfem::test::standard_ellipsoid;

namespace {

Tensor from_matrix(const Mat3& m) {
  Tensor t(3, 2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i * 3 + j] = m(i, j);
  return t;
}

std::vector<double> random_coeffs(std::size_t n) {
  std::vector<double> x(n);
  for (double& v : x) v = test::uniform();
  return x;
}

// A_h(u, v) evaluated pointwise from field values, independent of the local
// matrix assembly.
double bilinear(const TensorFESpace& space, const LevelSetSurface& s, const PenaltyConfig& cfg,
                std::span<const double> u, std::span<const double> v) {
  const CurvedMesh& cm = space.mesh();
  const QuadRule r = quad_rule(cm.surface_dim(), assembly_quad_degree(space.scalar().order()));
  const double pre = cfg.prefactor(cm.h());
  double sum = 0.0;
  for (std::size_t e = 0; e < cm.num_elements(); ++e) {
    for (std::size_t q = 0; q < r.size(); ++q) {
      const GeomEval g = eval_geometry(cm, e, r.points[q]);
      const FieldValue fu = evaluate(space, u, e, r.points[q]);
      const FieldValue fv = evaluate(space, v, e, r.points[q]);
      const TensorProjector ph(g.normal, space.dim());
      const TensorProjector pp(penalty_normal(cfg, s, cm, e, r.points[q]), space.dim());
      const double grad = inner(covariant_gradient_at_point(g, fu.value, fu.derivative),
                                covariant_gradient_at_point(g, fv.value, fv.derivative));
      const double tan = inner(ph.tangential(fu.value), ph.tangential(fv.value));
      const double pen = inner(pp.normal_part(fu.value), pp.normal_part(fv.value));
      sum += r.weights[q] * g.measure * (grad + tan + pre * pen);
    }
  }
  return sum;
}

SurfaceField zero_field(int dim, int rank) {
  return [=](const Vec3&) { return Tensor(dim, rank); };
}

}  // namespace

TEST_CASE("covariant gradient of the discrete normal vanishes") {
  const auto s = standard_ellipsoid();
  const CurvedMesh cm(generate(s, 1), s, 2);
  for (std::size_t e = 0; e < cm.num_elements(); e += 7) {
    const GeomEval g = eval_geometry(cm, e, RefPoint(0.25, 0.4));
    Tensor n(3, 1);
    for (int i = 0; i < 3; ++i) n[i] = g.normal[i];
    CHECK(max_abs(covariant_gradient_at_point(g, n, from_matrix(g.grad_normal))) < 1e-12);
  }
}

TEST_CASE("covariant gradient of a constant on a flat patch vanishes") {
  GeomEval g;
  g.x = Vec3(0, 0, 0);
  g.normal = Vec3(0, 0, 1);
  g.grad_normal.setZero();
  g.jacobian.setZero();
  g.jacobian(0, 0) = g.jacobian(1, 1) = 1.0;
  g.measure = 1.0;
  for (int rank = 1; rank <= 2; ++rank) {
    const Tensor c = test::random_tensor(3, rank);
    CHECK(max_abs(covariant_gradient_at_point(g, c, Tensor(3, rank + 1))) < 1e-15);
  }
}

TEST_CASE("covariant gradient of P c at the north pole of the sphere") {
  GeomEval g;
  g.x = Vec3(0, 0, 1);
  g.normal = Vec3(0, 0, 1);
  const Mat3 p = tangential_projection(g.normal, 3);
  g.grad_normal = p;
  const Vec3 c(0.3, -1.1, 2.0);
  Tensor value(3, 1);
  const Vec3 pc = p * c;
  for (int i = 0; i < 3; ++i) value[i] = pc[i];
  // d_j (P c)_i = -(d_j n_i)(n.c) - n_i (d_j n . c)
  Mat3 d = -c[2] * p - g.normal * (p * c).transpose();
  const Tensor cov = covariant_gradient_at_point(g, value, from_matrix(d));
  const Tensor expected = from_matrix(-c[2] * p);
  CHECK(max_abs(cov - expected) < 1e-14);
}

TEST_CASE("covariant gradient is tangential in every slot") {
  const auto s = standard_ellipsoid();
  const CurvedMesh cm(generate(s, 1), s, 3);
  for (int rank = 1; rank <= 2; ++rank) {
    for (std::size_t e = 0; e < cm.num_elements(); e += 11) {
      const GeomEval g = eval_geometry(cm, e, RefPoint(0.1, 0.6));
      const Tensor cov = covariant_gradient_at_point(g, test::random_tensor(3, rank), test::random_tensor(3, rank + 1));
      const Mat3 p = tangential_projection(g.normal, 3);
      CHECK(max_abs(apply_to_slots(cov, p, 0, rank + 1) - cov) < 1e-10);
    }
  }
  CHECK_THROWS_AS(covariant_gradient_at_point(eval_geometry(cm, 0, RefPoint(0.2, 0.2)), Tensor(3, 1), Tensor(3, 1)),
                  RankMismatch);
}

TEST_CASE("assembled matrix is symmetric positive definite") {
  struct Case {
    LevelSetSurface s;
    int rank;
    int level;
    int k;
  };
  const Case cases[] = {{standard_ellipse(), 1, 2, 2}, {standard_ellipse(), 2, 1, 3}, {standard_ellipsoid(), 1, 0, 2},
                        {LevelSetSurface::sphere(), 2, 0, 1}};
  for (const auto& c : cases) {
    const CurvedMesh cm(generate(c.s, c.level), c.s, c.k);
    const ScalarLagrangeSpace sp(cm, c.k);
    const TensorFESpace space(sp, c.rank);
    PenaltyConfig cfg;
    cfg.kp = c.k;
    const SparseSystem sys = assemble(space, c.s, cfg, zero_field(c.s.ambient_dim(), c.rank));
    CHECK(sys.matrix.asymmetry() <= 1e-12 * sys.matrix.max_abs());
    for (int t = 0; t < 10; ++t) {
      const auto x = random_coeffs(space.total_dofs());
      CHECK(matrix_form(sys.matrix, x, x) > 0.0);
    }
    const Eigen::MatrixXd dense = sys.matrix.to_dense();
    CHECK(dense.llt().info() == Eigen::Success);
  }
}

TEST_CASE("assembled form matches pointwise evaluation of A_h") {
  const auto s = standard_ellipsoid();
  const CurvedMesh cm(generate(s, 1), s, 2);
  const ScalarLagrangeSpace sp(cm, 2);
  for (int rank = 1; rank <= 2; ++rank) {
    const TensorFESpace space(sp, rank);
    for (const auto mode : {PenaltyNormalMode::Discrete, PenaltyNormalMode::Interpolated, PenaltyNormalMode::Exact}) {
      PenaltyConfig cfg;
      cfg.alpha = 0.5;
      cfg.beta = 10.0;
      cfg.mode = mode;
      cfg.kp = mode == PenaltyNormalMode::Interpolated ? 3 : 2;
      const SparseSystem sys = assemble(space, s, cfg, zero_field(3, rank));
      const auto u = random_coeffs(space.total_dofs());
      const auto v = random_coeffs(space.total_dofs());
      const double ref = bilinear(space, s, cfg, u, v);
      CHECK(matrix_form(sys.matrix, u, v) == doctest::Approx(ref).epsilon(1e-11));
    }
  }
}

TEST_CASE("load vector is (f o pi, P_h v)") {
  const auto s = LevelSetSurface::sphere();
  const CurvedMesh cm(generate(s, 1), s, 2);
  const ScalarLagrangeSpace sp(cm, 2);
  const TensorFESpace space(sp, 1);
  auto f = [](const Vec3& y) {
    Tensor t(3, 1);
    t[0] = y[1] * y[2];
    t[1] = std::cos(y[0]);
    t[2] = y[0] - y[1];
    return t;
  };
  const SparseSystem sys = assemble(space, s, PenaltyConfig{}, f);
  const auto v = random_coeffs(space.total_dofs());
  const QuadRule r = quad_rule(2, assembly_quad_degree(2));
  double ref = 0.0;
  for (std::size_t e = 0; e < cm.num_elements(); ++e) {
    for (std::size_t q = 0; q < r.size(); ++q) {
      const GeomEval g = eval_geometry(cm, e, r.points[q]);
      const Vec3 y = g.x / g.x.norm();
      const TensorProjector ph(g.normal, 3);
      ref += r.weights[q] * g.measure * inner(f(y), ph.tangential(evaluate(space, v, e, r.points[q]).value));
    }
  }
  double got = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) got += sys.rhs[i] * v[i];
  CHECK(got == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("penalty prefactor scaling") {
  for (double alpha : {0.0, 0.5, 1.0}) {
    PenaltyConfig cfg;
    cfg.alpha = alpha;
    cfg.beta = 3.0;
    CHECK(cfg.prefactor(0.05) / cfg.prefactor(0.1) == doctest::Approx(std::pow(2.0, 2 * alpha)));
  }
  PenaltyConfig bad;
  bad.alpha = 1.5;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad.alpha = 0.5;
  bad.beta = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  // The penalty matrix is affine in beta.
  const auto s = standard_ellipse();
  const CurvedMesh cm(generate(s, 2), s, 2);
  const ScalarLagrangeSpace sp(cm, 2);
  const TensorFESpace space(sp, 1);
  auto build = [&](double beta) {
    PenaltyConfig c;
    c.beta = beta;
    return assemble(space, s, c, zero_field(2, 1)).matrix;
  };
  const CsrMatrix a1 = build(1.0), a2 = build(2.0), a3 = build(3.0);
  const auto x = random_coeffs(space.total_dofs());
  const double f1 = matrix_form(a1, x, x), f2 = matrix_form(a2, x, x), f3 = matrix_form(a3, x, x);
  CHECK(f3 - f1 == doctest::Approx(2.0 * (f2 - f1)).epsilon(1e-10));
}

TEST_CASE("penalty energy of a normal field grows with beta") {
  const auto s = LevelSetSurface::sphere();
  const CurvedMesh cm(generate(s, 1), s, 1);
  const ScalarLagrangeSpace sp(cm, 1);
  const TensorFESpace space(sp, 1);
  // Nodal values of the exact normal; P_h u and its gradient do not vanish
  // on the coarse flat mesh, but the penalty part grows with beta.
  const auto u = interpolate(space, [](const Vec3& x) {
    Tensor t(3, 1);
    const Vec3 n = x / x.norm();
    for (int i = 0; i < 3; ++i) t[i] = n[i];
    return t;
  });
  double last = 0.0;
  for (double beta : {1.0, 10.0, 100.0}) {
    PenaltyConfig cfg;
    cfg.beta = beta;
    const double form = matrix_form(assemble(space, s, cfg, zero_field(3, 1)).matrix, u, u);
    CHECK(form > last);
    last = form;
  }
}

TEST_CASE("interpolated penalty normal converges with order k_p") {
  const auto s = standard_ellipsoid();
  for (int kp = 2; kp <= 3; ++kp) {
    std::vector<double> h, err;
    for (int level = 1; level <= 4; ++level) {
      const CurvedMesh cm(generate(s, level), s, 1);
      PenaltyConfig cfg;
      cfg.mode = PenaltyNormalMode::Interpolated;
      cfg.kp = kp;
      const std::vector<RefPoint> pts{RefPoint(0.2, 0.2), RefPoint(0.6, 0.2), RefPoint(0.2, 0.6), RefPoint(1.0 / 3, 1.0 / 3)};
      const PenaltyNormalTable table(cfg, cm, pts);
      double worst = 0.0;
      for (std::size_t e = 0; e < cm.num_elements(); ++e) {
        for (std::size_t q = 0; q < pts.size(); ++q) {
          const GeomEval g = eval_geometry(cm, e, pts[q]);
          const Vec3 exact = exact_normal(s, closest_point(s, g.x).point);
          const Vec3 nt = table.at(e, q, g);
          worst = std::max(worst, (nt - exact).norm());
          if (e % 17 == 0) CHECK((penalty_normal(cfg, s, cm, e, pts[q]) - nt).norm() < 1e-14);
        }
      }
      h.push_back(cm.h());
      err.push_back(worst);
    }
    CAPTURE(kp);
    CHECK(test::loglog_slope(h, err) == doctest::Approx(kp).epsilon(0.3 / kp));
  }
}
