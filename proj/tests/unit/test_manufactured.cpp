#include <doctest.h>

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "test_util.hpp"
#include "weak_form.hpp"

using namespace tsfem;
using tsfem::test::standard_ellipse;
using tsfem::test::standard_ellipsoid;

namespace {

std::vector<ManufacturedCase> all_cases() {
  return {ManufacturedCase(standard_ellipse(), 1), ManufacturedCase(standard_ellipse(), 2),
          ManufacturedCase(standard_ellipsoid(), 1), ManufacturedCase(LevelSetSurface::sphere(), 2)};
}

double tangential_defect(const Tensor& t, const Vec3& n) {
  return max_abs(apply_to_slots(t, tangential_projection(n, t.dim()), 0, t.rank()) - t);
}

}  // namespace

TEST_CASE("closed-form examples") {
  const ManufacturedCase sphere2(LevelSetSurface::sphere(), 2);
  const Tensor u = sphere2.exact_solution(Vec3(0, 0, 1));
  const double expected[9] = {-1, 3, 0, 1, 2, 0, 0, 0, 0};
  for (int i = 0; i < 9; ++i) CHECK(u[i] == doctest::Approx(expected[i]).scale(1.0).epsilon(1e-15));

  const ManufacturedCase ellipsoid1(standard_ellipsoid(), 1);
  CHECK(max_abs(ellipsoid1.exact_solution(Vec3(0.75, 0, 0))) < 1e-15);

  const ManufacturedCase sphere1(LevelSetSurface::sphere(), 1);
  const Tensor c = sphere1.exact_solution(Vec3(1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0));
  const double r = 1.0 / (2.0 * std::sqrt(2.0));
  CHECK(c[0] == doctest::Approx(r));
  CHECK(c[1] == doctest::Approx(-r));
  CHECK(std::abs(c[2]) < 1e-15);
}

TEST_CASE("curve field is the projected polynomial") {
  const auto s = standard_ellipse();
  const ManufacturedCase mc(s, 1);
  for (int k = 0; k < 20; ++k) {
    const Vec3 x = test::random_surface_point(s);
    const Vec3 n = exact_normal(s, x);
    const Mat3 p = tangential_projection(n, 2);
    const Vec3 q(x[0] * x[0] * x[0] * x[1], (x[0] + 2) * x[1] * x[1], 0);
    const Vec3 expected = p * q;
    const Tensor u = mc.exact_solution(x);
    CHECK(std::abs(u[0] - expected[0]) < 1e-14);
    CHECK(std::abs(u[1] - expected[1]) < 1e-14);
  }
}

TEST_CASE("solutions and right-hand sides are tangential") {
  for (const auto& mc : all_cases()) {
    CAPTURE(mc.name());
    for (int k = 0; k < 100; ++k) {
      const Vec3 x = test::random_surface_point(mc.surface());
      const Vec3 n = exact_normal(mc.surface(), x);
      const ExactJet j = mc.jet(x);
      CHECK(tangential_defect(j.value, n) < 1e-11);
      CHECK(tangential_defect(mc.rhs(x), n) < 1e-9);
      CHECK(tangential_defect(j.covariant_gradient, n) < 1e-10);
    }
  }
}

TEST_CASE("surface derivative matches finite differences along the surface") {
  const auto s = standard_ellipsoid();
  const ManufacturedCase mc(s, 1);
  for (int k = 0; k < 10; ++k) {
    const Vec3 x = test::random_surface_point(s);
    const ExactJet j = mc.jet(x);
    const Vec3 t = tangential_projection(exact_normal(s, x), 3) * test::random_vec(3);
    const double eps = 1e-5;
    const Tensor fd = (1.0 / (2 * eps)) * (mc.exact_solution(closest_point(s, x + eps * t).point) -
                                           mc.exact_solution(closest_point(s, x - eps * t).point));
    CHECK(max_abs(contract_slot(j.surface_derivative, t, 1) - fd) < 1e-8);
  }
}

TEST_CASE("points off the surface are rejected") {
  const ManufacturedCase mc(LevelSetSurface::sphere(), 2);
  CHECK_THROWS_AS(mc.jet(Vec3(0, 0, 1.01)), NotOnSurface);
  CHECK_THROWS_AS(mc.rhs(Vec3(0.5, 0, 0)), NotOnSurface);
  CHECK_NOTHROW(mc.rhs(Vec3(0, 0, 1.0 + 1e-10)));
  CHECK_THROWS_AS(ManufacturedCase(standard_ellipse(), 3), ConfigError);
}

TEST_CASE("right-hand sides agree with the symbolic fixture") {
  std::ifstream in(std::string(TSFEM_FIXTURE_DIR) + "/rhs_oracle.csv");
  REQUIRE(in.good());
  const std::map<std::string, ManufacturedCase> cases{
      {"ellipse1", ManufacturedCase(standard_ellipse(), 1)},
      {"ellipse2", ManufacturedCase(standard_ellipse(), 2)},
      {"ellipsoid1", ManufacturedCase(standard_ellipsoid(), 1)},
      {"sphere2", ManufacturedCase(LevelSetSurface::sphere(), 2)}};
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string name, field;
    std::getline(ss, name, ',');
    Vec3 x;
    for (int i = 0; i < 3; ++i) {
      std::getline(ss, field, ',');
      x[i] = std::stod(field);
    }
    std::getline(ss, field, ',');
    const int comp = std::stoi(field);
    std::getline(ss, field, ',');
    const double value = std::stod(field);
    CAPTURE(line);
    const Tensor f = cases.at(name).rhs(x);
    CHECK(f[comp] == doctest::Approx(value).epsilon(1e-10).scale(1.0));
    ++rows;
  }
  CHECK(rows == 27);
}

TEST_CASE("weak form holds against projected polynomial test fields") {
  const auto s = standard_ellipse();
  for (int rank = 1; rank <= 2; ++rank) {
    const ManufacturedCase mc(s, rank);
    const CurvedMesh cm(generate(s, 3), s, 4);
    std::vector<DualFieldFn> tests;
    for (int t = 0; t < 5; ++t) tests.push_back(test::random_tangential_field(2, rank, test::rng()));
    for (const auto& r : test::weak_form_residuals(mc, cm, tests, 14)) CHECK(r.residual < 1e-6 * r.scale);
  }
}
