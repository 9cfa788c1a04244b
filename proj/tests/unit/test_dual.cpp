#include <doctest.h>

#include <cmath>

#include "test_util.hpp"

using namespace tsfem;

namespace {

struct Vars {
  Dual2 x1, x2, x3;
};

Vars vars(const Vec3& x) { return {Dual2::variable(x[0], 0), Dual2::variable(x[1], 1), Dual2::variable(x[2], 2)}; }

template <class F>
void check_against_fd(F f, const Vec3& x) {
  const Vars v = vars(x);
  const Dual2 r = f(v.x1, v.x2, v.x3);
  auto val = [&](const Vec3& y) {
    const Vars w{Dual2(y[0]), Dual2(y[1]), Dual2(y[2])};
    return f(w.x1, w.x2, w.x3).v;
  };
  const double eps = 1e-4;
  for (int i = 0; i < 3; ++i) {
    const Vec3 ei = eps * Vec3::Unit(i);
    CHECK(r.g[i] == doctest::Approx((val(x + ei) - val(x - ei)) / (2 * eps)).epsilon(1e-7));
    for (int j = 0; j < 3; ++j) {
      const Vec3 ej = eps * Vec3::Unit(j);
      const double fd = (val(x + ei + ej) - val(x + ei - ej) - val(x - ei + ej) + val(x - ei - ej)) / (4 * eps * eps);
      CHECK(r.h(i, j) == doctest::Approx(fd).epsilon(1e-5).scale(1.0));
    }
  }
}

}  // namespace

TEST_CASE("x1^2 x2 has exact gradient and Hessian") {
  const Vec3 x(0.7, -1.3, 2.1);
  const Vars v = vars(x);
  const Dual2 p = v.x1 * v.x1 * v.x2;
  CHECK(p.v == doctest::Approx(0.49 * -1.3).epsilon(1e-15));
  CHECK(p.g[0] == 2 * 0.7 * -1.3);
  CHECK(p.g[1] == 0.7 * 0.7);
  CHECK(p.g[2] == 0.0);
  Mat3 expected = Mat3::Zero();
  expected(0, 0) = 2 * -1.3;
  expected(0, 1) = expected(1, 0) = 2 * 0.7;
  CHECK((p.h - expected).norm() == 0.0);
}

TEST_CASE("Hessians are symmetric") {
  const Vars v = vars(Vec3(0.3, 0.4, 1.2));
  const Dual2 r = sqrt(v.x1 * v.x2 + pow(v.x3, 3)) / (v.x1 + v.x2 * v.x3);
  CHECK((r.h - r.h.transpose()).norm() < 1e-14);
}

TEST_CASE("chain rules agree with finite differences") {
  const Vec3 x(0.4, 0.9, -0.6);
  check_against_fd([](Dual2 a, Dual2 b, Dual2 c) { return a * b - c * c * a; }, x);
  check_against_fd([](Dual2 a, Dual2 b, Dual2 c) { return inverse(a + b * b + c * c); }, x);
  check_against_fd([](Dual2 a, Dual2 b, Dual2 c) { return sqrt(a * a + b * b + c * c); }, x);
  check_against_fd([](Dual2 a, Dual2 b, Dual2) { return pow(a - b, 4) / (b + Dual2(2.0)); }, x);
  check_against_fd([](Dual2 a, Dual2 b, Dual2 c) { return pow(a, 0) + pow(b, 1) * c; }, x);
}

TEST_CASE("partial derivatives as first-order numbers") {
  const Vars v = vars(Vec3(1.5, -0.5, 0.25));
  const Dual2 r = v.x1 * v.x1 * v.x3 + v.x2;
  const Dual1 d1 = r.partial(0);
  CHECK(d1.v == doctest::Approx(2 * 1.5 * 0.25));
  CHECK(d1.g[0] == doctest::Approx(2 * 0.25));
  CHECK(d1.g[2] == doctest::Approx(2 * 1.5));
  const Dual1 f = r.first_order();
  CHECK(f.v == r.v);
  CHECK((f.g - r.g).norm() == 0.0);

  const Dual1 a(2.0, Vec3(1, 0, 0)), b(3.0, Vec3(0, 1, 0));
  const Dual1 prod = a * b - a;
  CHECK(prod.v == 4.0);
  CHECK(prod.g[0] == 2.0);
  CHECK(prod.g[1] == 2.0);
}
