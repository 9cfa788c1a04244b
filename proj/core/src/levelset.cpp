#include "tsfem/levelset.hpp"

#include <algorithm>
#include <cmath>

#include "tsfem/error.hpp"

namespace tsfem {

LevelSetSurface::LevelSetSurface(SurfaceKind kind, int ambient_dim, const Vec3& axes)
    : kind_(kind), ambient_dim_(ambient_dim), axes_(axes) {
  for (int i = 0; i < ambient_dim_; ++i) {
    if (!(axes_[i] > 0.0)) throw ConfigError("semiaxes must be strictly positive");
  }
}

LevelSetSurface LevelSetSurface::ellipse(double a, double b) {
  return {SurfaceKind::Ellipse, 2, Vec3(a, b, 1.0)};
}

LevelSetSurface LevelSetSurface::ellipsoid(double a, double b, double c) {
  return {SurfaceKind::Ellipsoid, 3, Vec3(a, b, c)};
}

LevelSetSurface LevelSetSurface::sphere() { return {SurfaceKind::Sphere, 3, Vec3(1.0, 1.0, 1.0)}; }

double LevelSetSurface::min_curvature_radius() const {
  const auto ax = axes_.head(ambient_dim_);
  return ax.minCoeff() * ax.minCoeff() / ax.maxCoeff();
}

double LevelSetSurface::phi(const Vec3& x) const {
  double s = -1.0;
  for (int i = 0; i < ambient_dim_; ++i) s += (x[i] / axes_[i]) * (x[i] / axes_[i]);
  return s;
}

Vec3 LevelSetSurface::grad_phi(const Vec3& x) const {
  Vec3 g = Vec3::Zero();
  for (int i = 0; i < ambient_dim_; ++i) g[i] = 2.0 * x[i] / (axes_[i] * axes_[i]);
  return g;
}

Mat3 LevelSetSurface::hess_phi() const {
  Mat3 h = Mat3::Zero();
  for (int i = 0; i < ambient_dim_; ++i) h(i, i) = 2.0 / (axes_[i] * axes_[i]);
  return h;
}

double phi_eval(const LevelSetSurface& s, const Vec3& x) { return s.phi(x); }

Vec3 exact_normal(const LevelSetSurface& s, const Vec3& x) {
  const Vec3 g = s.grad_phi(x);
  const double len = g.norm();
  if (len < 1e-14) throw DegeneratePoint("level-set gradient vanishes");
  return g / len;
}

namespace {

Projection check_depth(const LevelSetSurface& s, Projection p, const ClosestPointOptions& opts) {
  const double depth = opts.max_interior_depth.value_or(s.min_curvature_radius());
  if (p.rho < 0.0 && -p.rho >= depth) {
    throw OutOfTube("interior point deeper than the admissible tube radius");
  }
  return p;
}

// Closest point on a quadric from the stationarity condition
// y_i = x_i / (1 + 2 mu / a_i^2), with mu the root of the secular equation
// g(mu) = sum (x_i / a_i)^2 / (1 + 2 mu / a_i^2)^2 - 1, which is decreasing on
// mu > -a_min^2 / 2.
Projection secular_projection(const LevelSetSurface& s, const Vec3& x, const ClosestPointOptions& opts) {
  const int dim = s.ambient_dim();
  const Vec3& ax = s.semiaxes();
  auto g = [&](double mu, double* dg) {
    double v = -1.0, d = 0.0;
    for (int i = 0; i < dim; ++i) {
      const double a2 = ax[i] * ax[i];
      const double f = 1.0 + 2.0 * mu / a2;
      const double r = x[i] * x[i] / a2;
      v += r / (f * f);
      d += -4.0 * r / (a2 * f * f * f);
    }
    if (dg) *dg = d;
    return v;
  };
  double amin2 = ax[0] * ax[0];
  for (int i = 1; i < dim; ++i) amin2 = std::min(amin2, ax[i] * ax[i]);
  double lo = -0.5 * amin2, hi = 1.0;
  while (g(hi, nullptr) > 0.0) hi *= 2.0;
  double mu = std::max(0.0, 0.5 * (lo + hi));
  if (!(g(lo * (1.0 - 1e-15), nullptr) > 0.0)) {
    throw NoConvergence("closest point outside the unique-projection region", 0, std::abs(s.phi(x)));
  }
  for (int it = 0; it < 200; ++it) {
    double d = 0.0;
    const double v = g(mu, &d);
    if (v > 0.0) lo = mu; else hi = mu;
    double next = mu - v / d;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - mu) <= 1e-16 * (1.0 + std::abs(mu))) {
      mu = next;
      break;
    }
    mu = next;
  }
  Vec3 y = Vec3::Zero();
  for (int i = 0; i < dim; ++i) y[i] = x[i] / (1.0 + 2.0 * mu / (ax[i] * ax[i]));
  if (std::abs(s.phi(y)) >= opts.phi_tol) {
    throw NoConvergence("secular closest-point solve", 200, std::abs(s.phi(y)));
  }
  return {y, (x - y).dot(exact_normal(s, y)), opts.max_iterations};
}

}  // namespace

Projection closest_point(const LevelSetSurface& s, const Vec3& x, const ClosestPointOptions& opts) {
  if (s.kind() == SurfaceKind::Sphere) {
    const double r = x.norm();
    if (r < 1e-14) throw DegeneratePoint("projection of the sphere center");
    return check_depth(s, {x / r, r - 1.0, 0}, opts);
  }

  const int dim = s.ambient_dim();
  const double sign = s.phi(x) < 0.0 ? -1.0 : 1.0;
  Vec3 y = x;
  double residual = 0.0;
  for (int it = 1; it <= opts.max_iterations; ++it) {
    // Newton step onto the zero level set along the gradient.
    const Vec3 g = s.grad_phi(y);
    const double g2 = g.squaredNorm();
    if (g2 < 1e-28) throw DegeneratePoint("level-set gradient vanishes during projection");
    y -= (s.phi(y) / g2) * g;

    const Vec3 n = exact_normal(s, y);
    const Vec3 diff = x - y;
    const Vec3 tangential = diff - diff.dot(n) * n;
    residual = std::max(std::abs(s.phi(y)), tangential.norm());
    if (std::abs(s.phi(y)) < opts.phi_tol && tangential.norm() < opts.align_tol) {
      Vec3 p = y;
      if (dim == 2) p[2] = 0.0;
      return check_depth(s, {p, diff.dot(n), it}, opts);
    }
    const double dist = sign * diff.norm();
    y = x - dist * n;
  }
  if (!opts.secular_fallback) throw NoConvergence("closest-point iteration", opts.max_iterations, residual);
  return check_depth(s, secular_projection(s, x, opts), opts);
}

Mat3 exact_weingarten(const LevelSetSurface& s, const Vec3& x) {
  if (std::abs(s.phi(x)) > 1e-10) throw NotOnSurface("Weingarten map requested off the surface");
  const int dim = s.ambient_dim();
  const Vec3 g = s.grad_phi(x);
  const double len = g.norm();
  const Vec3 n = g / len;
  const Mat3 p = tangential_projection(n, dim);
  // D(g/|g|) = (Id - n n^T) H / |g|
  const Mat3 dn = p * s.hess_phi() / len;
  Mat3 w = -p * dn * p;
  w = 0.5 * (w + w.transpose());
  return w;
}

Mat3 extended_weingarten(const Mat3& w_surface, double rho, int dim) {
  (void)dim;
  const Mat3 m = Mat3::Identity() - rho * w_surface;
  return w_surface * m.inverse();
}

SurfacePointData surface_point_data(const LevelSetSurface& s, const Vec3& x) {
  const Projection p = closest_point(s, x);
  return {p.point, exact_normal(s, p.point), exact_weingarten(s, p.point), p.rho};
}

}  // namespace tsfem
