#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "tsfem/tsfem.hpp"

namespace tsfem::test {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline double uniform(double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline Vec3 random_vec(int dim) {
  Vec3 v = Vec3::Zero();
  for (int i = 0; i < dim; ++i) v[i] = uniform();
  return v;
}

inline Tensor random_tensor(int dim, int rank) {
  Tensor t(dim, rank);
  for (int i = 0; i < t.size(); ++i) t[i] = uniform();
  return t;
}

/// Random point on the surface: project a random direction scaled to the
/// semiaxes.
inline Vec3 random_surface_point(const LevelSetSurface& s) {
  Vec3 d = random_vec(s.ambient_dim());
  while (d.norm() < 0.1) d = random_vec(s.ambient_dim());
  d.normalize();
  for (int i = 0; i < s.ambient_dim(); ++i) d[i] *= s.semiaxes()[i];
  return closest_point(s, d).point;
}

/// Ordinary least-squares slope of log(e) over log(h).
inline double loglog_slope(const std::vector<double>& h, const std::vector<double>& e) {
  const std::size_t n = h.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(h[i]) / static_cast<double>(n);
    my += std::log(e[i]) / static_cast<double>(n);
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(h[i]) - mx;
    sxy += dx * (std::log(e[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

inline LevelSetSurface standard_ellipse() { return LevelSetSurface::ellipse(0.75, 1.25); }
inline LevelSetSurface standard_ellipsoid() { return LevelSetSurface::ellipsoid(0.75, 1.25, 1.0); }

}  // namespace tsfem::test
