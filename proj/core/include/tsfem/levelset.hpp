#pragma once

#include <optional>

#include "tsfem/tensor.hpp"

namespace tsfem {

enum class SurfaceKind { Ellipse, Ellipsoid, Sphere };

/// Closed quadric hypersurface { x : sum (x_i / a_i)^2 = 1 } in R^2 or R^3.
///
/// Points are always stored as 3-vectors; for the planar ellipse the third
/// coordinate is zero and ignored.
class LevelSetSurface {
public:
  static LevelSetSurface ellipse(double a, double b);
  static LevelSetSurface ellipsoid(double a, double b, double c);
  static LevelSetSurface sphere();

  SurfaceKind kind() const noexcept { return kind_; }
  int ambient_dim() const noexcept { return ambient_dim_; }
  int surface_dim() const noexcept { return ambient_dim_ - 1; }
  const Vec3& semiaxes() const noexcept { return axes_; }

  /// Smallest principal radius of curvature, i.e. the reach of the surface.
  double min_curvature_radius() const;

  double phi(const Vec3& x) const;
  Vec3 grad_phi(const Vec3& x) const;
  /// Constant Hessian of phi.
  Mat3 hess_phi() const;

private:
  LevelSetSurface(SurfaceKind kind, int ambient_dim, const Vec3& axes);

  SurfaceKind kind_;
  int ambient_dim_;
  Vec3 axes_;
};

struct Projection {
  Vec3 point;     ///< closest point on the surface
  double rho;     ///< signed distance, negative inside
  int iterations; ///< 0 for the closed-form sphere projection
};

struct SurfacePointData {
  Vec3 point;
  Vec3 normal;
  Mat3 weingarten;
  double signed_distance;
};

struct ClosestPointOptions {
  double phi_tol = 1e-12;
  double align_tol = 1e-10;
  int max_iterations = 100;
  /// Maximal depth accepted for interior points. Defaults to the reach of
  /// the surface; exterior points of these convex surfaces are unrestricted.
  std::optional<double> max_interior_depth;
  /// When the fixed-point iteration stalls (it contracts only close to the
  /// surface), solve the quadric's secular equation instead of throwing.
  bool secular_fallback = true;
};

double phi_eval(const LevelSetSurface& s, const Vec3& x);

/// Level-set normal Dphi / |Dphi|. Throws DegeneratePoint when |Dphi| < 1e-14.
Vec3 exact_normal(const LevelSetSurface& s, const Vec3& x);

/// Closest-point projection. The sphere uses x/|x|; the ellipse and
/// ellipsoid use the first-order fixed-point scheme of Demlow and Dziuk:
/// a Newton step onto the zero level set followed by y <- x - rho n(y).
Projection closest_point(const LevelSetSurface& s, const Vec3& x,
                         const ClosestPointOptions& opts = {});

/// Weingarten map W = -P Dn P of a surface point. Throws NotOnSurface when
/// |phi(x)| > 1e-10.
Mat3 exact_weingarten(const LevelSetSurface& s, const Vec3& x);

/// Weingarten map of the distance-function normal extended to a point at
/// signed distance rho above `on_surface`: W (Id - rho W)^-1.
Mat3 extended_weingarten(const Mat3& w_surface, double rho, int dim);

SurfacePointData surface_point_data(const LevelSetSurface& s, const Vec3& x);

}  // namespace tsfem
