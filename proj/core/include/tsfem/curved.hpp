#pragma once

#include <span>
#include <vector>

#include "tsfem/levelset.hpp"
#include "tsfem/mesh.hpp"
#include "tsfem/reference.hpp"

namespace tsfem {

/// Default quadrature degrees: assembly integrates with 2 k_u + 2, error
/// norms with 2 (k_u + k_g) + 2.
constexpr int assembly_quad_degree(int ku) { return 2 * ku + 2; }
constexpr int error_quad_degree(int ku, int kg) { return 2 * (ku + kg) + 2; }

/// Order-k_g parametrized surface: the closest-point projection
/// interpolated elementwise at the order-k_g Lagrange nodes of the flat mesh.
class CurvedMesh {
public:
  CurvedMesh(FlatMesh base, const LevelSetSurface& surface, int kg);

  const FlatMesh& base() const noexcept { return base_; }
  const LevelSetSurface& surface() const noexcept { return surface_; }
  int order() const noexcept { return basis_.order(); }
  int surface_dim() const noexcept { return base_.surface_dim; }
  int ambient_dim() const noexcept { return base_.surface_dim + 1; }
  std::size_t num_elements() const noexcept { return base_.cells.size(); }
  double h() const noexcept { return h_; }

  const LagrangeBasis& geometry_basis() const noexcept { return basis_; }
  std::span<const Vec3> element_dofs(std::size_t elem) const;

  /// Point of the flat reference element at reference coordinate xi,
  /// summed in ascending global vertex order so shared points agree bitwise.
  Vec3 flat_point(std::size_t elem, const RefPoint& xi) const;

private:
  FlatMesh base_;
  LevelSetSurface surface_;
  LagrangeBasis basis_;
  double h_;
  std::vector<Vec3> dofs_;  // num_elements * basis size
};

CurvedMesh build_curved(const FlatMesh& base, const LevelSetSurface& surface, int kg);

/// Local geometry of the curved element at one reference point.
struct GeomEval {
  int dim = 2;                               ///< surface dimension d
  Vec3 x;                                    ///< point on Gamma_h
  Eigen::Matrix<double, 3, 2> jacobian;      ///< columns dx/dxi_a (first d used)
  Eigen::Matrix<double, 2, 3> pseudo_inverse; ///< G^-1 J^T, maps ambient to reference
  double measure = 0.0;                       ///< sqrt(det J^T J)
  Vec3 normal;                                ///< outward unit normal n_h
  Mat3 grad_normal;                           ///< (D n_h)_{ij} = d_j n_i along Gamma_h

  /// Surface gradient on Gamma_h of a function with reference gradient g.
  Vec3 surface_gradient(const Eigen::Vector2d& g) const {
    return pseudo_inverse.transpose() * g;
  }
};

/// Geometry from precomputed basis values/derivatives at xi.
GeomEval eval_geometry(const CurvedMesh& cmesh, std::size_t elem, std::span<const double> values,
                       std::span<const Eigen::Vector2d> grads, std::span<const Eigen::Matrix2d> hessians);
GeomEval eval_geometry(const CurvedMesh& cmesh, std::size_t elem, const RefPoint& xi);

/// Closest-point lift of a point of Gamma_h and the derivative of pi
/// restricted to Gamma_h, B = P (Id + rho W) P_h, with W the Weingarten map
/// of the distance-function normal at the lifted point's preimage.
struct LiftData {
  Vec3 point;  ///< pi(x)
  double rho = 0.0;
  Vec3 normal;  ///< exact normal at pi(x)
  Mat3 projection;
  Mat3 weingarten;  ///< extended Weingarten map at x
  Mat3 b;
  double det_b = 1.0;  ///< |det B| = surface measure ratio dGamma / dGamma_h
};

LiftData lift(const LevelSetSurface& surface, const GeomEval& geom);

/// B^-1 = P_h (Id - n (x) n_h / <n, n_h>) (Id + rho W)^-1 P.
Mat3 lift_inverse(const LiftData& lift, const GeomEval& geom);

/// Sum over elements of the quadrature of the surface measure.
double total_area(const CurvedMesh& cmesh, int degree = 0);

}  // namespace tsfem
