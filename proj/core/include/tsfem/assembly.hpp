#pragma once

#include <vector>

#include "tsfem/fespace.hpp"
#include "tsfem/sparse.hpp"

namespace tsfem {

enum class PenaltyNormalMode {
  Discrete,      ///< n_h of the curved geometry (k_p = k_g)
  Interpolated,  ///< normalized elementwise order-(k_p - 1) interpolant of n o pi
  Exact,         ///< n(pi(x))
};

struct PenaltyConfig {
  double alpha = 0.5;
  double beta = 1e4;
  PenaltyNormalMode mode = PenaltyNormalMode::Discrete;
  int kp = 1;  ///< only used by Interpolated

  /// Throws ConfigError on alpha outside [0,1], beta <= 0 or kp < 1.
  void validate() const;
  /// beta h^(-2 alpha)
  double prefactor(double h) const;
};

/// Covariant derivative on Gamma_h of the projected field P_h u, computed
/// from the field value and its tangential surface derivative as
/// P_h[D u] - P_h[D(Q_h u)], with D(Q_h u) expanded by the product rule in
/// terms of the derivative of n_h. The result has rank n+1 and is
/// tangential in every slot.
Tensor covariant_gradient_at_point(const GeomEval& geom, const Tensor& value, const Tensor& deriv);

/// Penalty normal n_{h,k_p} at reference point xi of element elem.
Vec3 penalty_normal(const PenaltyConfig& config, const LevelSetSurface& surface, const CurvedMesh& cmesh,
                    std::size_t elem, const RefPoint& xi);

/// Penalty normals tabulated at the points of a quadrature rule. Interpolated
/// nodal values are computed once per element.
class PenaltyNormalTable {
public:
  PenaltyNormalTable(const PenaltyConfig& config, const CurvedMesh& cmesh, const std::vector<RefPoint>& points);

  /// Normal at quadrature point q of elem; `geom` must be the geometry at that point.
  Vec3 at(std::size_t elem, std::size_t q, const GeomEval& geom) const;

private:
  PenaltyConfig config_;
  const CurvedMesh* cmesh_;
  std::vector<std::vector<double>> values_;  // basis values per point (Interpolated)
  std::vector<Vec3> nodal_;                  // per element nodal normals
  int nloc_ = 0;
};

struct SparseSystem {
  CsrMatrix matrix;
  std::vector<double> rhs;
  std::size_t dof_count = 0;
  double penalty_prefactor = 0.0;
};

/// Right-hand side data: a tangential tensor field given on the exact surface.
using SurfaceField = std::function<Tensor(const Vec3&)>;

struct AssemblyOptions {
  int quad_degree = 0;  ///< 0 selects 2 k_u + 2
};

/// A_h(u, v) = (grad P_h u, grad P_h v) + (P_h u, P_h v) + beta h^(-2 alpha) (Q u, Q v)
/// and l_h(v) = (f o pi, P_h v), integrated elementwise on Gamma_h.
SparseSystem assemble(const TensorFESpace& space, const LevelSetSurface& surface, const PenaltyConfig& config,
                      const SurfaceField& f, const AssemblyOptions& options = {});

/// Quadratic form of an assembled matrix, x^T A y.
double matrix_form(const CsrMatrix& a, std::span<const double> x, std::span<const double> y);

}  // namespace tsfem
