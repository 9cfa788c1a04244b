#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "tsfem/dual.hpp"
#include "tsfem/levelset.hpp"
#include "tsfem/tensor.hpp"

namespace tsfem {

/// Value and derivatives of an exact tangential tensor field at a surface point.
struct ExactJet {
  Tensor value;               ///< u, rank n
  Tensor surface_derivative;  ///< D_Gamma u = Du P, rank n+1
  Tensor covariant_gradient;  ///< P[Du P], rank n+1
  Tensor laplacian;           ///< connection Laplacian, rank n
};

/// Closed-form ambient tensor field evaluated on forward-mode numbers.
/// Arguments: coordinates, level-set normal and tangential projection
/// (all as Dual2 in the ambient coordinates). Returns dim^rank components.
using DualFieldFn = std::function<std::vector<Dual2>(
    const std::array<Dual2, 3>& x, const std::array<Dual2, 3>& n, const std::array<std::array<Dual2, 3>, 3>& p)>;

/// Derivatives of a closed-form field: the first covariant derivative
/// P[Du P] and the trace of the fully projected second derivative.
ExactJet differentiate(const LevelSetSurface& surface, int rank, const DualFieldFn& fn, const Vec3& x);

/// Manufactured solutions of -Lap u + u = f:
///  * rank 1 on curves:   u = P (x1^3 x2, (x1 + 2) x2^2)
///  * rank 1 on surfaces: u = n x grad_Gamma(x1 x2 x3)
///  * rank 2:             u = P M P with M = [[-1,3],[1,2]] resp. [[-1,3,0],[1,2,0],[0,0,1]]
class ManufacturedCase {
public:
  ManufacturedCase(const LevelSetSurface& surface, int rank);

  const LevelSetSurface& surface() const noexcept { return surface_; }
  int rank() const noexcept { return rank_; }
  int dim() const noexcept { return surface_.ambient_dim(); }
  std::string name() const;

  /// Throws NotOnSurface when |phi(x)| >= 1e-8.
  ExactJet jet(const Vec3& x) const;
  Tensor exact_solution(const Vec3& x) const;
  /// f = -Lap u + u.
  Tensor rhs(const Vec3& x) const;

  const DualFieldFn& closed_form() const noexcept { return fn_; }

private:
  LevelSetSurface surface_;
  int rank_;
  DualFieldFn fn_;
};

}  // namespace tsfem
