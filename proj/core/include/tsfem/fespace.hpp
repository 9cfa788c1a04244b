#pragma once

#include <functional>
#include <span>
#include <vector>

#include "tsfem/curved.hpp"
#include "tsfem/tensor.hpp"

namespace tsfem {

/// Continuous Lagrange space of order k_u on the curved surface Gamma_h.
/// Degrees of freedom are identified by hashing their flat reference
/// positions with tolerance 1e-9 h.
class ScalarLagrangeSpace {
public:
  ScalarLagrangeSpace(const CurvedMesh& cmesh, int ku);

  const CurvedMesh& mesh() const noexcept { return *cmesh_; }
  int order() const noexcept { return basis_.order(); }
  const LagrangeBasis& basis() const noexcept { return basis_; }
  std::size_t dof_count() const noexcept { return nodes_.size(); }
  int local_size() const noexcept { return basis_.size(); }

  std::span<const int> element_dofs(std::size_t elem) const;
  /// Node positions on Gamma_h.
  const std::vector<Vec3>& nodes() const noexcept { return nodes_; }

private:
  const CurvedMesh* cmesh_;
  LagrangeBasis basis_;
  std::vector<int> local_to_global_;
  std::vector<Vec3> nodes_;
};

/// Product space [V_h]^N for rank-n ambient tensor fields, N = (d+1)^n.
///
/// Coefficients are stored component-major: index c * dof_count + i holds
/// flat tensor component c at scalar node i.
class TensorFESpace {
public:
  TensorFESpace(const ScalarLagrangeSpace& scalar, int rank);

  const ScalarLagrangeSpace& scalar() const noexcept { return *scalar_; }
  const CurvedMesh& mesh() const noexcept { return scalar_->mesh(); }
  int rank() const noexcept { return rank_; }
  int dim() const noexcept { return mesh().ambient_dim(); }
  int components() const noexcept { return components_; }
  std::size_t total_dofs() const noexcept { return components_ * scalar_->dof_count(); }

  std::size_t global_index(int component, int node) const noexcept {
    return static_cast<std::size_t>(component) * scalar_->dof_count() + static_cast<std::size_t>(node);
  }

private:
  const ScalarLagrangeSpace* scalar_;
  int rank_;
  int components_;
};

using TensorField = std::function<Tensor(const Vec3&)>;

/// Componentwise nodal interpolation of a tensor field given on Gamma_h.
std::vector<double> interpolate(const TensorFESpace& space, const TensorField& field);

struct FieldValue {
  Tensor value;       ///< rank n
  Tensor derivative;  ///< rank n+1, D_{Gamma_h} of every component
};

/// Discrete field and its tangential surface derivative at one point, given
/// the element geometry and reference basis data of the scalar space.
FieldValue evaluate(const TensorFESpace& space, std::span<const double> coeffs, std::size_t elem,
                    const GeomEval& geom, std::span<const double> values, std::span<const Eigen::Vector2d> grads);
FieldValue evaluate(const TensorFESpace& space, std::span<const double> coeffs, std::size_t elem,
                    const RefPoint& xi);

}  // namespace tsfem
