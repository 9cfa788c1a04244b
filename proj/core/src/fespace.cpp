#include "tsfem/fespace.hpp"

#include <cmath>
#include <unordered_map>

#include "tsfem/error.hpp"

namespace tsfem {

namespace {

struct CellKey {
  long long x, y, z;
  bool operator==(const CellKey&) const = default;
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const noexcept {
    std::size_t h = std::hash<long long>{}(k.x);
    h ^= std::hash<long long>{}(k.y) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<long long>{}(k.z) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

/// Spatial hash with tolerance matching over the neighbouring grid cells.
class NodeRegistry {
public:
  explicit NodeRegistry(double tol) : tol_(tol) {}

  int find_or_insert(const Vec3& p) {
    const CellKey key = cell_of(p);
    for (long long dx = -1; dx <= 1; ++dx) {
      for (long long dy = -1; dy <= 1; ++dy) {
        for (long long dz = -1; dz <= 1; ++dz) {
          auto it = buckets_.find({key.x + dx, key.y + dy, key.z + dz});
          if (it == buckets_.end()) continue;
          for (int id : it->second) {
            if ((points_[id] - p).norm() <= tol_) return id;
          }
        }
      }
    }
    const int id = static_cast<int>(points_.size());
    points_.push_back(p);
    buckets_[key].push_back(id);
    return id;
  }

private:
  CellKey cell_of(const Vec3& p) const {
    return {static_cast<long long>(std::floor(p[0] / tol_)), static_cast<long long>(std::floor(p[1] / tol_)),
            static_cast<long long>(std::floor(p[2] / tol_))};
  }

  double tol_;
  std::vector<Vec3> points_;
  std::unordered_map<CellKey, std::vector<int>, CellKeyHash> buckets_;
};

}  // namespace

ScalarLagrangeSpace::ScalarLagrangeSpace(const CurvedMesh& cmesh, int ku)
    : cmesh_(&cmesh), basis_(cmesh.surface_dim(), ku) {
  if (ku < 1 || ku > 4) throw UnsupportedDegree("supported FE orders are 1..4");
  const std::size_t nloc = static_cast<std::size_t>(basis_.size());
  local_to_global_.resize(cmesh.num_elements() * nloc);

  NodeRegistry registry(1e-9 * cmesh.h());
  std::vector<double> values;
  for (std::size_t e = 0; e < cmesh.num_elements(); ++e) {
    for (std::size_t i = 0; i < nloc; ++i) {
      const RefPoint& xi = basis_.nodes()[i];
      const int id = registry.find_or_insert(cmesh.flat_point(e, xi));
      if (id == static_cast<int>(nodes_.size())) {
        cmesh.geometry_basis().evaluate(xi, &values, nullptr, nullptr);
        Vec3 x = Vec3::Zero();
        const auto gdofs = cmesh.element_dofs(e);
        for (std::size_t k = 0; k < gdofs.size(); ++k) x += values[k] * gdofs[k];
        nodes_.push_back(x);
      }
      local_to_global_[e * nloc + i] = id;
    }
  }
}

std::span<const int> ScalarLagrangeSpace::element_dofs(std::size_t elem) const {
  const auto nloc = static_cast<std::size_t>(basis_.size());
  return {local_to_global_.data() + elem * nloc, nloc};
}

TensorFESpace::TensorFESpace(const ScalarLagrangeSpace& scalar, int rank)
    : scalar_(&scalar), rank_(rank), components_(ipow(scalar.mesh().ambient_dim(), rank)) {
  if (rank < 1 || rank > 3) throw RankMismatch("tensor rank must be in 1..3");
}

std::vector<double> interpolate(const TensorFESpace& space, const TensorField& field) {
  std::vector<double> coeffs(space.total_dofs(), 0.0);
  const auto& nodes = space.scalar().nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Tensor v = field(nodes[i]);
    if (v.rank() != space.rank() || v.dim() != space.dim()) throw RankMismatch("interpolated field rank");
    for (int c = 0; c < space.components(); ++c) coeffs[space.global_index(c, static_cast<int>(i))] = v[c];
  }
  return coeffs;
}

FieldValue evaluate(const TensorFESpace& space, std::span<const double> coeffs, std::size_t elem,
                    const GeomEval& geom, std::span<const double> values, std::span<const Eigen::Vector2d> grads) {
  const int dim = space.dim();
  FieldValue out{Tensor(dim, space.rank()), Tensor(dim, space.rank() + 1)};
  const auto dofs = space.scalar().element_dofs(elem);
  for (std::size_t i = 0; i < dofs.size(); ++i) {
    const Vec3 sg = geom.surface_gradient(grads[i]);
    for (int c = 0; c < space.components(); ++c) {
      const double u = coeffs[space.global_index(c, dofs[i])];
      out.value[c] += u * values[i];
      for (int j = 0; j < dim; ++j) out.derivative[c * dim + j] += u * sg[j];
    }
  }
  return out;
}

FieldValue evaluate(const TensorFESpace& space, std::span<const double> coeffs, std::size_t elem,
                    const RefPoint& xi) {
  const GeomEval geom = eval_geometry(space.mesh(), elem, xi);
  std::vector<double> v;
  std::vector<Eigen::Vector2d> g;
  space.scalar().basis().evaluate(xi, &v, &g, nullptr);
  return evaluate(space, coeffs, elem, geom, v, g);
}

}  // namespace tsfem
