#include "tsfem/assembly.hpp"

#include <algorithm>
#include <cmath>

#include "tsfem/error.hpp"

namespace tsfem {

void PenaltyConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1]");
  if (!(beta > 0.0)) throw ConfigError("beta must be positive");
  if (mode == PenaltyNormalMode::Interpolated && kp < 1) throw ConfigError("k_p must be >= 1");
}

double PenaltyConfig::prefactor(double h) const { return beta * std::pow(h, -2.0 * alpha); }

Tensor covariant_gradient_at_point(const GeomEval& geom, const Tensor& value, const Tensor& deriv) {
  const int dim = value.dim();
  const int rank = value.rank();
  if (deriv.rank() != rank + 1 || deriv.dim() != dim) throw RankMismatch("derivative rank must be value rank + 1");
  const Vec3& n = geom.normal;
  const Mat3 p = tangential_projection(n, dim);

  // D(P_h u): projected derivative plus the product-rule terms in D n_h.
  Tensor d_tan = apply_to_slots(deriv, p, 0, rank);
  for (int j = 0; j < dim; ++j) {
    const Vec3 dn = geom.grad_normal.col(j);
    const Mat3 dp = -(dn * n.transpose() + n * dn.transpose());
    for (int s = 0; s < rank; ++s) {
      Tensor t = value;
      for (int k = 0; k < rank; ++k) t = apply_to_slot(t, k == s ? dp : p, k);
      for (int i = 0; i < t.size(); ++i) d_tan[i * dim + j] += t[i];
    }
  }
  const Tensor d_normal = deriv - d_tan;  // D(Q_h u)
  const Tensor a = apply_to_slots(deriv, p, 0, rank + 1);
  const Tensor b = apply_to_slots(d_normal, p, 0, rank + 1);
  return a - b;
}

Vec3 penalty_normal(const PenaltyConfig& config, const LevelSetSurface& surface, const CurvedMesh& cmesh,
                    std::size_t elem, const RefPoint& xi) {
  switch (config.mode) {
    case PenaltyNormalMode::Discrete:
      return eval_geometry(cmesh, elem, xi).normal;
    case PenaltyNormalMode::Exact:
      return exact_normal(surface, closest_point(surface, eval_geometry(cmesh, elem, xi).x).point);
    case PenaltyNormalMode::Interpolated:
      break;
  }
  const LagrangeBasis basis(cmesh.surface_dim(), config.kp - 1);
  const LagrangeBasis& gb = cmesh.geometry_basis();
  const auto dofs = cmesh.element_dofs(elem);
  std::vector<double> values, geo;
  basis.evaluate(xi, &values, nullptr, nullptr);
  Vec3 n = Vec3::Zero();
  for (int k = 0; k < basis.size(); ++k) {
    gb.evaluate(basis.nodes()[k], &geo, nullptr, nullptr);
    Vec3 x = Vec3::Zero();
    for (std::size_t i = 0; i < dofs.size(); ++i) x += geo[i] * dofs[i];
    n += values[k] * exact_normal(cmesh.surface(), closest_point(cmesh.surface(), x).point);
  }
  return n.normalized();
}

PenaltyNormalTable::PenaltyNormalTable(const PenaltyConfig& config, const CurvedMesh& cmesh,
                                       const std::vector<RefPoint>& points)
    : config_(config), cmesh_(&cmesh) {
  if (config.mode != PenaltyNormalMode::Interpolated) return;
  const LagrangeBasis basis(cmesh.surface_dim(), config.kp - 1);
  nloc_ = basis.size();
  values_.resize(points.size());
  for (std::size_t q = 0; q < points.size(); ++q) basis.evaluate(points[q], &values_[q], nullptr, nullptr);

  const LagrangeBasis& gb = cmesh.geometry_basis();
  std::vector<std::vector<double>> geo_at_nodes(static_cast<std::size_t>(nloc_));
  for (int k = 0; k < nloc_; ++k) gb.evaluate(basis.nodes()[k], &geo_at_nodes[k], nullptr, nullptr);

  nodal_.resize(cmesh.num_elements() * static_cast<std::size_t>(nloc_));
  for (std::size_t e = 0; e < cmesh.num_elements(); ++e) {
    const auto dofs = cmesh.element_dofs(e);
    for (int k = 0; k < nloc_; ++k) {
      Vec3 x = Vec3::Zero();
      for (std::size_t i = 0; i < dofs.size(); ++i) x += geo_at_nodes[k][i] * dofs[i];
      const Vec3 p = closest_point(cmesh.surface(), x).point;
      nodal_[e * nloc_ + k] = exact_normal(cmesh.surface(), p);
    }
  }
}

Vec3 PenaltyNormalTable::at(std::size_t elem, std::size_t q, const GeomEval& geom) const {
  switch (config_.mode) {
    case PenaltyNormalMode::Discrete:
      return geom.normal;
    case PenaltyNormalMode::Exact:
      return exact_normal(cmesh_->surface(), closest_point(cmesh_->surface(), geom.x).point);
    case PenaltyNormalMode::Interpolated:
      break;
  }
  Vec3 n = Vec3::Zero();
  for (int k = 0; k < nloc_; ++k) n += values_[q][k] * nodal_[elem * nloc_ + k];
  return n.normalized();
}

namespace {

/// Sparsity pattern of the component-coupled system and, per element, the
/// offsets of local node pairs inside the rows.
struct Pattern {
  CsrMatrix matrix;
  std::vector<std::vector<int>> neighbours;
  std::vector<int> pair_offsets;  // elem * nloc * nloc
};

Pattern build_pattern(const TensorFESpace& space) {
  const auto& scalar = space.scalar();
  const std::size_t ndof = scalar.dof_count();
  const std::size_t nloc = static_cast<std::size_t>(scalar.local_size());
  const std::size_t nelem = space.mesh().num_elements();
  const int ncomp = space.components();

  Pattern pat;
  pat.neighbours.resize(ndof);
  for (std::size_t e = 0; e < nelem; ++e) {
    const auto dofs = scalar.element_dofs(e);
    for (int a : dofs) {
      for (int b : dofs) pat.neighbours[static_cast<std::size_t>(a)].push_back(b);
    }
  }
  for (auto& nb : pat.neighbours) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }

  CsrMatrix& m = pat.matrix;
  m.rows = ndof * static_cast<std::size_t>(ncomp);
  m.row_ptr.assign(m.rows + 1, 0);
  for (int c = 0; c < ncomp; ++c) {
    for (std::size_t i = 0; i < ndof; ++i) {
      const std::size_t r = space.global_index(c, static_cast<int>(i));
      m.row_ptr[r + 1] = pat.neighbours[i].size() * static_cast<std::size_t>(ncomp);
    }
  }
  for (std::size_t r = 0; r < m.rows; ++r) m.row_ptr[r + 1] += m.row_ptr[r];
  m.cols.resize(m.row_ptr.back());
  m.values.assign(m.row_ptr.back(), 0.0);
  for (int c = 0; c < ncomp; ++c) {
    for (std::size_t i = 0; i < ndof; ++i) {
      std::size_t k = m.row_ptr[space.global_index(c, static_cast<int>(i))];
      for (int c2 = 0; c2 < ncomp; ++c2) {
        for (int j : pat.neighbours[i]) m.cols[k++] = static_cast<int>(space.global_index(c2, j));
      }
    }
  }

  pat.pair_offsets.resize(nelem * nloc * nloc);
  for (std::size_t e = 0; e < nelem; ++e) {
    const auto dofs = scalar.element_dofs(e);
    for (std::size_t a = 0; a < nloc; ++a) {
      const auto& nb = pat.neighbours[static_cast<std::size_t>(dofs[a])];
      for (std::size_t b = 0; b < nloc; ++b) {
        const auto it = std::lower_bound(nb.begin(), nb.end(), dofs[b]);
        pat.pair_offsets[(e * nloc + a) * nloc + b] = static_cast<int>(it - nb.begin());
      }
    }
  }
  return pat;
}

}  // namespace

SparseSystem assemble(const TensorFESpace& space, const LevelSetSurface& surface, const PenaltyConfig& config,
                      const SurfaceField& f, const AssemblyOptions& options) {
  config.validate();
  const CurvedMesh& cmesh = space.mesh();
  const ScalarLagrangeSpace& scalar = space.scalar();
  const int dim = space.dim();
  const int rank = space.rank();
  const int ncomp = space.components();
  const int nloc = scalar.local_size();
  const int nlocal = nloc * ncomp;
  const int grad_size = ncomp * dim;

  const int degree = options.quad_degree > 0 ? options.quad_degree : assembly_quad_degree(scalar.order());
  const QuadRule rule = quad_rule(cmesh.surface_dim(), degree);
  const BasisTable geo(cmesh.geometry_basis(), rule.points);
  const BasisTable fe(scalar.basis(), rule.points);
  const PenaltyNormalTable normals(config, cmesh, rule.points);

  Pattern pat = build_pattern(space);
  SparseSystem sys;
  sys.dof_count = space.total_dofs();
  sys.rhs.assign(sys.dof_count, 0.0);
  sys.penalty_prefactor = config.prefactor(cmesh.h());

  Eigen::MatrixXd local(nlocal, nlocal);
  Eigen::VectorXd local_rhs(nlocal);
  Eigen::MatrixXd grads(nlocal, grad_size);
  Eigen::MatrixXd tans(nlocal, ncomp);
  Eigen::MatrixXd norms(nlocal, ncomp);
  // Covariant gradients of the unit fields e_c (value part) and e_c (x) e_j
  // (derivative part); the basis gradient is linear in both.
  std::vector<Tensor> from_value(static_cast<std::size_t>(ncomp));
  std::vector<Tensor> from_deriv(static_cast<std::size_t>(ncomp * dim));

  for (std::size_t e = 0; e < cmesh.num_elements(); ++e) {
    local.setZero();
    local_rhs.setZero();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const GeomEval g = eval_geometry(cmesh, e, geo.values[q], geo.grads[q], geo.hessians[q]);
      const double wq = rule.weights[q] * g.measure;
      const TensorProjector ph(g.normal, dim);
      const TensorProjector pp(normals.at(e, q, g), dim);

      const Tensor zero_value(dim, rank);
      const Tensor zero_deriv(dim, rank + 1);
      Eigen::MatrixXd tan_unit(ncomp, ncomp), nor_unit(ncomp, ncomp);
      for (int c = 0; c < ncomp; ++c) {
        const Tensor unit = Tensor::unit(dim, rank, c);
        from_value[c] = covariant_gradient_at_point(g, unit, zero_deriv);
        for (int j = 0; j < dim; ++j) {
          from_deriv[c * dim + j] =
              covariant_gradient_at_point(g, zero_value, Tensor::unit(dim, rank + 1, c * dim + j));
        }
        const Tensor t = ph.tangential(unit);
        const Tensor nrm = pp.normal_part(unit);
        for (int k = 0; k < ncomp; ++k) {
          tan_unit(c, k) = t[k];
          nor_unit(c, k) = nrm[k];
        }
      }

      const Tensor fval = f(closest_point(surface, g.x).point);
      if (fval.rank() != rank || fval.dim() != dim) throw RankMismatch("right-hand side rank");
      const Tensor fproj = ph.tangential(fval);

      for (int i = 0; i < nloc; ++i) {
        const double phi = fe.values[q][i];
        const Vec3 sg = g.surface_gradient(fe.grads[q][i]);
        for (int c = 0; c < ncomp; ++c) {
          const int l = c * nloc + i;
          for (int k = 0; k < grad_size; ++k) {
            double s = phi * from_value[c][k];
            for (int j = 0; j < dim; ++j) s += sg[j] * from_deriv[c * dim + j][k];
            grads(l, k) = s;
          }
          tans.row(l) = phi * tan_unit.row(c);
          norms.row(l) = phi * nor_unit.row(c);
          local_rhs[l] += wq * phi * fproj[c];
        }
      }
      local.noalias() += wq * (grads * grads.transpose());
      local.noalias() += wq * (tans * tans.transpose());
      local.noalias() += (wq * sys.penalty_prefactor) * (norms * norms.transpose());
    }

    const auto dofs = scalar.element_dofs(e);
    for (int c = 0; c < ncomp; ++c) {
      for (int a = 0; a < nloc; ++a) {
        const std::size_t row = space.global_index(c, dofs[a]);
        const std::size_t nb = pat.neighbours[static_cast<std::size_t>(dofs[a])].size();
        const std::size_t base = pat.matrix.row_ptr[row];
        sys.rhs[row] += local_rhs[c * nloc + a];
        for (int c2 = 0; c2 < ncomp; ++c2) {
          for (int b = 0; b < nloc; ++b) {
            const int off = pat.pair_offsets[(e * nloc + a) * nloc + b];
            pat.matrix.values[base + c2 * nb + static_cast<std::size_t>(off)] += local(c * nloc + a, c2 * nloc + b);
          }
        }
      }
    }
  }
  sys.matrix = std::move(pat.matrix);
  return sys;
}

double matrix_form(const CsrMatrix& a, std::span<const double> x, std::span<const double> y) {
  std::vector<double> ay(a.rows);
  a.multiply(y, ay);
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows; ++i) s += x[i] * ay[i];
  return s;
}

}  // namespace tsfem
