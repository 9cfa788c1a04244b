#include "tsfem/curved.hpp"

#include <algorithm>
#include <cmath>

#include "tsfem/error.hpp"

namespace tsfem {

CurvedMesh::CurvedMesh(FlatMesh base, const LevelSetSurface& surface, int kg)
    : base_(std::move(base)), surface_(surface), basis_(base_.surface_dim, kg), h_(base_.h()) {
  if (kg < 1) throw ConfigError("geometry order must be >= 1");
  if (surface.surface_dim() != base_.surface_dim) throw ConfigError("mesh and surface dimensions differ");
  const auto nloc = static_cast<std::size_t>(basis_.size());
  dofs_.resize(num_elements() * nloc);
  for (std::size_t e = 0; e < num_elements(); ++e) {
    for (std::size_t i = 0; i < nloc; ++i) {
      const Vec3 flat = flat_point(e, basis_.nodes()[i]);
      const auto& node = basis_.nodes()[i];
      // Vertex nodes are already on the surface.
      const bool is_vertex = (node[0] == 0.0 || node[0] == 1.0) && (node[1] == 0.0 || node[1] == 1.0) &&
                             node[0] + node[1] <= 1.0;
      dofs_[e * nloc + i] = (kg == 1 || is_vertex) ? flat : closest_point(surface_, flat).point;
    }
  }
}

std::span<const Vec3> CurvedMesh::element_dofs(std::size_t elem) const {
  const auto nloc = static_cast<std::size_t>(basis_.size());
  return {dofs_.data() + elem * nloc, nloc};
}

Vec3 CurvedMesh::flat_point(std::size_t elem, const RefPoint& xi) const {
  const auto& c = base_.cells[elem];
  const int nv = base_.vertices_per_cell();
  std::array<std::pair<int, double>, 3> terms{};
  terms[0] = {c[0], 1.0 - xi[0] - (nv == 3 ? xi[1] : 0.0)};
  terms[1] = {c[1], xi[0]};
  if (nv == 3) terms[2] = {c[2], xi[1]};
  std::sort(terms.begin(), terms.begin() + nv, [](auto a, auto b) { return a.first < b.first; });
  Vec3 x = Vec3::Zero();
  for (int i = 0; i < nv; ++i) x += terms[i].second * base_.vertices[terms[i].first];
  return x;
}

CurvedMesh build_curved(const FlatMesh& base, const LevelSetSurface& surface, int kg) {
  return {base, surface, kg};
}

GeomEval eval_geometry(const CurvedMesh& cmesh, std::size_t elem, std::span<const double> values,
                       std::span<const Eigen::Vector2d> grads, std::span<const Eigen::Matrix2d> hessians) {
  const auto dofs = cmesh.element_dofs(elem);
  const int d = cmesh.surface_dim();
  GeomEval g;
  g.dim = d;
  g.x.setZero();
  g.jacobian.setZero();
  // second derivatives d^2 x / dxi_a dxi_b
  Vec3 x11 = Vec3::Zero(), x12 = Vec3::Zero(), x22 = Vec3::Zero();
  for (std::size_t i = 0; i < dofs.size(); ++i) {
    g.x += values[i] * dofs[i];
    g.jacobian.col(0) += grads[i][0] * dofs[i];
    g.jacobian.col(1) += grads[i][1] * dofs[i];
    x11 += hessians[i](0, 0) * dofs[i];
    x12 += hessians[i](0, 1) * dofs[i];
    x22 += hessians[i](1, 1) * dofs[i];
  }

  std::array<Vec3, 2> dn{Vec3::Zero(), Vec3::Zero()};  // dn_h / dxi_a
  if (d == 1) {
    const Vec3 t = g.jacobian.col(0);
    const double len = t.norm();
    g.measure = len;
    if (len < 1e-14) throw DegenerateElement("vanishing tangent");
    // outward normal of a counter-clockwise curve
    const Vec3 rot(t[1], -t[0], 0.0);
    g.normal = rot / len;
    const Vec3 drot(x11[1], -x11[0], 0.0);
    const Mat3 p = tangential_projection(g.normal, 2);
    dn[0] = p * drot / len;
    g.pseudo_inverse.setZero();
    g.pseudo_inverse.row(0) = t.transpose() / (len * len);
  } else {
    const Vec3 t1 = g.jacobian.col(0);
    const Vec3 t2 = g.jacobian.col(1);
    const Vec3 c = t1.cross(t2);
    const double len = c.norm();
    g.measure = len;
    if (len < 1e-14) throw DegenerateElement("vanishing surface measure");
    g.normal = c / len;
    const Mat3 p = tangential_projection(g.normal, 3);
    dn[0] = p * (x11.cross(t2) + t1.cross(x12)) / len;
    dn[1] = p * (x12.cross(t2) + t1.cross(x22)) / len;
    const Eigen::Matrix2d metric = g.jacobian.transpose() * g.jacobian;
    g.pseudo_inverse = metric.inverse() * g.jacobian.transpose();
  }
  g.grad_normal.setZero();
  for (int a = 0; a < d; ++a) g.grad_normal += dn[a] * g.pseudo_inverse.row(a);
  return g;
}

GeomEval eval_geometry(const CurvedMesh& cmesh, std::size_t elem, const RefPoint& xi) {
  std::vector<double> v;
  std::vector<Eigen::Vector2d> gr;
  std::vector<Eigen::Matrix2d> he;
  cmesh.geometry_basis().evaluate(xi, &v, &gr, &he);
  return eval_geometry(cmesh, elem, v, gr, he);
}

LiftData lift(const LevelSetSurface& surface, const GeomEval& geom) {
  const int dim = geom.dim + 1;
  const Projection pr = closest_point(surface, geom.x);
  LiftData l;
  l.point = pr.point;
  l.rho = pr.rho;
  l.normal = exact_normal(surface, pr.point);
  l.projection = tangential_projection(l.normal, dim);
  l.weingarten = extended_weingarten(exact_weingarten(surface, pr.point), pr.rho, dim);
  const Mat3 ph = tangential_projection(geom.normal, dim);
  l.b = l.projection * (Mat3::Identity() + l.rho * l.weingarten) * ph;

  const int d = geom.dim;
  const Eigen::MatrixXd j = geom.jacobian.leftCols(d);
  const Eigen::MatrixXd bj = l.b * j;
  const double g_h = (j.transpose() * j).determinant();
  const double g_l = (bj.transpose() * bj).determinant();
  l.det_b = std::sqrt(g_l / g_h);
  return l;
}

Mat3 lift_inverse(const LiftData& l, const GeomEval& geom) {
  const int dim = geom.dim + 1;
  const Mat3 ph = tangential_projection(geom.normal, dim);
  const Mat3 mid = Mat3::Identity() - l.normal * geom.normal.transpose() / l.normal.dot(geom.normal);
  Mat3 scale = Mat3::Identity() + l.rho * l.weingarten;
  return ph * mid * scale.inverse() * l.projection;
}

double total_area(const CurvedMesh& cmesh, int degree) {
  if (degree <= 0) degree = std::min(2 * cmesh.order() + 2, cmesh.surface_dim() == 1 ? 20 : 14);
  const QuadRule rule = quad_rule(cmesh.surface_dim(), degree);
  const BasisTable table(cmesh.geometry_basis(), rule.points);
  double area = 0.0;
  for (std::size_t e = 0; e < cmesh.num_elements(); ++e) {
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const GeomEval g = eval_geometry(cmesh, e, table.values[q], table.grads[q], table.hessians[q]);
      area += rule.weights[q] * g.measure;
    }
  }
  return area;
}

}  // namespace tsfem
