#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

namespace tsfem {

using RefPoint = Eigen::Vector2d;

/// Quadrature on the reference simplex: [0,1] for d = 1, the triangle
/// {xi_1, xi_2 >= 0, xi_1 + xi_2 <= 1} for d = 2.
struct QuadRule {
  int dim = 0;
  int degree = 0;
  std::vector<RefPoint> points;
  std::vector<double> weights;

  std::size_t size() const noexcept { return weights.size(); }
};

/// Rule exact for polynomials of total degree <= degree. Gauss-Legendre for
/// d = 1 (degree <= 20); collapsed Gauss-Legendre product rules for d = 2
/// (degree <= 14), with the barycenter rule for degree 1.
QuadRule quad_rule(int dim, int degree);

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Nodal Lagrange basis of order k on the reference simplex with equispaced
/// nodes (order 0: one node at the barycenter). Nodes are ordered row by
/// row, (i/k, j/k) with i fastest.
class LagrangeBasis {
public:
  LagrangeBasis(int dim, int order);

  int dim() const noexcept { return dim_; }
  int order() const noexcept { return order_; }
  int size() const noexcept { return static_cast<int>(nodes_.size()); }
  const std::vector<RefPoint>& nodes() const noexcept { return nodes_; }

  /// Values, reference gradients and reference Hessians at xi. Output
  /// vectors are resized to size(); pass nullptr to skip.
  void evaluate(const RefPoint& xi, std::vector<double>* values, std::vector<Eigen::Vector2d>* grads,
                std::vector<Eigen::Matrix2d>* hessians) const;

private:
  int dim_;
  int order_;
  std::vector<RefPoint> nodes_;
  std::vector<std::array<int, 3>> index_;  // barycentric multi-index per node
};

/// Basis evaluations tabulated at the points of a quadrature rule.
struct BasisTable {
  std::vector<std::vector<double>> values;
  std::vector<std::vector<Eigen::Vector2d>> grads;
  std::vector<std::vector<Eigen::Matrix2d>> hessians;

  BasisTable() = default;
  BasisTable(const LagrangeBasis& basis, const std::vector<RefPoint>& points);
};

}  // namespace tsfem
