#include "tsfem/reference.hpp"

#include <cmath>
#include <numbers>

#include "tsfem/error.hpp"

namespace tsfem {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  // Legendre P_n and P_{n-1} at x by the three-term recurrence.
  auto legendre = [n](double x, double& pn, double& pn1) {
    pn1 = 1.0;
    pn = x;
    for (int k = 2; k <= n; ++k) {
      const double next = ((2.0 * k - 1.0) * x * pn - (k - 1.0) * pn1) / k;
      pn1 = pn;
      pn = next;
    }
  };
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pn = 0.0, pn1 = 0.0, dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      legendre(x, pn, pn1);
      dp = n * (x * pn - pn1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(x, pn, pn1);
    dp = n * (x * pn - pn1) / (x * x - 1.0);
    nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);
    weights[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

QuadRule quad_rule(int dim, int degree) {
  QuadRule rule;
  rule.dim = dim;
  rule.degree = degree;
  if (dim == 1) {
    if (degree < 1 || degree > 20) throw UnsupportedDegree("1d quadrature degree " + std::to_string(degree));
    std::vector<double> x, w;
    gauss_legendre((degree + 2) / 2, x, w);
    for (std::size_t i = 0; i < x.size(); ++i) {
      rule.points.emplace_back(x[i], 0.0);
      rule.weights.push_back(w[i]);
    }
    return rule;
  }
  if (dim != 2 || degree < 1 || degree > 14) {
    throw UnsupportedDegree("quadrature dim " + std::to_string(dim) + " degree " + std::to_string(degree));
  }
  if (degree == 1) {
    rule.points.emplace_back(1.0 / 3.0, 1.0 / 3.0);
    rule.weights.push_back(0.5);
    return rule;
  }
  // Duffy transform (u, v) -> (u, (1 - u) v) with Jacobian (1 - u).
  std::vector<double> xu, wu, xv, wv;
  gauss_legendre((degree + 3) / 2, xu, wu);
  gauss_legendre((degree + 2) / 2, xv, wv);
  for (std::size_t i = 0; i < xu.size(); ++i) {
    for (std::size_t j = 0; j < xv.size(); ++j) {
      rule.points.emplace_back(xu[i], (1.0 - xu[i]) * xv[j]);
      rule.weights.push_back(wu[i] * wv[j] * (1.0 - xu[i]));
    }
  }
  return rule;
}

LagrangeBasis::LagrangeBasis(int dim, int order) : dim_(dim), order_(order) {
  if ((dim != 1 && dim != 2) || order < 0 || order > 6) {
    throw UnsupportedDegree("Lagrange basis dim " + std::to_string(dim) + " order " + std::to_string(order));
  }
  if (order == 0) {
    nodes_.push_back(dim == 1 ? RefPoint(0.5, 0.0) : RefPoint(1.0 / 3.0, 1.0 / 3.0));
  } else if (dim == 1) {
    for (int i = 0; i <= order; ++i) nodes_.emplace_back(double(i) / order, 0.0);
  } else {
    for (int j = 0; j <= order; ++j) {
      for (int i = 0; i + j <= order; ++i) nodes_.emplace_back(double(i) / order, double(j) / order);
    }
  }
  for (const RefPoint& x : nodes_) {
    const int i = static_cast<int>(std::lround(x[0] * order));
    const int j = dim == 2 ? static_cast<int>(std::lround(x[1] * order)) : 0;
    index_.push_back({i, j, order - i - j});
  }
}

namespace {

// Silvester factor S_m(l) = prod_{r<m} (k l - r) / (r + 1) with its first
// and second derivative in l.
struct Factor {
  double v = 1.0, d = 0.0, dd = 0.0;
};

Factor silvester(int k, int m, double l) {
  Factor f;
  for (int r = 0; r < m; ++r) {
    const double g = (k * l - r) / (r + 1);
    const double dg = double(k) / (r + 1);
    f.dd = f.dd * g + 2.0 * f.d * dg;
    f.d = f.d * g + f.v * dg;
    f.v *= g;
  }
  return f;
}

}  // namespace

void LagrangeBasis::evaluate(const RefPoint& xi, std::vector<double>* values, std::vector<Eigen::Vector2d>* grads,
                             std::vector<Eigen::Matrix2d>* hessians) const {
  const int n = size();
  if (values) values->assign(static_cast<std::size_t>(n), 0.0);
  if (grads) grads->assign(static_cast<std::size_t>(n), Eigen::Vector2d::Zero());
  if (hessians) hessians->assign(static_cast<std::size_t>(n), Eigen::Matrix2d::Zero());
  if (order_ == 0) {
    if (values) (*values)[0] = 1.0;
    return;
  }
  const double l1 = xi[0];
  const double l2 = dim_ == 2 ? xi[1] : 0.0;
  const double l0 = 1.0 - l1 - l2;
  for (int m = 0; m < n; ++m) {
    const auto& idx = index_[static_cast<std::size_t>(m)];
    const Factor a = silvester(order_, idx[0], l1);
    const Factor b = silvester(order_, idx[1], l2);
    const Factor c = silvester(order_, idx[2], l0);
    if (values) (*values)[m] = a.v * b.v * c.v;
    if (grads) {
      (*grads)[m] = Eigen::Vector2d(a.d * b.v * c.v - a.v * b.v * c.d,
                                    dim_ == 2 ? a.v * b.d * c.v - a.v * b.v * c.d : 0.0);
    }
    if (hessians) {
      Eigen::Matrix2d h = Eigen::Matrix2d::Zero();
      h(0, 0) = a.dd * b.v * c.v - 2.0 * a.d * b.v * c.d + a.v * b.v * c.dd;
      if (dim_ == 2) {
        h(1, 1) = a.v * b.dd * c.v - 2.0 * a.v * b.d * c.d + a.v * b.v * c.dd;
        h(0, 1) = h(1, 0) = a.d * b.d * c.v - a.d * b.v * c.d - a.v * b.d * c.d + a.v * b.v * c.dd;
      }
      (*hessians)[m] = h;
    }
  }
}

BasisTable::BasisTable(const LagrangeBasis& basis, const std::vector<RefPoint>& points) {
  values.resize(points.size());
  grads.resize(points.size());
  hessians.resize(points.size());
  for (std::size_t q = 0; q < points.size(); ++q) {
    basis.evaluate(points[q], &values[q], &grads[q], &hessians[q]);
  }
}

}  // namespace tsfem
