#include "tsfem/manufactured.hpp"

#include <cmath>

#include "tsfem/error.hpp"

namespace tsfem {

namespace {

template <class S>
using Mat = std::array<std::array<S, 3>, 3>;

// Applies m to index `slot` of a flat dim^rank array.
template <class T, class S>
std::vector<T> apply_slot(const std::vector<T>& t, int dim, int rank, const Mat<S>& m, int slot) {
  const int stride = ipow(dim, rank - 1 - slot);
  std::vector<T> out(t.size());
  for (int idx = 0; idx < static_cast<int>(t.size()); ++idx) {
    const int i = (idx / stride) % dim;
    const int base = idx - i * stride;
    T acc{};
    for (int k = 0; k < dim; ++k) acc += m[i][k] * t[static_cast<std::size_t>(base + k * stride)];
    out[static_cast<std::size_t>(idx)] = acc;
  }
  return out;
}

template <class T, class S>
std::vector<T> apply_all(std::vector<T> t, int dim, int rank, const Mat<S>& m) {
  for (int s = 0; s < rank; ++s) t = apply_slot(t, dim, rank, m, s);
  return t;
}

Tensor to_tensor(const std::vector<double>& v, int dim, int rank) {
  Tensor t(dim, rank);
  for (int i = 0; i < t.size(); ++i) t[i] = v[static_cast<std::size_t>(i)];
  return t;
}

}  // namespace

ExactJet differentiate(const LevelSetSurface& surface, int rank, const DualFieldFn& fn, const Vec3& x) {
  const int dim = surface.ambient_dim();
  const Vec3& ax = surface.semiaxes();

  std::array<Dual2, 3> xs;
  for (int i = 0; i < 3; ++i) xs[i] = i < dim ? Dual2::variable(x[i], i) : Dual2(0.0);

  std::array<Dual2, 3> grad;
  Dual2 len2(0.0);
  for (int i = 0; i < dim; ++i) {
    grad[i] = Dual2(2.0 / (ax[i] * ax[i])) * xs[i];
    len2 += grad[i] * grad[i];
  }
  const Dual2 inv_len = inverse(sqrt(len2));
  std::array<Dual2, 3> n;
  for (int i = 0; i < dim; ++i) n[i] = grad[i] * inv_len;

  Mat<Dual2> p{};
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) p[a][b] = Dual2(a == b ? 1.0 : 0.0) - n[a] * n[b];

  const std::vector<Dual2> u = fn(xs, n, p);
  const int nu = ipow(dim, rank);
  if (static_cast<int>(u.size()) != nu) throw RankMismatch("closed-form field has the wrong number of components");

  Mat<Dual1> p1{};
  Mat<double> p0{};
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      p1[a][b] = p[a][b].first_order();
      p0[a][b] = p[a][b].v;
    }

  // first derivative, derivative index last
  std::vector<Dual1> du(static_cast<std::size_t>(nu * dim));
  std::vector<double> du0(du.size());
  for (int i = 0; i < nu; ++i)
    for (int k = 0; k < dim; ++k) {
      du[static_cast<std::size_t>(i * dim + k)] = u[static_cast<std::size_t>(i)].partial(k);
      du0[static_cast<std::size_t>(i * dim + k)] = u[static_cast<std::size_t>(i)].g[k];
    }
  const std::vector<Dual1> g = apply_all(du, dim, rank + 1, p1);

  // second covariant derivative and its trace over the two derivative slots
  std::vector<double> dg(static_cast<std::size_t>(nu * dim * dim));
  for (int j = 0; j < nu * dim; ++j)
    for (int k = 0; k < dim; ++k) dg[static_cast<std::size_t>(j * dim + k)] = g[static_cast<std::size_t>(j)].g[k];
  const std::vector<double> h = apply_all(dg, dim, rank + 2, p0);

  std::vector<double> value(static_cast<std::size_t>(nu)), lap(static_cast<std::size_t>(nu), 0.0);
  std::vector<double> cov(g.size());
  for (int i = 0; i < nu; ++i) {
    value[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i)].v;
    for (int j = 0; j < dim; ++j) lap[static_cast<std::size_t>(i)] += h[static_cast<std::size_t>((i * dim + j) * dim + j)];
  }
  for (std::size_t i = 0; i < g.size(); ++i) cov[i] = g[i].v;

  return {to_tensor(value, dim, rank), to_tensor(apply_slot(du0, dim, rank + 1, p0, rank), dim, rank + 1),
          to_tensor(cov, dim, rank + 1), to_tensor(lap, dim, rank)};
}

ManufacturedCase::ManufacturedCase(const LevelSetSurface& surface, int rank) : surface_(surface), rank_(rank) {
  const int dim = surface.ambient_dim();
  if (rank == 1 && dim == 2) {
    fn_ = [](const std::array<Dual2, 3>& x, const std::array<Dual2, 3>&, const Mat<Dual2>& p) {
      const Dual2 w0 = pow(x[0], 3) * x[1];
      const Dual2 w1 = (x[0] + Dual2(2.0)) * x[1] * x[1];
      return std::vector<Dual2>{p[0][0] * w0 + p[0][1] * w1, p[1][0] * w0 + p[1][1] * w1};
    };
  } else if (rank == 1 && dim == 3) {
    fn_ = [](const std::array<Dual2, 3>& x, const std::array<Dual2, 3>& n, const Mat<Dual2>& p) {
      const std::array<Dual2, 3> df{x[1] * x[2], x[0] * x[2], x[0] * x[1]};
      std::array<Dual2, 3> t;
      for (int a = 0; a < 3; ++a) t[a] = p[a][0] * df[0] + p[a][1] * df[1] + p[a][2] * df[2];
      return std::vector<Dual2>{n[1] * t[2] - n[2] * t[1], n[2] * t[0] - n[0] * t[2], n[0] * t[1] - n[1] * t[0]};
    };
  } else if (rank == 2 && (dim == 2 || dim == 3)) {
    fn_ = [dim](const std::array<Dual2, 3>&, const std::array<Dual2, 3>&, const Mat<Dual2>& p) {
      const double m[3][3] = {{-1.0, 3.0, 0.0}, {1.0, 2.0, 0.0}, {0.0, 0.0, 1.0}};
      std::vector<Dual2> out(static_cast<std::size_t>(dim * dim));
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
          Dual2 acc(0.0);
          for (int k = 0; k < dim; ++k)
            for (int l = 0; l < dim; ++l)
              if (m[k][l] != 0.0) acc += p[i][k] * Dual2(m[k][l]) * p[l][j];
          out[static_cast<std::size_t>(i * dim + j)] = acc;
        }
      return out;
    };
  } else {
    throw ConfigError("no manufactured solution for rank " + std::to_string(rank) + " in dimension " +
                      std::to_string(dim));
  }
}

std::string ManufacturedCase::name() const {
  std::string s;
  switch (surface_.kind()) {
    case SurfaceKind::Ellipse: s = "ellipse"; break;
    case SurfaceKind::Ellipsoid: s = "ellipsoid"; break;
    case SurfaceKind::Sphere: s = "sphere"; break;
  }
  return s + "-rank" + std::to_string(rank_);
}

ExactJet ManufacturedCase::jet(const Vec3& x) const {
  if (!(std::abs(surface_.phi(x)) < 1e-8)) throw NotOnSurface("manufactured field evaluated off the surface");
  return differentiate(surface_, rank_, fn_, x);
}

Tensor ManufacturedCase::exact_solution(const Vec3& x) const { return jet(x).value; }

Tensor ManufacturedCase::rhs(const Vec3& x) const {
  ExactJet j = jet(x);
  return j.value - j.laplacian;
}

}  // namespace tsfem
