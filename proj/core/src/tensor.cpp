#include "tsfem/tensor.hpp"

#include <cassert>
#include <cmath>

namespace tsfem {

Tensor::Tensor(int dim, int rank) : dim_(dim), rank_(rank), size_(ipow(dim, rank)) {
  assert(size_ <= kMaxEntries);
}

Tensor Tensor::unit(int dim, int rank, int flat_index) {
  Tensor t(dim, rank);
  t[flat_index] = 1.0;
  return t;
}

Tensor& Tensor::operator+=(const Tensor& o) {
  for (int i = 0; i < size_; ++i) data_[i] += o.data_[i];
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& o) {
  for (int i = 0; i < size_; ++i) data_[i] -= o.data_[i];
  return *this;
}

Tensor& Tensor::operator*=(double s) {
  for (int i = 0; i < size_; ++i) data_[i] *= s;
  return *this;
}

void Tensor::set_zero() {
  for (int i = 0; i < size_; ++i) data_[i] = 0.0;
}

Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
Tensor operator*(double s, Tensor a) { return a *= s; }

double inner(const Tensor& a, const Tensor& b) {
  double s = 0.0;
  for (int i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Tensor& a) { return std::sqrt(inner(a, a)); }

double max_abs(const Tensor& a) {
  double m = 0.0;
  for (int i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i]));
  return m;
}

Tensor apply_to_slot(const Tensor& t, const Mat3& m, int slot) {
  const int dim = t.dim();
  const int stride = ipow(dim, t.rank() - slot - 1);
  const int block = stride * dim;
  Tensor r(dim, t.rank());
  for (int outer = 0; outer < t.size(); outer += block) {
    for (int inner_i = 0; inner_i < stride; ++inner_i) {
      const int base = outer + inner_i;
      for (int i = 0; i < dim; ++i) {
        double s = 0.0;
        for (int k = 0; k < dim; ++k) s += m(i, k) * t[base + k * stride];
        r[base + i * stride] = s;
      }
    }
  }
  return r;
}

Tensor apply_to_slots(const Tensor& t, const Mat3& m, int first, int count) {
  Tensor r = t;
  for (int s = first; s < first + count; ++s) r = apply_to_slot(r, m, s);
  return r;
}

Tensor contract_slot(const Tensor& t, const Vec3& v, int slot) {
  const int dim = t.dim();
  const int stride = ipow(dim, t.rank() - slot - 1);
  const int block = stride * dim;
  Tensor r(dim, t.rank() - 1);
  int out = 0;
  for (int outer = 0; outer < t.size(); outer += block) {
    for (int inner_i = 0; inner_i < stride; ++inner_i) {
      double s = 0.0;
      for (int k = 0; k < dim; ++k) s += v[k] * t[outer + inner_i + k * stride];
      r[out + inner_i] = s;
    }
    out += stride;
  }
  return r;
}

Mat3 tangential_projection(const Vec3& n, int dim) {
  Mat3 p = Mat3::Identity() - n * n.transpose();
  if (dim == 2) {
    p.row(2).setZero();
    p.col(2).setZero();
  }
  return p;
}

TensorProjector::TensorProjector(const Vec3& normal, int dim)
    : n_(normal), p_(tangential_projection(normal, dim)), dim_(dim) {}

Tensor TensorProjector::tangential(const Tensor& t) const {
  return apply_to_slots(t, p_, 0, t.rank());
}

Tensor TensorProjector::normal_part(const Tensor& t) const { return t - tangential(t); }

}  // namespace tsfem
