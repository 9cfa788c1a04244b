#pragma once

#include <array>
#include <cstddef>
#include <span>

#include <Eigen/Dense>

namespace tsfem {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Integer power for small tensor sizes, dim^rank.
constexpr int ipow(int base, int exp) {
  int r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

/// Dense ambient tensor of rank <= 4 in dimension 2 or 3, stored flat in
/// row-major index order (last index fastest). Derivative arrays use the
/// same type with the derivative direction as the trailing index.
class Tensor {
public:
  static constexpr int kMaxEntries = 81;

  Tensor() = default;
  Tensor(int dim, int rank);

  static Tensor unit(int dim, int rank, int flat_index);

  int dim() const noexcept { return dim_; }
  int rank() const noexcept { return rank_; }
  int size() const noexcept { return size_; }

  double& operator[](int i) noexcept { return data_[static_cast<std::size_t>(i)]; }
  double operator[](int i) const noexcept { return data_[static_cast<std::size_t>(i)]; }

  std::span<double> values() noexcept { return {data_.data(), static_cast<std::size_t>(size_)}; }
  std::span<const double> values() const noexcept {
    return {data_.data(), static_cast<std::size_t>(size_)};
  }

  Tensor& operator+=(const Tensor& o);
  Tensor& operator-=(const Tensor& o);
  Tensor& operator*=(double s);

  void set_zero();

private:
  int dim_ = 0;
  int rank_ = 0;
  int size_ = 1;
  std::array<double, kMaxEntries> data_{};
};

Tensor operator+(Tensor a, const Tensor& b);
Tensor operator-(Tensor a, const Tensor& b);
Tensor operator*(double s, Tensor a);

/// Frobenius inner product.
double inner(const Tensor& a, const Tensor& b);
double norm(const Tensor& a);
double max_abs(const Tensor& a);

/// Applies the dim x dim block of M to index `slot` of t.
Tensor apply_to_slot(const Tensor& t, const Mat3& m, int slot);

/// Applies M to every index in [first, first + count).
Tensor apply_to_slots(const Tensor& t, const Mat3& m, int first, int count);

/// Contracts index `slot` of t with the vector v.
Tensor contract_slot(const Tensor& t, const Vec3& v, int slot);

/// Tangential projection Id - n (x) n (only the leading dim block is used).
Mat3 tangential_projection(const Vec3& n, int dim);

/// Slotwise tangential projection of tensors for a fixed unit normal.
class TensorProjector {
public:
  TensorProjector(const Vec3& normal, int dim);

  const Mat3& matrix() const noexcept { return p_; }
  const Vec3& normal() const noexcept { return n_; }

  /// Tangential part: P applied to every slot.
  Tensor tangential(const Tensor& t) const;
  /// Normal part as the tensorial complement Id - P.
  Tensor normal_part(const Tensor& t) const;

private:
  Vec3 n_;
  Mat3 p_;
  int dim_;
};

}  // namespace tsfem
