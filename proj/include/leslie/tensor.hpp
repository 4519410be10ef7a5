#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>

namespace leslie {

/// Vector of R^3.
struct Vec3 {
  std::array<double, 3> c{0.0, 0.0, 0.0};

  constexpr Vec3() = default;
  constexpr Vec3(double x, double y, double z) : c{x, y, z} {}

  constexpr double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
  constexpr double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

  constexpr Vec3& operator+=(const Vec3& o) {
    for (int i = 0; i < 3; ++i) (*this)[i] += o[i];
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    for (int i = 0; i < 3; ++i) (*this)[i] -= o[i];
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    for (auto& x : c) x *= s;
    return *this;
  }

  friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend constexpr Vec3 operator-(Vec3 a) { return a *= -1.0; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
  friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
constexpr double norm2(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(norm2(a)); }

/// 3x3 matrix, row-major. For gradients entry (i,j) is d f_i / d x_j.
struct Mat3 {
  std::array<double, 9> e{};

  static constexpr Mat3 identity() {
    Mat3 m;
    m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
    return m;
  }

  constexpr double& operator()(int i, int j) { return e[static_cast<std::size_t>(3 * i + j)]; }
  constexpr double operator()(int i, int j) const {
    return e[static_cast<std::size_t>(3 * i + j)];
  }

  constexpr Mat3& operator+=(const Mat3& o) {
    for (std::size_t k = 0; k < 9; ++k) e[k] += o.e[k];
    return *this;
  }
  constexpr Mat3& operator-=(const Mat3& o) {
    for (std::size_t k = 0; k < 9; ++k) e[k] -= o.e[k];
    return *this;
  }
  constexpr Mat3& operator*=(double s) {
    for (auto& x : e) x *= s;
    return *this;
  }

  friend constexpr Mat3 operator+(Mat3 a, const Mat3& b) { return a += b; }
  friend constexpr Mat3 operator-(Mat3 a, const Mat3& b) { return a -= b; }
  friend constexpr Mat3 operator*(double s, Mat3 a) { return a *= s; }
  friend constexpr Mat3 operator*(Mat3 a, double s) { return a *= s; }
  friend constexpr bool operator==(const Mat3&, const Mat3&) = default;
};

constexpr Mat3 transpose(const Mat3& m) {
  Mat3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = m(j, i);
  return t;
}

constexpr double trace(const Mat3& m) { return m(0, 0) + m(1, 1) + m(2, 2); }

constexpr Vec3 operator*(const Mat3& m, const Vec3& a) {
  Vec3 r;
  for (int i = 0; i < 3; ++i) r[i] = m(i, 0) * a[0] + m(i, 1) * a[1] + m(i, 2) * a[2];
  return r;
}

constexpr Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      r(i, k) = a(i, 0) * b(0, k) + a(i, 1) * b(1, k) + a(i, 2) * b(2, k);
  return r;
}

/// (M + M^T) / 2
constexpr Mat3 sym(const Mat3& m) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = 0.5 * (m(i, j) + m(j, i));
  return r;
}

/// (M - M^T) / 2
constexpr Mat3 skw(const Mat3& m) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = 0.5 * (m(i, j) - m(j, i));
  return r;
}

/// a ⊗ b, entry (i,j) = a_i b_j.
constexpr Mat3 outer(const Vec3& a, const Vec3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = a[i] * b[j];
  return r;
}

/// A : B = sum_ij A_ij B_ij
constexpr double frobenius(const Mat3& a, const Mat3& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < 9; ++k) s += a.e[k] * b.e[k];
  return s;
}
inline double frobenius_norm(const Mat3& a) { return std::sqrt(frobenius(a, a)); }

/// Constant fourth-order elasticity tensor with major symmetry L_ijkl = L_klij.
/// Minor symmetries are not assumed.
class ElasticTensor {
 public:
  /// All-zero tensor.
  ElasticTensor() = default;

  /// L_ijkl = k delta_ik delta_jl, so that L : A = k A and eta = k.
  static ElasticTensor isotropic(double k);

  /// Entries in row-major (i,j,k,l) order. Throws std::invalid_argument if the
  /// tensor violates major symmetry beyond `rel_tol` relative to its largest entry.
  static ElasticTensor from_entries(std::span<const double> entries, double rel_tol = 1e-12);

  double operator()(int i, int j, int k, int l) const {
    return entries_[static_cast<std::size_t>(((i * 3 + j) * 3 + k) * 3 + l)];
  }
  const std::array<double, 81>& entries() const { return entries_; }

  /// Largest |L_ijkl - L_klij| over all index pairs.
  double major_asymmetry() const;

  /// Largest eigenvalue of L viewed as a symmetric 9x9 operator on matrices
  /// (used for explicit time-step bounds).
  double operator_norm() const;

  bool is_isotropic() const { return isotropic_; }
  double isotropic_modulus() const { return modulus_; }

 private:
  std::array<double, 81> entries_{};
  bool isotropic_ = false;
  double modulus_ = 0.0;
};

/// (L : A)_ij = sum_kl L_ijkl A_kl
Mat3 lambda_apply(const ElasticTensor& L, const Mat3& a);

struct EllipticityEstimate {
  double eta = 0.0;       // min of (a⊗b):L:(a⊗b) over the sampled unit pairs
  bool violated = false;  // some sample was <= 0
  Vec3 worst_a;
  Vec3 worst_b;
};

/// Estimate the strong-ellipticity constant by sampling `n_samples` random unit
/// pairs (deterministic in `seed`) plus a fixed coarse sphere-grid pass.
/// Throws std::invalid_argument for n_samples < 1.
EllipticityEstimate ellipticity_check(const ElasticTensor& L, int n_samples, std::uint64_t seed);

}  // namespace leslie
