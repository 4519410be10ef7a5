#include "leslie/tensor.hpp"

#include <algorithm>
#include <stdexcept>

#include "leslie/random.hpp"

namespace leslie {

ElasticTensor ElasticTensor::isotropic(double k) {
  ElasticTensor t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      t.entries_[static_cast<std::size_t>(((i * 3 + j) * 3 + i) * 3 + j)] = k;
  t.isotropic_ = true;
  t.modulus_ = k;
  return t;
}

ElasticTensor ElasticTensor::from_entries(std::span<const double> entries, double rel_tol) {
  if (entries.size() != 81)
    throw std::invalid_argument("elastic tensor needs 81 entries, got " +
                                std::to_string(entries.size()));
  ElasticTensor t;
  double scale = 0.0;
  for (std::size_t k = 0; k < 81; ++k) {
    if (!std::isfinite(entries[k])) throw std::invalid_argument("elastic tensor entry is not finite");
    t.entries_[k] = entries[k];
    scale = std::max(scale, std::abs(entries[k]));
  }
  const double asym = t.major_asymmetry();
  if (asym > rel_tol * scale)
    throw std::invalid_argument("elastic tensor violates major symmetry L_ijkl = L_klij (max defect " +
                                std::to_string(asym) + ")");
  return t;
}

double ElasticTensor::major_asymmetry() const {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          worst = std::max(worst, std::abs((*this)(i, j, k, l) - (*this)(k, l, i, j)));
  return worst;
}

double ElasticTensor::operator_norm() const {
  // Cyclic Jacobi on the symmetric 9x9 matrix M[(ij),(kl)] = L_ijkl.
  std::array<std::array<double, 9>, 9> m{};
  for (std::size_t r = 0; r < 9; ++r)
    for (std::size_t c = 0; c < 9; ++c) m[r][c] = 0.5 * (entries_[r * 9 + c] + entries_[c * 9 + r]);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < 9; ++p)
      for (std::size_t q = p + 1; q < 9; ++q) off += m[p][q] * m[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < 9; ++p) {
      for (std::size_t q = p + 1; q < 9; ++q) {
        if (m[p][q] == 0.0) continue;
        const double theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < 9; ++k) {
          const double mkp = m[k][p];
          const double mkq = m[k][q];
          m[k][p] = c * mkp - s * mkq;
          m[k][q] = s * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < 9; ++k) {
          const double mpk = m[p][k];
          const double mqk = m[q][k];
          m[p][k] = c * mpk - s * mqk;
          m[q][k] = s * mpk + c * mqk;
        }
      }
    }
  }
  double rho = 0.0;
  for (std::size_t k = 0; k < 9; ++k) rho = std::max(rho, std::abs(m[k][k]));
  return rho;
}

Mat3 lambda_apply(const ElasticTensor& L, const Mat3& a) {
  Mat3 r;
  const auto& e = L.entries();
  for (std::size_t ij = 0; ij < 9; ++ij) {
    double s = 0.0;
    for (std::size_t kl = 0; kl < 9; ++kl) s += e[ij * 9 + kl] * a.e[kl];
    r.e[ij] = s;
  }
  return r;
}

namespace {

double quadratic_form(const ElasticTensor& L, const Vec3& a, const Vec3& b) {
  const Mat3 ab = outer(a, b);
  return frobenius(ab, lambda_apply(L, ab));
}

Vec3 unit_from_angles(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

Vec3 random_unit(Rng& rng) {
  for (;;) {
    Vec3 v{rng.normal(), rng.normal(), rng.normal()};
    const double n = norm(v);
    if (n > 1e-12) return (1.0 / n) * v;
  }
}

}  // namespace

EllipticityEstimate ellipticity_check(const ElasticTensor& L, int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("ellipticity_check needs n_samples >= 1");

  EllipticityEstimate est;
  est.eta = std::numeric_limits<double>::infinity();
  auto consider = [&](const Vec3& a, const Vec3& b) {
    const double val = quadratic_form(L, a, b);
    if (val < est.eta) {
      est.eta = val;
      est.worst_a = a;
      est.worst_b = b;
    }
  };

  // Coarse deterministic sphere grid, hemispheres suffice since the form is even in a and b.
  constexpr int kTheta = 6;
  constexpr int kPhi = 12;
  std::array<Vec3, kTheta * kPhi + 1> dirs;
  std::size_t nd = 0;
  dirs[nd++] = {0.0, 0.0, 1.0};
  for (int it = 1; it <= kTheta; ++it)
    for (int ip = 0; ip < kPhi; ++ip)
      dirs[nd++] = unit_from_angles(0.5 * std::numbers::pi * it / kTheta,
                                    std::numbers::pi * ip / kPhi);
  for (std::size_t i = 0; i < nd; ++i)
    for (std::size_t j = 0; j < nd; ++j) consider(dirs[i], dirs[j]);

  Rng rng(seed);
  for (int s = 0; s < n_samples; ++s) {
    const Vec3 a = random_unit(rng);
    const Vec3 b = random_unit(rng);
    consider(a, b);
  }
  est.violated = !(est.eta > 0.0);
  return est;
}

}  // namespace leslie
