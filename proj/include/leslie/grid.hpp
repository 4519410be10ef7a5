#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "leslie/tensor.hpp"

namespace leslie {

enum class Boundary { periodic, dirichlet };

std::string to_string(Boundary bc);
Boundary boundary_from_string(const std::string& s);

/// Uniform Cartesian grid with all unknowns at cell centres. A 2D grid carries
/// n[2] == 1 and every derivative along the absent axis is zero. In dirichlet
/// mode the outermost layer of nodes holds the boundary data.
struct Grid {
  int dim = 2;
  std::array<int, 3> n{1, 1, 1};
  std::array<double, 3> h{1.0, 1.0, 1.0};
  Boundary bc = Boundary::periodic;

  /// Cubic (square) domain of side `length` with `cells` nodes per axis.
  static Grid cube(int dim, int cells, double length = 1.0, Boundary bc = Boundary::periodic);
  static Grid box(int dim, std::array<int, 3> cells, std::array<double, 3> lengths, Boundary bc);

  /// Throws std::invalid_argument on dim not in {2,3}, fewer than 4 cells on an
  /// active axis or non-positive spacing.
  void check() const;

  std::size_t size() const {
    return static_cast<std::size_t>(n[0]) * static_cast<std::size_t>(n[1]) *
           static_cast<std::size_t>(n[2]);
  }
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * static_cast<std::size_t>(n[1]) +
            static_cast<std::size_t>(j)) * static_cast<std::size_t>(n[2]) +
           static_cast<std::size_t>(k);
  }
  std::array<int, 3> coords(std::size_t idx) const;
  std::size_t stride(int axis) const;

  bool active(int axis) const { return axis < dim; }
  double length(int axis) const { return active(axis) ? n[static_cast<std::size_t>(axis)] * h[static_cast<std::size_t>(axis)] : 0.0; }
  double cell_volume() const;
  double measure() const { return cell_volume() * static_cast<double>(size()); }
  /// Cell-centre coordinates; the absent axis of a 2D grid sits at 0.
  Vec3 position(std::size_t idx) const;
  /// True for the outermost node layer of a dirichlet grid; always false when periodic.
  bool on_boundary(std::size_t idx) const;

  friend bool operator==(const Grid&, const Grid&) = default;
};

/// Grid-sampled field with one value per node.
template <class T>
struct Field {
  Grid grid;
  std::vector<T> values;

  Field() = default;
  explicit Field(const Grid& g, const T& fill = T{}) : grid(g), values(g.size(), fill) {}
  Field(const Grid& g, std::vector<T> v) : grid(g), values(std::move(v)) {}

  std::size_t size() const { return values.size(); }
  T& operator[](std::size_t i) { return values[i]; }
  const T& operator[](std::size_t i) const { return values[i]; }

  Field& operator+=(const Field& o) {
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
    return *this;
  }
  Field& operator-=(const Field& o) {
    for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
    return *this;
  }
  Field& operator*=(double s) {
    for (auto& v : values) v *= s;
    return *this;
  }
  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(double s, Field a) { return a *= s; }

  friend bool operator==(const Field&, const Field&) = default;
};

using ScalarField = Field<double>;
using VectorField = Field<Vec3>;
using TensorField = Field<Mat3>;

/// a += s * b
template <class T>
void axpy(Field<T>& a, double s, const Field<T>& b) {
  for (std::size_t i = 0; i < a.values.size(); ++i) a.values[i] += s * b.values[i];
}

bool all_finite(const ScalarField& f);
bool all_finite(const VectorField& f);
bool all_finite(const TensorField& f);

// ---------------------------------------------------------------------------
// Stencils. Periodic: central differences with wrap-around. Dirichlet: central
// in the interior, one-sided second order on the outermost layers.

/// One-dimensional derivative along `axis` applied to a node array.
template <class T>
std::vector<T> partial(const Grid& g, std::span<const T> f, int axis);

/// Adjoint (matrix transpose) of `partial` for scalar node arrays.
std::vector<double> partial_transpose(const Grid& g, std::span<const double> f, int axis);

ScalarField partial(const ScalarField& f, int axis);
VectorField gradient_scalar(const ScalarField& f);
/// (grad f)_ij = d f_i / d x_j
TensorField gradient_vec(const VectorField& f);
ScalarField divergence_vec(const VectorField& f);
/// (div A)_i = sum_j d A_ij / d x_j
VectorField divergence_tensor(const TensorField& a);
/// div (L : grad d)
VectorField laplacian_lambda(const VectorField& d, const ElasticTensor& L);
/// Componentwise sum_a D_a D_a (the composition of the first-derivative stencils).
VectorField laplacian_vec(const VectorField& f);
ScalarField laplacian_scalar(const ScalarField& f);
/// (v . grad) f = (grad f) v
VectorField advect(const VectorField& v, const VectorField& f);

// ---------------------------------------------------------------------------
// Quadrature and norms. Sums are pairwise so results do not depend on loop
// partitioning.

double pairwise_sum(std::span<const double> x);

double integrate(const ScalarField& f);
double inner(const ScalarField& a, const ScalarField& b);
double inner(const VectorField& a, const VectorField& b);
double inner(const TensorField& a, const TensorField& b);

/// (integral |f|^p)^(1/p); p = infinity gives the max norm. Vector and tensor
/// fields use the pointwise Euclidean / Frobenius magnitude.
double lp_norm(const ScalarField& f, double p);
double lp_norm(const VectorField& f, double p);
double lp_norm(const TensorField& f, double p);
/// lp_norm of |grad f|_F
double w1p_seminorm(const VectorField& f, double p);
/// (||f||_p^p + ||grad f||_p^p)^(1/p)
double w1p_norm(const VectorField& f, double p);

// ---------------------------------------------------------------------------
// Discrete integration by parts.

struct IbpResidual {
  double residual = 0.0;  // absolute defect of the identity
  double scale = 0.0;     // Cauchy-Schwarz bound of the terms involved
  double relative() const { return scale > 0.0 ? residual / scale : residual; }
};

/// |(div A, phi) + (A : grad phi)|, scale ||A|| ||grad phi||
IbpResidual ibp_pair(const TensorField& a, const VectorField& phi);
/// |(div f, phi) + (f, grad phi)|, scale ||f|| ||grad phi||
IbpResidual ibp_pair(const VectorField& f, const ScalarField& phi);
/// |(Delta_L a, b) + (grad a : L : grad b)|, scale ||L:grad a|| ||grad b||
IbpResidual ibp_pair(const VectorField& a, const VectorField& b, const ElasticTensor& L);

}  // namespace leslie
