#include "leslie/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "leslie/parallel.hpp"

namespace leslie {

int worker_count() {
  static const int count = [] {
    int n = 0;
    if (const char* env = std::getenv("LESLIE_SIM_THREADS")) n = std::atoi(env);
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    return std::max(n, 1);
  }();
  return count;
}

std::string to_string(Boundary bc) { return bc == Boundary::periodic ? "periodic" : "dirichlet"; }

Boundary boundary_from_string(const std::string& s) {
  if (s == "periodic") return Boundary::periodic;
  if (s == "dirichlet") return Boundary::dirichlet;
  throw std::invalid_argument("unknown boundary condition '" + s + "' (expected periodic|dirichlet)");
}

Grid Grid::cube(int dim, int cells, double length, Boundary bc) {
  return box(dim, {cells, cells, cells}, {length, length, length}, bc);
}

Grid Grid::box(int dim, std::array<int, 3> cells, std::array<double, 3> lengths, Boundary bc) {
  Grid g;
  g.dim = dim;
  g.bc = bc;
  for (int a = 0; a < 3; ++a) {
    const auto s = static_cast<std::size_t>(a);
    if (a < dim) {
      g.n[s] = cells[s];
      g.h[s] = cells[s] > 0 ? lengths[s] / cells[s] : 0.0;
    } else {
      g.n[s] = 1;
      g.h[s] = 1.0;
    }
  }
  g.check();
  return g;
}

void Grid::check() const {
  if (dim != 2 && dim != 3) throw std::invalid_argument("grid dim must be 2 or 3");
  for (int a = 0; a < 3; ++a) {
    const auto s = static_cast<std::size_t>(a);
    if (active(a)) {
      if (n[s] < 4) throw std::invalid_argument("grid needs at least 4 cells per axis");
      if (!(h[s] > 0.0) || !std::isfinite(h[s])) throw std::invalid_argument("grid spacing must be positive");
    } else if (n[s] != 1) {
      throw std::invalid_argument("2D grid must have a single layer along z");
    }
  }
}

std::array<int, 3> Grid::coords(std::size_t idx) const {
  const auto n2 = static_cast<std::size_t>(n[2]);
  const auto n1 = static_cast<std::size_t>(n[1]);
  const int k = static_cast<int>(idx % n2);
  idx /= n2;
  const int j = static_cast<int>(idx % n1);
  const int i = static_cast<int>(idx / n1);
  return {i, j, k};
}

std::size_t Grid::stride(int axis) const {
  switch (axis) {
    case 0: return static_cast<std::size_t>(n[1]) * static_cast<std::size_t>(n[2]);
    case 1: return static_cast<std::size_t>(n[2]);
    default: return 1;
  }
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim; ++a) v *= h[static_cast<std::size_t>(a)];
  return v;
}

Vec3 Grid::position(std::size_t idx) const {
  const auto c = coords(idx);
  Vec3 x;
  for (int a = 0; a < dim; ++a) {
    const auto s = static_cast<std::size_t>(a);
    x[a] = (c[s] + 0.5) * h[s];
  }
  return x;
}

bool Grid::on_boundary(std::size_t idx) const {
  if (bc == Boundary::periodic) return false;
  const auto c = coords(idx);
  for (int a = 0; a < dim; ++a) {
    const auto s = static_cast<std::size_t>(a);
    if (c[s] == 0 || c[s] == n[s] - 1) return true;
  }
  return false;
}

namespace {

template <class T>
bool finite_value(const T& v);
template <>
bool finite_value(const double& v) { return std::isfinite(v); }
template <>
bool finite_value(const Vec3& v) {
  return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]);
}
template <>
bool finite_value(const Mat3& m) {
  return std::all_of(m.e.begin(), m.e.end(), [](double x) { return std::isfinite(x); });
}

template <class T>
bool finite_field(const Field<T>& f) {
  return std::all_of(f.values.begin(), f.values.end(), [](const T& v) { return finite_value(v); });
}

void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw std::invalid_argument("fields live on different grids");
}

// Stencil of the derivative along one axis at line position i (0..n-1).
struct LineStencil {
  int offset[3];
  double weight[3];
  int count;
};

LineStencil line_stencil(const Grid& g, int axis, int i) {
  const auto s = static_cast<std::size_t>(axis);
  const int n = g.n[s];
  const double inv2h = 0.5 / g.h[s];
  if (g.bc == Boundary::periodic) {
    return {{(i + 1) % n, (i - 1 + n) % n, 0}, {inv2h, -inv2h, 0.0}, 2};
  }
  if (i == 0) return {{0, 1, 2}, {-3.0 * inv2h, 4.0 * inv2h, -inv2h}, 3};
  if (i == n - 1) return {{n - 1, n - 2, n - 3}, {3.0 * inv2h, -4.0 * inv2h, inv2h}, 3};
  return {{i + 1, i - 1, 0}, {inv2h, -inv2h, 0.0}, 2};
}

}  // namespace

bool all_finite(const ScalarField& f) { return finite_field(f); }
bool all_finite(const VectorField& f) { return finite_field(f); }
bool all_finite(const TensorField& f) { return finite_field(f); }

template <class T>
std::vector<T> partial(const Grid& g, std::span<const T> f, int axis) {
  std::vector<T> out(g.size(), T{});
  if (!g.active(axis)) return out;
  const auto s = static_cast<std::size_t>(axis);
  const std::size_t stride = g.stride(axis);
  const int n = g.n[s];
  // Precompute the per-line stencils, they only depend on the line position.
  std::vector<LineStencil> st(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) st[static_cast<std::size_t>(i)] = line_stencil(g, axis, i);
  parallel_for(g.size(), [&](std::size_t idx) {
    const int pos = static_cast<int>((idx / stride) % static_cast<std::size_t>(n));
    const std::size_t base = idx - static_cast<std::size_t>(pos) * stride;
    const LineStencil& ls = st[static_cast<std::size_t>(pos)];
    T acc = ls.weight[0] * f[base + static_cast<std::size_t>(ls.offset[0]) * stride];
    for (int m = 1; m < ls.count; ++m)
      acc += ls.weight[m] * f[base + static_cast<std::size_t>(ls.offset[m]) * stride];
    out[idx] = acc;
  });
  return out;
}

template std::vector<double> partial(const Grid&, std::span<const double>, int);
template std::vector<Vec3> partial(const Grid&, std::span<const Vec3>, int);
template std::vector<Mat3> partial(const Grid&, std::span<const Mat3>, int);

std::vector<double> partial_transpose(const Grid& g, std::span<const double> f, int axis) {
  std::vector<double> out(g.size(), 0.0);
  if (!g.active(axis)) return out;
  const auto s = static_cast<std::size_t>(axis);
  const std::size_t stride = g.stride(axis);
  const int n = g.n[s];
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    const int pos = static_cast<int>((idx / stride) % static_cast<std::size_t>(n));
    const std::size_t base = idx - static_cast<std::size_t>(pos) * stride;
    const LineStencil ls = line_stencil(g, axis, pos);
    for (int m = 0; m < ls.count; ++m)
      out[base + static_cast<std::size_t>(ls.offset[m]) * stride] += ls.weight[m] * f[idx];
  }
  return out;
}

ScalarField partial(const ScalarField& f, int axis) {
  return {f.grid, partial<double>(f.grid, f.values, axis)};
}

VectorField gradient_scalar(const ScalarField& f) {
  VectorField out(f.grid);
  for (int a = 0; a < f.grid.dim; ++a) {
    const auto d = partial<double>(f.grid, f.values, a);
    for (std::size_t i = 0; i < d.size(); ++i) out[i][a] = d[i];
  }
  return out;
}

TensorField gradient_vec(const VectorField& f) {
  TensorField out(f.grid);
  for (int a = 0; a < f.grid.dim; ++a) {
    const auto d = partial<Vec3>(f.grid, f.values, a);
    for (std::size_t i = 0; i < d.size(); ++i)
      for (int c = 0; c < 3; ++c) out[i](c, a) = d[i][c];
  }
  return out;
}

ScalarField divergence_vec(const VectorField& f) {
  ScalarField out(f.grid);
  std::vector<double> comp(f.size());
  for (int a = 0; a < f.grid.dim; ++a) {
    for (std::size_t i = 0; i < f.size(); ++i) comp[i] = f[i][a];
    const auto d = partial<double>(f.grid, comp, a);
    for (std::size_t i = 0; i < d.size(); ++i) out[i] += d[i];
  }
  return out;
}

VectorField divergence_tensor(const TensorField& a) {
  VectorField out(a.grid);
  std::vector<Vec3> column(a.size());
  for (int j = 0; j < a.grid.dim; ++j) {
    for (std::size_t i = 0; i < a.size(); ++i) column[i] = {a[i](0, j), a[i](1, j), a[i](2, j)};
    const auto d = partial<Vec3>(a.grid, column, j);
    for (std::size_t i = 0; i < d.size(); ++i) out[i] += d[i];
  }
  return out;
}

VectorField laplacian_lambda(const VectorField& d, const ElasticTensor& L) {
  TensorField flux = gradient_vec(d);
  if (L.is_isotropic()) {
    flux *= L.isotropic_modulus();
  } else {
    parallel_for(flux.size(), [&](std::size_t i) { flux[i] = lambda_apply(L, flux[i]); });
  }
  return divergence_tensor(flux);
}

VectorField laplacian_vec(const VectorField& f) {
  VectorField out(f.grid);
  for (int a = 0; a < f.grid.dim; ++a) {
    const auto d = partial<Vec3>(f.grid, f.values, a);
    const auto dd = partial<Vec3>(f.grid, d, a);
    for (std::size_t i = 0; i < dd.size(); ++i) out[i] += dd[i];
  }
  return out;
}

ScalarField laplacian_scalar(const ScalarField& f) {
  ScalarField out(f.grid);
  for (int a = 0; a < f.grid.dim; ++a) {
    const auto d = partial<double>(f.grid, f.values, a);
    const auto dd = partial<double>(f.grid, d, a);
    for (std::size_t i = 0; i < dd.size(); ++i) out[i] += dd[i];
  }
  return out;
}

VectorField advect(const VectorField& v, const VectorField& f) {
  require_same_grid(v.grid, f.grid);
  VectorField out(f.grid);
  for (int a = 0; a < f.grid.dim; ++a) {
    const auto d = partial<Vec3>(f.grid, f.values, a);
    for (std::size_t i = 0; i < d.size(); ++i) out[i] += v[i][a] * d[i];
  }
  return out;
}

double pairwise_sum(std::span<const double> x) {
  constexpr std::size_t kBlock = 16;
  if (x.size() <= kBlock) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  const std::size_t half = x.size() / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

double integrate(const ScalarField& f) { return pairwise_sum(f.values) * f.grid.cell_volume(); }

namespace {

template <class T, class Fn>
double integrate_pointwise(const Field<T>& a, Fn&& fn) {
  std::vector<double> w(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) w[i] = fn(i);
  return pairwise_sum(w) * a.grid.cell_volume();
}

double magnitude(double x) { return std::abs(x); }
double magnitude(const Vec3& x) { return norm(x); }
double magnitude(const Mat3& x) { return frobenius_norm(x); }

template <class T>
double lp_norm_impl(const Field<T>& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm needs p >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& v : f.values) m = std::max(m, magnitude(v));
    return m;
  }
  if (p == 2.0) {
    return std::sqrt(integrate_pointwise(f, [&](std::size_t i) {
      const double m = magnitude(f[i]);
      return m * m;
    }));
  }
  return std::pow(integrate_pointwise(f, [&](std::size_t i) { return std::pow(magnitude(f[i]), p); }),
                  1.0 / p);
}

}  // namespace

double inner(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid, b.grid);
  return integrate_pointwise(a, [&](std::size_t i) { return a[i] * b[i]; });
}

double inner(const VectorField& a, const VectorField& b) {
  require_same_grid(a.grid, b.grid);
  return integrate_pointwise(a, [&](std::size_t i) { return dot(a[i], b[i]); });
}

double inner(const TensorField& a, const TensorField& b) {
  require_same_grid(a.grid, b.grid);
  return integrate_pointwise(a, [&](std::size_t i) { return frobenius(a[i], b[i]); });
}

double lp_norm(const ScalarField& f, double p) { return lp_norm_impl(f, p); }
double lp_norm(const VectorField& f, double p) { return lp_norm_impl(f, p); }
double lp_norm(const TensorField& f, double p) { return lp_norm_impl(f, p); }

double w1p_seminorm(const VectorField& f, double p) { return lp_norm(gradient_vec(f), p); }

double w1p_norm(const VectorField& f, double p) {
  const double a = lp_norm(f, p);
  const double b = w1p_seminorm(f, p);
  if (std::isinf(p)) return std::max(a, b);
  return std::pow(std::pow(a, p) + std::pow(b, p), 1.0 / p);
}

IbpResidual ibp_pair(const TensorField& a, const VectorField& phi) {
  const TensorField gphi = gradient_vec(phi);
  const double lhs = inner(divergence_tensor(a), phi);
  const double rhs = inner(a, gphi);
  return {std::abs(lhs + rhs), lp_norm(a, 2.0) * lp_norm(gphi, 2.0)};
}

IbpResidual ibp_pair(const VectorField& f, const ScalarField& phi) {
  const VectorField gphi = gradient_scalar(phi);
  const double lhs = inner(divergence_vec(f), phi);
  const double rhs = inner(f, gphi);
  return {std::abs(lhs + rhs), lp_norm(f, 2.0) * lp_norm(gphi, 2.0)};
}

IbpResidual ibp_pair(const VectorField& a, const VectorField& b, const ElasticTensor& L) {
  TensorField flux = gradient_vec(a);
  for (auto& m : flux.values) m = lambda_apply(L, m);
  const TensorField gb = gradient_vec(b);
  const double lhs = inner(divergence_tensor(flux), b);
  const double rhs = inner(flux, gb);
  return {std::abs(lhs + rhs), lp_norm(flux, 2.0) * lp_norm(gb, 2.0)};
}

}  // namespace leslie
