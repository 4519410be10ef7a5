#include <doctest.h>

#include <cmath>
#include <numbers>

#include "leslie/experiments.hpp"
#include "leslie/grid.hpp"

using namespace leslie;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

ScalarField random_scalar(const Grid& g, std::uint64_t seed) {
  Rng rng(seed);
  ScalarField f(g);
  for (auto& x : f.values) x = rng.normal();
  return f;
}

double derivative_error(int n) {
  const Grid g = Grid::cube(2, n);
  ScalarField f(g), exact(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec3 x = g.position(i);
    f[i] = std::sin(two_pi * x[0]) * std::cos(two_pi * x[1]);
    exact[i] = two_pi * std::cos(two_pi * x[0]) * std::cos(two_pi * x[1]);
  }
  return lp_norm(partial(f, 0) - exact, 2.0);
}

}  // namespace

TEST_SUITE("grid") {
  TEST_CASE("grid geometry") {
    const Grid g = Grid::cube(2, 8, 2.0);
    CHECK(g.size() == 64);
    CHECK(g.n[2] == 1);
    CHECK(g.h[0] == doctest::Approx(0.25));
    CHECK(g.measure() == doctest::Approx(4.0));
    CHECK(g.index(3, 5, 0) == 29);
    CHECK(g.coords(29) == std::array<int, 3>{3, 5, 0});
    CHECK_THROWS_AS(Grid::cube(2, 3).check(), std::invalid_argument);
    CHECK_THROWS_AS(Grid::cube(4, 8).check(), std::invalid_argument);
    CHECK_THROWS_AS(boundary_from_string("neumann"), std::invalid_argument);
    const Grid d = Grid::cube(2, 8, 1.0, Boundary::dirichlet);
    CHECK(d.on_boundary(d.index(0, 3, 0)));
    CHECK(d.on_boundary(d.index(7, 3, 0)));
    CHECK_FALSE(d.on_boundary(d.index(1, 3, 0)));
    CHECK_FALSE(g.on_boundary(0));
  }

  TEST_CASE("central difference is second order") {
    const double e16 = derivative_error(16), e32 = derivative_error(32), e64 = derivative_error(64);
    CHECK(std::log2(e16 / e32) > 1.95);
    CHECK(std::log2(e32 / e64) > 1.95);
  }

  TEST_CASE("dirichlet one-sided stencils stay second order") {
    auto err = [](int n) {
      const Grid g = Grid::cube(2, n, 1.0, Boundary::dirichlet);
      ScalarField f(g), exact(g);
      for (std::size_t i = 0; i < g.size(); ++i) {
        const Vec3 x = g.position(i);
        f[i] = std::exp(x[0]) * x[1];
        exact[i] = std::exp(x[0]) * x[1];
      }
      return lp_norm(partial(f, 0) - exact, std::numeric_limits<double>::infinity());
    };
    CHECK(std::log2(err(16) / err(32)) > 1.9);
  }

  TEST_CASE("periodic difference is skew-adjoint") {
    const Grid g = Grid::cube(2, 16);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const ScalarField f = random_scalar(g, seed), h = random_scalar(g, seed + 100);
      for (int a = 0; a < 2; ++a) {
        const double lhs = inner(partial(f, a), h);
        const double rhs = -inner(f, partial(h, a));
        CHECK(std::abs(lhs - rhs) <= 1e-13 * lp_norm(f, 2.0) * lp_norm(h, 2.0) * 16);
      }
    }
  }

  TEST_CASE("partial_transpose is the adjoint on dirichlet grids") {
    const Grid g = Grid::cube(2, 12, 1.0, Boundary::dirichlet);
    const ScalarField f = random_scalar(g, 7), h = random_scalar(g, 8);
    for (int a = 0; a < 2; ++a) {
      const auto pf = partial<double>(g, f.values, a);
      const auto th = partial_transpose(g, h.values, a);
      double lhs = 0.0, rhs = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        lhs += pf[i] * h[i];
        rhs += f[i] * th[i];
      }
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }

  TEST_CASE("integration by parts pairs") {
    const Grid g = Grid::cube(2, 16);
    Rng rng(3);
    const VectorField a = smooth_random_field(g, rng, 3, 1.0);
    const VectorField b = smooth_random_field(g, rng, 3, 1.0);
    const ScalarField phi = random_scalar(g, 4);
    CHECK(ibp_pair(a, phi).relative() < 1e-13);
    CHECK(ibp_pair(gradient_vec(a), b).relative() < 1e-13);
    CHECK(ibp_pair(a, b, ElasticTensor::isotropic(2.0)).relative() < 1e-13);
  }

  TEST_CASE("quadrature and norms") {
    const Grid g = Grid::cube(2, 8, 2.0);
    const ScalarField one(g, 1.0);
    CHECK(integrate(one) == doctest::Approx(4.0));
    const VectorField c(g, Vec3{3.0, 4.0, 0.0});
    CHECK(lp_norm(c, 2.0) == doctest::Approx(5.0 * 2.0));
    CHECK(lp_norm(c, 6.0) == doctest::Approx(5.0 * std::pow(4.0, 1.0 / 6.0)));
    CHECK(lp_norm(c, std::numeric_limits<double>::infinity()) == doctest::Approx(5.0));
    CHECK(w1p_seminorm(c, 6.0) == 0.0);
    CHECK(w1p_norm(c, 6.0) == doctest::Approx(lp_norm(c, 6.0)));
    // Gradients of constants are exactly zero, on both boundary types.
    const Grid d = Grid::cube(2, 8, 1.0, Boundary::dirichlet);
    const VectorField cd(d, Vec3{1.0, 2.0, 3.0});
    for (const auto& m : gradient_vec(cd).values) CHECK(frobenius(m, m) == 0.0);
  }

  TEST_CASE("pairwise_sum is exact on representable sums") {
    std::vector<double> x(1000, 0.125);
    CHECK(pairwise_sum(x) == 125.0);
    CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
  }

  TEST_CASE("laplacian_lambda reduces to k times the wide laplacian") {
    const Grid g = Grid::cube(2, 16);
    Rng rng(6);
    const VectorField d = smooth_random_field(g, rng, 3, 1.0);
    const VectorField a = laplacian_lambda(d, ElasticTensor::isotropic(3.0));
    const VectorField b = laplacian_vec(d);
    for (std::size_t i = 0; i < g.size(); ++i)
      for (int c = 0; c < 3; ++c) CHECK(a[i][c] == doctest::Approx(3.0 * b[i][c]));
  }

  TEST_CASE("3D grids work with the same operators") {
    const Grid g = Grid::cube(3, 8);
    Rng rng(2);
    const VectorField a = smooth_random_field(g, rng, 2, 1.0);
    const VectorField b = smooth_random_field(g, rng, 2, 1.0);
    CHECK(ibp_pair(a, b, ElasticTensor::isotropic(1.0)).relative() < 1e-13);
  }
}
