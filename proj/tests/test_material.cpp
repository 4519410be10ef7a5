#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "leslie/material.hpp"
#include "leslie/random.hpp"

using namespace leslie;

namespace {

// Direct transcription of the five inequalities, used as an oracle.
std::vector<Condition> by_hand(const ParameterSet& p) {
  std::vector<Condition> out;
  if (!(p.mu1 > 0)) out.push_back(Condition::mu1_positive);
  if (!(p.mu4 > 0)) out.push_back(Condition::mu4_positive);
  if (!(p.gamma > 0)) out.push_back(Condition::gamma_positive);
  const double dv = (p.mu5 + p.mu6) - p.lambda * (p.mu2 + p.mu3);
  if (!(dv > 0)) out.push_back(Condition::directional_positive);
  const double cc = p.gamma * (p.mu2 + p.mu3) - p.lambda;
  if (!(4 * p.gamma * dv > cc * cc)) out.push_back(Condition::coupling_bound);
  return out;
}

}  // namespace

TEST_SUITE("material") {
  TEST_CASE("defaults are dissipative and satisfy Parodi") {
    const ParameterSet p = default_parameters();
    CHECK(validate(p).empty());
    CHECK(is_parodi(p));
    CHECK(p.cross_coefficient() == 0.0);
    CHECK(zeta(p) == 0.0);
  }

  TEST_CASE("single violations are named") {
    ParameterSet p;
    p.mu1 = -1.0;
    const auto bad = validate(p);
    REQUIRE(bad.size() == 1);
    CHECK(bad[0] == Condition::mu1_positive);
    CHECK(describe(bad[0]) == "μ₁ > 0");
    ParameterSet q;
    q.mu4 = 0.0;
    CHECK(validate(q) == std::vector<Condition>{Condition::mu4_positive});
  }

  TEST_CASE("validate agrees with the inequalities on random sets") {
    Rng rng(17);
    int valid = 0;
    for (int trial = 0; trial < 2000; ++trial) {
      ParameterSet p;
      p.lambda = rng.uniform(-2, 2);
      p.gamma = rng.uniform(-0.5, 2);
      p.mu1 = rng.uniform(-0.5, 2);
      p.mu2 = rng.uniform(-1, 1);
      p.mu3 = rng.uniform(-1, 1);
      p.mu4 = rng.uniform(-0.5, 2);
      p.mu5 = rng.uniform(-1, 2);
      p.mu6 = rng.uniform(-1, 2);
      const auto got = validate(p);
      CHECK(got == by_hand(p));
      if (got.empty()) {
        ++valid;
        const double z = zeta(p);
        CHECK(z >= 0.0);
        CHECK(z < 1.0);
        const double cc = p.cross_coefficient();
        CHECK(cc * cc <= z * z * 4 * p.gamma * p.directional_viscosity() * (1 + 1e-12));
      } else {
        CHECK_THROWS_AS(zeta(p), std::invalid_argument);
      }
    }
    CHECK(valid > 50);
  }

  TEST_CASE("zeta of a non-Parodi set") {
    ParameterSet p;
    p.lambda = 0.5;  // cc = 0.5, dv = 1.5
    CHECK_FALSE(is_parodi(p));
    CHECK(zeta(p) == doctest::Approx(0.5 / std::sqrt(6.0)));
  }

  TEST_CASE("forcing catalog") {
    const Grid g = Grid::cube(2, 8);
    Forcing f;
    CHECK(f.is_zero());
    for (const auto& v : f.evaluate(g, 0.3).values) CHECK(norm(v) == 0.0);
    f.kind = Forcing::Kind::constant;
    f.amplitude = 2.0;
    for (const auto& v : f.evaluate(g, 0.3).values) CHECK(v == Vec3{2.0, 0.0, 0.0});
    f.kind = Forcing::Kind::sinusoidal;
    f.frequency = 1.0;
    const auto s = f.evaluate(g, 0.25);  // cos(pi/2) = 0
    for (const auto& v : s.values) CHECK(std::abs(v[0]) < 1e-15);
    CHECK(forcing_kind_from_string(to_string(Forcing::Kind::sinusoidal)) == Forcing::Kind::sinusoidal);
    CHECK_THROWS_AS(forcing_kind_from_string("gravity"), std::invalid_argument);
    const Grid d = Grid::cube(2, 8, 1.0, Boundary::dirichlet);
    f.kind = Forcing::Kind::constant;
    const auto c = f.evaluate(d, 0.0);
    CHECK(norm(c[d.index(0, 4, 0)]) == 0.0);
    CHECK(norm(c[d.index(3, 4, 0)]) == 2.0);
  }
}
