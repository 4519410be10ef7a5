#include <doctest.h>

#include <cmath>

#include "leslie/experiments.hpp"

using namespace leslie;

namespace {

RunConfig small_config(double t_end) {
  RunConfig c;
  c.grid = Grid::cube(2, 16);
  c.initial.kind = InitialSpec::Kind::smooth_random;
  c.initial.seed = 3;
  c.initial.amplitude = 0.5;
  c.initial.velocity_amplitude = 0.5;
  c.stepper.dt = stability_bound(c.grid, c.material);
  c.stepper.t_end = t_end;
  return c;
}

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("initial data catalog") {
    const Grid g = Grid::cube(2, 16);
    InitialSpec spec;
    spec.kind = InitialSpec::Kind::constant;
    spec.director = {0.0, 0.0, 1.0};
    const State c = initial_state(g, spec);
    for (const auto& d : c.d.values) CHECK(d == Vec3{0.0, 0.0, 1.0});
    CHECK(lp_norm(c.v, 2.0) == 0.0);

    spec.kind = InitialSpec::Kind::smooth_random;
    spec.velocity_amplitude = 0.2;
    const State r = initial_state(g, spec);
    for (const auto& d : r.d.values) CHECK(norm(d) == doctest::Approx(1.0));
    CHECK(lp_norm(divergence_vec(r.v), 2.0) < 1e-10);
    CHECK(initial_state(g, spec) == r);
    spec.seed = 2;
    CHECK_FALSE(initial_state(g, spec) == r);

    spec.kind = InitialSpec::Kind::perturbed;
    const State p = initial_state(g, spec);
    for (const auto& d : p.d.values) CHECK(norm(d) == doctest::Approx(1.0));
  }

  TEST_CASE("random fields respect their constraints") {
    const Grid g = Grid::cube(2, 16);
    Rng rng(5);
    const VectorField m = mean_zero_random_field(g, rng, 3, 2.0);
    Vec3 mean;
    for (const auto& x : m.values) mean += x;
    CHECK(norm(mean) < 1e-10);
    double mx = 0.0;
    for (const auto& x : m.values) mx = std::max(mx, norm(x));
    CHECK(mx == doctest::Approx(2.0));
    const Grid d = Grid::cube(2, 16, 1.0, Boundary::dirichlet);
    const VectorField w = smooth_random_field(d, rng, 3, 1.0);
    for (std::size_t i = 0; i < d.size(); ++i)
      if (d.on_boundary(i)) CHECK(norm(w[i]) == 0.0);
  }

  TEST_CASE("stationary data give an identically zero energy residual") {
    RunConfig c = small_config(0.01);
    c.initial.kind = InitialSpec::Kind::constant;
    c.initial.velocity_amplitude = 0.0;
    const EnergyReport r = energy_monitor(c);
    for (double x : r.residual) CHECK(x == 0.0);
    CHECK(r.e0 == 0.0);
    CHECK(r.pass());
  }

  TEST_CASE("energy monitor passes a dissipative run and catches a too-large dt") {
    RunConfig c = small_config(0.02);
    const EnergyReport ok = energy_monitor(c);
    CHECK(ok.pass());
    CHECK(ok.parodi);
    CHECK(ok.cross_zero);
    c.stepper.dt *= 12.0;
    c.stepper.t_end = 0.05;
    const EnergyReport bad = energy_monitor(c);
    CHECK_FALSE(bad.pass());
  }

  TEST_CASE("output cadence thins the trace but not the audit") {
    RunConfig c = small_config(0.02);
    const EnergyReport every = energy_monitor(c);
    c.stepper.output_every = 7;
    const EnergyReport thin = energy_monitor(c);
    CHECK(thin.max_residual == every.max_residual);
    CHECK(thin.max_step_increase == every.max_step_increase);
    CHECK(thin.trace.size() == thin.residual.size());
    CHECK(thin.trace.size() < every.trace.size());
    CHECK(thin.trace.back().t == every.trace.back().t);
    CHECK(thin.residual.back() == every.residual.back());
  }

  TEST_CASE("comparison with zero perturbation is exact") {
    const RunConfig c = small_config(0.01);
    const ComparisonReport r = weak_strong_experiment(c, {7, 0.0});
    for (const auto& s : r.trace) {
      CHECK(s.E == 0.0);
      CHECK(s.W == 0.0);
    }
    CHECK(r.bound_satisfied);
    CHECK(r.minimal_c == 0.0);
  }

  TEST_CASE("relative energy scales quadratically with the perturbation") {
    const RunConfig c = small_config(0.01);
    const ComparisonReport a = weak_strong_experiment(c, {7, 1e-3});
    const ComparisonReport b = weak_strong_experiment(c, {7, 5e-4});
    CHECK(a.max_E / b.max_E == doctest::Approx(4.0).epsilon(0.05));
    CHECK(a.bound_satisfied);
    CHECK(a.minimal_c >= 0.0);
    CHECK(std::isfinite(a.minimal_c));
    for (const auto& s : a.trace) CHECK(s.K > 0.0);
  }

  TEST_CASE("comparison reports are deterministic") {
    const RunConfig c = small_config(0.005);
    const ComparisonReport a = weak_strong_experiment(c, {11, 1e-3});
    const ComparisonReport b = weak_strong_experiment(c, {11, 1e-3});
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t k = 0; k < a.trace.size(); ++k) {
      CHECK(a.trace[k].E == b.trace[k].E);
      CHECK(a.trace[k].K == b.trace[k].K);
    }
  }

  TEST_CASE("absorption holds along a non-Parodi comparison") {
    RunConfig c = small_config(0.01);
    c.material.params.lambda = 0.5;
    const ComparisonReport r = weak_strong_experiment(c, {7, 1e-2});
    CHECK(r.zeta > 0.0);
    CHECK(r.min_absorption_slack >= -1e-12);
    bool some_cross = false;
    for (const auto& s : r.trace) some_cross = some_cross || s.cross > 0.0;
    CHECK(some_cross);
  }

  TEST_CASE("integration-by-parts suite") {
    const IbpReport r = ibp_suite({16}, {1, 2});
    CHECK(r.rows.size() == 2);
    CHECK(r.pass());
    const IbpReport c = ibp_suite({16}, {1}, 2, true);
    CHECK(c.worst() == 0.0);
  }

  TEST_CASE("convergence study with a stationary solution is exact") {
    ConvergenceOptions o;
    o.stationary = true;
    o.sizes = {8, 16};
    o.t_end = 0.01;
    const ConvergenceReport r = convergence_study(ConvergenceMode::space, o);
    for (const auto& row : r.rows) CHECK(row.error == 0.0);
    CHECK(r.pass());
  }

  TEST_CASE("time refinement is first order for the semi-implicit scheme too") {
    ConvergenceOptions o;
    o.scheme = Scheme::semi_implicit;
    o.time_n = 8;
    o.t_end = 0.05;
    o.dts = {4e-3, 2e-3, 1e-3, 5e-4};
    const ConvergenceReport r = convergence_study(ConvergenceMode::time, o);
    CHECK(r.rows.size() == 3);
    CHECK(r.min_order() > 0.9);
  }
}
