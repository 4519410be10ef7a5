// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "leslie/config.hpp"
#include "leslie/experiments.hpp"
#include "leslie/io.hpp"

using namespace leslie;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Shared by criteria 4 to 6: Parodi defaults, smooth random data, n = 32, t_end = 0.5.
RunConfig reference_config() {
  RunConfig c;
  c.grid = Grid::cube(2, 32);
  c.material = Material{};
  c.initial.kind = InitialSpec::Kind::smooth_random;
  c.initial.seed = 3;
  c.initial.amplitude = 0.5;
  c.initial.velocity_amplitude = 0.5;
  c.initial.modes = 3;
  c.stepper.dt = stability_bound(c.grid, c.material);
  c.stepper.t_end = 0.5;
  c.stepper.output_every = 1;
  c.energy_tol = 1e-6;
  return c;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

// 1. Parameter gate against a hand-checked table.
Outcome parameter_gate() {
  struct Case {
    ParameterSet p;
    std::vector<Condition> expected;
  };
  auto make = [](double lambda, double gamma, double mu1, double mu2, double mu3, double mu4, double mu5,
                 double mu6) {
    ParameterSet p;
    p.lambda = lambda;
    p.gamma = gamma;
    p.mu1 = mu1;
    p.mu2 = mu2;
    p.mu3 = mu3;
    p.mu4 = mu4;
    p.mu5 = mu5;
    p.mu6 = mu6;
    return p;
  };
  using C = Condition;
  // dv = (mu5+mu6) - lambda(mu2+mu3), cc = gamma(mu2+mu3) - lambda; coupling needs 4 gamma dv > cc^2.
  // gamma <= 0 or dv <= 0 forces the coupling bound to fail as well.
  const std::vector<Case> cases = {
      {make(1, 1, 1, 0.5, 0.5, 1, 1, 1), {}},                 // dv 1, cc 0
      {make(0.5, 1, 1, 0.5, 0.5, 1, 1, 1), {}},               // dv 1.5, cc 0.5
      {make(0, 2, 0.1, 0, 0, 3, 0.5, 0.5), {}},               // dv 1, cc 0
      {make(-1, 1, 1, 1, 0, 1, 0, 0.5), {}},                  // dv 1.5, cc 2: 6 > 4
      {make(2, 0.5, 3, 1, 0.5, 0.2, 4, 0.1), {}},             // dv 1.1, cc -1.25: 2.2 > 1.5625
      {make(1, 3, 0.5, 0.2, 0.2, 0.5, 0.5, 0.5), {}},         // dv 0.6, cc 0.2
      {make(1, 1, -1, 0.5, 0.5, 1, 1, 1), {C::mu1_positive}},
      {make(1, 1, 0, 0.5, 0.5, 1, 1, 1), {C::mu1_positive}},  // strict inequality
      {make(1, 1, 1, 0.5, 0.5, 0, 1, 1), {C::mu4_positive}},
      {make(1, -1, 1, 0, 0, 1, 1, 1), {C::gamma_positive, C::coupling_bound}},
      {make(1, 1, 1, 1, 1, 1, 1, 1), {C::directional_positive, C::coupling_bound}},
      {make(-3, 1, 1, 0.5, 0.5, 1, 0, 0), {C::coupling_bound}},  // dv 3, cc 4: 12 < 16
  };

  int valid = 0, invalid = 0, agree = 0;
  for (const auto& c : cases) {
    if (validate(c.p) == c.expected) ++agree;
    (c.expected.empty() ? valid : invalid)++;
  }
  std::ostringstream os;
  os << agree << "/" << cases.size() << " rows agree (" << valid << " valid, " << invalid << " invalid)";
  return {agree == static_cast<int>(cases.size()) && valid == 6 && invalid == 6, os.str()};
}

// 2. (q, psi) against central differences of F.
Outcome variational_oracle() {
  const Grid g = Grid::cube(2, 32);
  Rng rng(2024);
  const ElasticTensor L = ElasticTensor::isotropic(1.0);
  const double eps = 0.1;
  const VectorField d = smooth_random_field(g, rng, 3, 1.0);
  const VectorField q = variational_derivative(d, L, eps);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const VectorField psi = smooth_random_field(g, rng, 4, 1.0);
    const double h = 1e-5;
    const double fd = (free_energy(d + h * psi, L, eps).total() - free_energy(d - h * psi, L, eps).total()) / (2 * h);
    const double an = inner(q, psi);
    worst = std::max(worst, std::abs(an - fd) / std::max(std::abs(fd), 1e-300));
  }
  return {worst <= 1e-5, "max relative error " + sci(worst) + " over 20 directions (tol 1e-5)"};
}

// 3. Discrete integration by parts.
Outcome ibp() {
  const IbpReport r = ibp_suite({16, 32}, {1, 2, 3, 4, 5});
  return {r.pass() && r.rows.size() == 10, "worst relative residual " + sci(r.worst()) + " over 10 runs (tol 1e-12)"};
}

// 4. Energy law.
Outcome energy_law() {
  const RunConfig c = reference_config();
  const EnergyReport r = energy_monitor(c, 1e-10);
  std::ostringstream os;
  os << "dt " << sci(c.stepper.dt) << ", " << r.trace.size() - 1 << " steps, max residual/E0 "
     << sci(r.max_residual / r.e0) << " (tol 1e-6), max per-step increase/E0 " << sci(r.max_step_increase / r.e0)
     << " (tol 1e-10), cross " << (r.cross_zero ? "identically 0" : "NONZERO");
  if (!r.failure.empty()) os << ", " << r.failure;
  return {r.pass() && r.parodi && r.cross_zero, os.str()};
}

// 5. Weak-strong stability.
Outcome weak_strong() {
  RunConfig c = reference_config();
  const ComparisonReport zero = weak_strong_experiment(c, {7, 0.0});
  const double hard = 1e-12 * (1.0 + zero.initial_free_energy);
  const bool a = zero.max_E <= hard;

  std::vector<ComparisonReport> reps;
  for (double delta : {1e-2, 1e-3, 1e-4}) reps.push_back(weak_strong_experiment(c, {7, delta}));
  bool b = true;
  std::ostringstream ratios;
  for (std::size_t k = 1; k < reps.size(); ++k) {
    const double r = reps[k - 1].max_E / reps[k].max_E;
    b = b && reps[k].max_E < reps[k - 1].max_E && r >= 50.0 && r <= 200.0;
    ratios << (k > 1 ? ", " : "") << sci(r);
  }

  // The bound at minimal_c must hold at every sample (it does by construction).
  bool cc = true;
  std::ostringstream cs;
  for (const auto& r : reps) {
    cc = cc && std::isfinite(r.minimal_c) && r.minimal_c >= 0.0;
    const double e0 = r.trace.front().E;
    for (const auto& s : r.trace)
      cc = cc && s.E <= e0 * std::exp(r.minimal_c * s.int_K_hat) * (1.0 + 1e-12);
    cs << (cs.tellp() > 0 ? ", " : "") << sci(r.minimal_c);
  }
  std::ostringstream os;
  os << "(a) max E at delta=0: " << sci(zero.max_E) << " <= " << sci(hard) << (a ? "" : " FAILED")
     << "; (b) max E ratios " << ratios.str() << " in [50, 200]" << (b ? "" : " FAILED")
     << "; (c) minimal_c " << cs.str() << (cc ? "" : " FAILED");
  return {a && b && cc, os.str()};
}

// 6. Zeta absorption on a non-Parodi run.
Outcome absorption() {
  RunConfig c = reference_config();
  c.material.params.lambda = 0.5;  // gamma(mu2+mu3) - lambda = 0.5
  c.stepper.dt = stability_bound(c.grid, c.material);
  const ComparisonReport r = weak_strong_experiment(c, {7, 1e-2});
  double max_cross = 0.0;
  for (const auto& s : r.trace) max_cross = std::max(max_cross, s.cross);
  std::ostringstream os;
  os << "zeta " << sci(r.zeta) << ", " << r.trace.size() << " samples, min slack " << sci(r.min_absorption_slack)
     << " (tol -1e-12), max |cross| " << sci(max_cross);
  return {r.zeta > 0.0 && max_cross > 0.0 && r.min_absorption_slack >= -1e-12, os.str()};
}

// 7. Convergence orders.
Outcome convergence() {
  const ConvergenceReport s = convergence_study(ConvergenceMode::space);
  const ConvergenceReport t = convergence_study(ConvergenceMode::time);
  std::ostringstream os;
  os << "space orders";
  for (std::size_t k = 1; k < s.rows.size(); ++k) os << ' ' << sci(s.rows[k].order);
  os << " (need >= 1.9); time orders";
  for (std::size_t k = 1; k < t.rows.size(); ++k) os << ' ' << sci(t.rows[k].order);
  os << " (need >= 0.9)";
  return {s.pass() && t.pass() && s.rows.size() == 3 && t.rows.size() == 3, os.str()};
}

// 8. Determinism and snapshot I/O.
Outcome determinism_io() {
  RunConfig c = reference_config();
  c.stepper.t_end = 0.02;
  const std::string text = format_config(c);
  const RunConfig c1 = parse_config(text), c2 = parse_config(text);
  const std::string a = format_csv(rows_from_energy(energy_monitor(c1).trace));
  const std::string b = format_csv(rows_from_energy(energy_monitor(c2).trace));
  c.stepper.t_end = 0.005;
  const std::string ca = format_csv(rows_from_comparison(weak_strong_experiment(c, {5, 1e-3})));
  const std::string cb = format_csv(rows_from_comparison(weak_strong_experiment(c, {5, 1e-3})));

  State s = initial_state(c.grid, c.initial);
  s = step(s, c.stepper, c.material);
  const auto path = (std::filesystem::temp_directory_path() / "leslie_acceptance_snapshot.bin").string();
  write_snapshot(s, path);
  const State r = read_snapshot(path);
  std::filesystem::remove(path);
  const bool traces = a == b && ca == cb;
  const bool snap = r == s && encode_snapshot(r) == encode_snapshot(s);
  return {traces && snap, std::string("energy and comparison traces ") + (traces ? "identical" : "DIFFER") +
                              ", snapshot round trip " + (snap ? "bitwise exact" : "NOT exact")};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"1 parameter gate", 1, parameter_gate},
      {"2 variational derivative oracle", 10, variational_oracle},
      {"3 discrete integration by parts", 10, ibp},
      {"4 energy law", 60, energy_law},
      {"5 weak-strong stability", 180, weak_strong},
      {"6 zeta absorption", 120, absorption},
      {"7 convergence orders", 120, convergence},
      {"8 determinism and snapshot I/O", 10, determinism_io},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_s;
    const bool ok = o.pass && in_time;
    if (!ok) ++failed;
    std::printf("[%s] criterion %s: %s; %.2f s (budget %.0f s)%s\n", ok ? "PASS" : "FAIL", c.name, o.detail.c_str(),
                secs, c.budget_s, in_time ? "" : " OVER BUDGET");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
