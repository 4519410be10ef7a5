#include "leslie/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace leslie {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double max_norm(const VectorField& f) {
  double m = 0.0;
  for (const auto& x : f.values) m = std::max(m, norm(x));
  return m;
}

void rescale(VectorField& f, double amplitude) {
  const double m = max_norm(f);
  if (m > 0.0) f *= amplitude / m;
}

VectorField fourier_sum(const Grid& g, Rng& rng, int modes, bool with_mean) {
  if (modes < 1) throw std::invalid_argument("random field needs modes >= 1");
  VectorField f(g);
  const int mz = g.dim == 3 ? modes : 0;
  for (int kx = -modes; kx <= modes; ++kx)
    for (int ky = -modes; ky <= modes; ++ky)
      for (int kz = -mz; kz <= mz; ++kz) {
        const bool zero = kx == 0 && ky == 0 && kz == 0;
        Vec3 a, b;
        for (int c = 0; c < 3; ++c) {
          a[c] = rng.normal();
          b[c] = rng.normal();
        }
        if (zero && !with_mean) continue;
        const double decay = 1.0 / (1.0 + kx * kx + ky * ky + kz * kz);
        for (std::size_t i = 0; i < g.size(); ++i) {
          const Vec3 x = g.position(i);
          double arg = two_pi * (kx * x[0] / g.length(0) + ky * x[1] / g.length(1));
          if (g.dim == 3) arg += two_pi * kz * x[2] / g.length(2);
          f[i] += decay * (std::cos(arg) * a + std::sin(arg) * b);
        }
      }
  return f;
}

void apply_window(VectorField& f) {
  const Grid& g = f.grid;
  if (g.bc != Boundary::dirichlet) return;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.on_boundary(i)) {
      f[i] = {};
      continue;
    }
    const Vec3 x = g.position(i);
    double w = 1.0;
    for (int a = 0; a < g.dim; ++a) w *= std::sin(std::numbers::pi * x[a] / g.length(a));
    f[i] *= w;
  }
}

Vec3 normalized(const Vec3& a) {
  const double n = norm(a);
  return n > 1e-12 ? (1.0 / n) * a : a;
}

}  // namespace

VectorField smooth_random_field(const Grid& g, Rng& rng, int modes, double amplitude) {
  VectorField f = fourier_sum(g, rng, modes, true);
  apply_window(f);
  rescale(f, amplitude);
  return f;
}

VectorField mean_zero_random_field(const Grid& g, Rng& rng, int modes, double amplitude) {
  VectorField f = fourier_sum(g, rng, modes, false);
  apply_window(f);
  if (g.bc == Boundary::dirichlet) {
    // The window breaks the zero mean; remove it on the interior only.
    Vec3 mean;
    std::size_t count = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (!g.on_boundary(i)) {
        mean += f[i];
        ++count;
      }
    if (count) mean *= 1.0 / static_cast<double>(count);
    for (std::size_t i = 0; i < g.size(); ++i)
      if (!g.on_boundary(i)) f[i] -= mean;
  }
  rescale(f, amplitude);
  return f;
}

VectorField divergence_free_random_field(const Grid& g, Rng& rng, int modes, double amplitude) {
  VectorField f = fourier_sum(g, rng, modes, false);
  apply_window(f);
  f = project_divfree(f, 1e-13, 20000).u;
  rescale(f, amplitude);
  return f;
}

State initial_state(const Grid& g, const InitialSpec& spec) {
  g.check();
  Rng rng(spec.seed);
  VectorField d(g);
  switch (spec.kind) {
    case InitialSpec::Kind::constant:
      for (auto& x : d.values) x = spec.director;
      break;
    case InitialSpec::Kind::perturbed:
      for (std::size_t i = 0; i < g.size(); ++i) {
        const Vec3 x = g.position(i);
        const double sx = std::sin(two_pi * x[0] / g.length(0));
        const double cx = std::cos(two_pi * x[0] / g.length(0));
        const double sy = std::sin(two_pi * x[1] / g.length(1));
        const double cy = std::cos(two_pi * x[1] / g.length(1));
        const double cz = g.dim == 3 ? std::cos(two_pi * x[2] / g.length(2)) : 1.0;
        const Vec3 w{sx * cy * cz, cx * sy, 0.5 * sx * sy};
        d[i] = normalized(spec.director + spec.amplitude * w);
      }
      break;
    case InitialSpec::Kind::smooth_random: {
      const VectorField xi = smooth_random_field(g, rng, spec.modes, spec.amplitude);
      for (std::size_t i = 0; i < g.size(); ++i) d[i] = normalized(spec.director + xi[i]);
      break;
    }
  }
  State s = make_state(d);
  if (spec.velocity_amplitude > 0.0)
    s.v = divergence_free_random_field(g, rng, spec.modes, spec.velocity_amplitude);
  return s;
}

// ---------------------------------------------------------------- energy

EnergyReport energy_monitor(const RunConfig& cfg, double monotone_tol) {
  EnergyReport rep;
  rep.monotone_tol = monotone_tol;
  rep.parodi = is_parodi(cfg.material.params);
  const State s0 = initial_state(cfg.grid, cfg.initial);
  // The audit integrates every step; output_every only thins the reported trace.
  StepperConfig every = cfg.stepper;
  every.output_every = 1;
  RunOptions opts;
  opts.observer = [&](const State&, const EnergySample& e) { rep.trace.push_back(e); };
  try {
    Trajectory tr = run(s0, every, cfg.material, opts);
    rep.warnings = std::move(tr.warnings);
  } catch (const SimulationError& e) {
    // The samples up to the last finite state are kept for inspection.
    rep.failure = e.what();
  }
  rep.residual = energy_inequality_residual(rep.trace);
  rep.e0 = rep.trace.front().energy.total();
  rep.max_residual = *std::max_element(rep.residual.begin(), rep.residual.end());
  for (std::size_t k = 1; k < rep.trace.size(); ++k)
    rep.max_step_increase =
        std::max(rep.max_step_increase, rep.trace[k].energy.total() - rep.trace[k - 1].energy.total());
  for (const auto& s : rep.trace)
    if (s.cross != 0.0) rep.cross_zero = false;
  rep.residual_ok = rep.max_residual <= cfg.energy_tol * rep.e0;
  rep.monotone_ok = rep.max_step_increase <= monotone_tol * rep.e0;
  if (!rep.failure.empty()) rep.residual_ok = rep.monotone_ok = false;
  if (cfg.stepper.output_every > 1) {
    const auto stride = static_cast<std::size_t>(cfg.stepper.output_every);
    std::vector<EnergySample> trace;
    std::vector<double> residual;
    for (std::size_t k = 0; k < rep.trace.size(); ++k)
      if (k % stride == 0 || k + 1 == rep.trace.size()) {
        trace.push_back(rep.trace[k]);
        residual.push_back(rep.residual[k]);
      }
    rep.trace = std::move(trace);
    rep.residual = std::move(residual);
  }
  return rep;
}

// ---------------------------------------------------------------- comparison

ComparisonReport weak_strong_experiment(const RunConfig& base, const Perturbation& pert) {
  const StepperConfig& cfg = base.stepper;
  cfg.check();
  const Material& m = base.material;
  const ParameterSet& p = m.params;
  if (!validate(p).empty()) throw std::invalid_argument("weak_strong_experiment needs valid parameters");
  const Grid& g = base.grid;

  ComparisonReport rep;
  rep.delta0 = pert.amplitude;
  rep.gronwall_c = base.gronwall_c;
  rep.zeta = zeta(p);

  State ref = initial_state(g, base.initial);
  State other = ref;
  {
    Rng rng(pert.seed);
    const VectorField xi_v = divergence_free_random_field(g, rng, base.initial.modes, 1.0);
    const VectorField xi_d = mean_zero_random_field(g, rng, base.initial.modes, 1.0);
    axpy(other.v, pert.amplitude, xi_v);
    axpy(other.d, pert.amplitude, xi_d);
  }
  rep.initial_free_energy = free_energy(ref.d, m.elastic, p.epsilon).total();

  const double t0 = ref.t;
  const double span = cfg.t_end - t0;
  const long nsteps = span > 0.0 ? static_cast<long>(std::ceil(span / cfg.dt - 1e-9)) : 0;
  auto target = [&](long n) { return n == nsteps ? cfg.t_end : t0 + static_cast<double>(n) * cfg.dt; };
  bool warned = false;
  auto advance = [&](const State& s, long n, const char* which) {
    StepDiagnostics diag;
    State next = step(s, cfg, m, &diag, target(n) - s.t);
    next.t = target(n);
    if (!all_finite(next.v) || !all_finite(next.d) || !all_finite(next.p)) {
      std::ostringstream os;
      os << "non-finite values in the " << which << " run after step " << n;
      throw SimulationError(os.str(), s);
    }
    if (diag.cfl_warning && !warned) {
      std::ostringstream os;
      os << "CFL number " << diag.cfl << " exceeds 0.5 at t = " << s.t;
      rep.warnings.push_back(os.str());
      warned = true;
    }
    return next;
  };

  auto sample = [&](const State& r, const State& w, const VectorField& ddt) {
    RelativeSample s;
    s.t = r.t;
    const VectorField qt = variational_derivative(r.d, m.elastic, p.epsilon);
    const VectorField q = variational_derivative(w.d, m.elastic, p.epsilon);
    s.E = relative_energy(w.v, w.d, r.v, r.d, m.elastic, p.epsilon);
    s.W = relative_dissipation(w.v, w.d, q, r.v, r.d, qt, p);
    const GronwallNorms norms = gronwall_norms(w.v, w.d, r.v, r.d, qt, ddt);
    s.K_hat = gronwall_K(norms, 1.0);
    s.K = gronwall_K(norms, base.gronwall_c);
    const AbsorptionCheck a = absorption_check(w.v, w.d, q, r.v, r.d, qt, p);
    s.cross = a.cross;
    s.budget = a.budget;
    s.perturbed = measure_energy(w.t, w.v, w.d, q, p.forcing.evaluate(g, w.t), p, m.elastic);
    if (!rep.trace.empty()) {
      const RelativeSample& prev = rep.trace.back();
      s.int_K_hat = prev.int_K_hat + 0.5 * (s.t - prev.t) * (s.K_hat + prev.K_hat);
    }
    rep.trace.push_back(s);
  };

  auto derivative = [](const State& a, const State& b) {
    VectorField out = b.d - a.d;
    out *= 1.0 / (b.t - a.t);
    return out;
  };

  State prev;
  for (long n = 0; n <= nsteps; ++n) {
    State next;
    if (n < nsteps) next = advance(ref, n + 1, "reference");
    if (n % cfg.output_every == 0 || n == nsteps) {
      VectorField ddt;
      if (nsteps == 0)
        ddt = VectorField(g);
      else if (n == 0)
        ddt = derivative(ref, next);
      else if (n == nsteps)
        ddt = derivative(prev, ref);
      else
        ddt = derivative(prev, next);
      sample(ref, other, ddt);
    }
    if (n < nsteps) {
      other = advance(other, n + 1, "perturbed");
      prev = std::move(ref);
      ref = std::move(next);
    }
  }

  const double e0 = rep.trace.front().E;
  rep.min_absorption_slack = std::numeric_limits<double>::infinity();
  rep.bound_satisfied = true;
  for (auto& s : rep.trace) {
    s.bound = e0 * std::exp(base.gronwall_c * s.int_K_hat);
    rep.max_E = std::max(rep.max_E, s.E);
    rep.min_absorption_slack = std::min(rep.min_absorption_slack, s.budget - s.cross);
    if (s.E > s.bound * (1.0 + 1e-12)) rep.bound_satisfied = false;
    if (s.E > e0) {
      const double c = s.int_K_hat > 0.0 && e0 > 0.0 ? std::log(s.E / e0) / s.int_K_hat
                                                    : std::numeric_limits<double>::infinity();
      rep.minimal_c = std::max(rep.minimal_c, c);
    }
  }
  rep.max_E_over_E0 = e0 > 0.0 ? rep.max_E / e0 : (rep.max_E > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
  return rep;
}

// ---------------------------------------------------------------- identities

double IbpRow::worst() const {
  return std::max({product_rule, elastic_spatial, elastic_temporal, modulus_rule});
}

double IbpReport::worst() const {
  double w = 0.0;
  for (const auto& r : rows) w = std::max(w, r.worst());
  return w;
}

namespace {

ScalarField modulus2(const VectorField& d) {
  ScalarField s(d.grid);
  for (std::size_t i = 0; i < d.size(); ++i) s[i] = norm2(d[i]);
  return s;
}

double elastic_pairing(const VectorField& a, const VectorField& b, const ElasticTensor& L) {
  TensorField ga = gradient_vec(a);
  for (auto& x : ga.values) x = lambda_apply(L, x);
  return inner(ga, gradient_vec(b));
}

double ratio(double residual, double scale) { return scale > 0.0 ? residual / scale : residual; }

/// Strongly elliptic, major symmetric, not isotropic.
ElasticTensor test_tensor(Rng& rng) {
  std::array<double, 81> e{};
  const ElasticTensor iso = ElasticTensor::isotropic(1.0);
  for (int a = 0; a < 9; ++a)
    for (int b = a; b < 9; ++b) {
      const double x = 0.05 * rng.uniform(-1.0, 1.0);
      const std::size_t ab = static_cast<std::size_t>(a * 9 + b);
      const std::size_t ba = static_cast<std::size_t>(b * 9 + a);
      e[ab] = iso.entries()[ab] + x;
      e[ba] = iso.entries()[ba] + (a == b ? 0.0 : x);
    }
  return ElasticTensor::from_entries(e);
}

}  // namespace

IbpReport ibp_suite(const std::vector<int>& sizes, const std::vector<std::uint64_t>& seeds, int dim,
                    bool constant) {
  IbpReport rep;
  constexpr int steps = 6;
  for (int n : sizes)
    for (std::uint64_t seed : seeds) {
      const Grid g = Grid::cube(dim, n);
      Rng rng(seed);
      const ElasticTensor L = test_tensor(rng);
      std::vector<VectorField> v(steps + 1), vt(steps + 1), d(steps + 1), dt(steps + 1);
      for (int k = 0; k <= steps; ++k) {
        if (constant) {
          Vec3 a, b, c, e;
          for (int i = 0; i < 3; ++i) {
            a[i] = rng.normal();
            b[i] = rng.normal();
            c[i] = rng.normal();
            e[i] = rng.normal();
          }
          v[k] = VectorField(g, std::vector<Vec3>(g.size(), a));
          vt[k] = VectorField(g, std::vector<Vec3>(g.size(), b));
          d[k] = VectorField(g, std::vector<Vec3>(g.size(), c));
          dt[k] = VectorField(g, std::vector<Vec3>(g.size(), e));
          // Constant in time as well, so every increment vanishes.
          if (k > 0) {
            v[k] = v[0];
            vt[k] = vt[0];
            d[k] = d[0];
            dt[k] = dt[0];
          }
        } else {
          v[k] = smooth_random_field(g, rng, 3, 1.0);
          vt[k] = smooth_random_field(g, rng, 3, 1.0);
          d[k] = smooth_random_field(g, rng, 3, 1.0);
          dt[k] = smooth_random_field(g, rng, 3, 1.0);
        }
      }

      IbpRow row;
      row.n = n;
      row.seed = seed;

      // (a) (v^K, v~^K) - (v^0, v~^0) = sum (dv, v~_mid) + (v_mid, dv~)
      {
        double sum = 0.0, scale = 0.0;
        for (int k = 0; k < steps; ++k) {
          const VectorField dv = v[k + 1] - v[k];
          const VectorField dvt = vt[k + 1] - vt[k];
          const VectorField vm = 0.5 * (v[k + 1] + v[k]);
          const VectorField vtm = 0.5 * (vt[k + 1] + vt[k]);
          const double a = inner(dv, vtm), b = inner(vm, dvt);
          sum += a + b;
          scale += lp_norm(dv, 2.0) * lp_norm(vtm, 2.0) + lp_norm(vm, 2.0) * lp_norm(dvt, 2.0);
        }
        const double ends = inner(v[steps], vt[steps]) - inner(v[0], vt[0]);
        scale += lp_norm(v[steps], 2.0) * lp_norm(vt[steps], 2.0) + lp_norm(v[0], 2.0) * lp_norm(vt[0], 2.0);
        row.product_rule = ratio(std::abs(ends - sum), scale);
      }

      // (b) (grad d : L grad d~) = -(d, div L grad d~) = -(div L grad d, d~)
      {
        double worst = 0.0;
        for (int k = 0; k <= steps; ++k) {
          const double pair = elastic_pairing(d[k], dt[k], L);
          const double right = -inner(d[k], laplacian_lambda(dt[k], L));
          const double left = -inner(laplacian_lambda(d[k], L), dt[k]);
          const double scale = L.operator_norm() * lp_norm(gradient_vec(d[k]), 2.0) *
                               lp_norm(gradient_vec(dt[k]), 2.0);
          worst = std::max(worst, ratio(std::max(std::abs(pair - right), std::abs(pair - left)), scale));
        }
        row.elastic_spatial = worst;

        double sum = 0.0, scale = 0.0;
        for (int k = 0; k < steps; ++k) {
          const VectorField dd = d[k + 1] - d[k];
          const VectorField ddt = dt[k + 1] - dt[k];
          const VectorField dm = 0.5 * (d[k + 1] + d[k]);
          const VectorField dtm = 0.5 * (dt[k + 1] + dt[k]);
          // Each increment written through the adjoint form.
          sum += -inner(dd, laplacian_lambda(dtm, L)) - inner(laplacian_lambda(dm, L), ddt);
          scale += L.operator_norm() * (lp_norm(gradient_vec(dd), 2.0) * lp_norm(gradient_vec(dtm), 2.0) +
                                        lp_norm(gradient_vec(dm), 2.0) * lp_norm(gradient_vec(ddt), 2.0));
        }
        const double ends = elastic_pairing(d[steps], dt[steps], L) - elastic_pairing(d[0], dt[0], L);
        scale += L.operator_norm() *
                 (lp_norm(gradient_vec(d[steps]), 2.0) * lp_norm(gradient_vec(dt[steps]), 2.0) +
                  lp_norm(gradient_vec(d[0]), 2.0) * lp_norm(gradient_vec(dt[0]), 2.0));
        row.elastic_temporal = ratio(std::abs(ends - sum), scale);
      }

      // (c) |d^{k+1}|^2 - |d^k|^2 = 2 (d^{k+1} - d^k) . d_mid, paired with |d~|^2
      {
        double sum = 0.0, scale = 0.0;
        for (int k = 0; k < steps; ++k) {
          ScalarField chain(g), chain_t(g);
          for (std::size_t i = 0; i < g.size(); ++i) {
            chain[i] = 2.0 * dot(d[k + 1][i] - d[k][i], 0.5 * (d[k + 1][i] + d[k][i]));
            chain_t[i] = 2.0 * dot(dt[k + 1][i] - dt[k][i], 0.5 * (dt[k + 1][i] + dt[k][i]));
          }
          const ScalarField m = 0.5 * (modulus2(d[k + 1]) + modulus2(d[k]));
          const ScalarField mt = 0.5 * (modulus2(dt[k + 1]) + modulus2(dt[k]));
          sum += inner(chain, mt) + inner(m, chain_t);
          scale += lp_norm(chain, 2.0) * lp_norm(mt, 2.0) + lp_norm(m, 2.0) * lp_norm(chain_t, 2.0);
        }
        const ScalarField a1 = modulus2(d[steps]), b1 = modulus2(dt[steps]);
        const ScalarField a0 = modulus2(d[0]), b0 = modulus2(dt[0]);
        const double ends = inner(a1, b1) - inner(a0, b0);
        scale += lp_norm(a1, 2.0) * lp_norm(b1, 2.0) + lp_norm(a0, 2.0) * lp_norm(b0, 2.0);
        row.modulus_rule = ratio(std::abs(ends - sum), scale);
      }
      rep.rows.push_back(row);
    }
  return rep;
}

// ---------------------------------------------------------------- convergence

std::string to_string(ConvergenceMode m) { return m == ConvergenceMode::space ? "space" : "time"; }

ConvergenceMode convergence_mode_from_string(const std::string& s) {
  if (s == "space") return ConvergenceMode::space;
  if (s == "time") return ConvergenceMode::time;
  throw std::invalid_argument("unknown convergence mode '" + s + "' (expected space|time)");
}

double ConvergenceReport::min_order() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < rows.size(); ++k) m = std::min(m, rows[k].order);
  return m;
}

bool ConvergenceReport::pass() const {
  if (rows.size() < 2) return false;
  const bool exact = std::all_of(rows.begin(), rows.end(), [](const ConvergenceRow& r) { return r.error == 0.0; });
  return exact || min_order() >= expected;
}

namespace {

struct Manufactured {
  bool stationary = false;
  double gamma = 1.0;
  double k = 1.0;
  double eps = 0.1;

  Vec3 exact(const Vec3& x, double t) const {
    if (stationary) return {1.0, 0.0, 0.0};
    const double e = std::exp(-t);
    return {1.0 + e * 0.3 * std::sin(two_pi * x[0]) * std::cos(two_pi * x[1]),
            e * 0.2 * std::cos(two_pi * x[0]), e * 0.1 * std::sin(two_pi * x[1])};
  }

  // d_t + gamma q(d) for the continuous q
  Vec3 source(const Vec3& x, double t) const {
    if (stationary) return {};
    const double e = std::exp(-t);
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const Vec3 w{0.3 * std::sin(two_pi * x[0]) * std::cos(two_pi * x[1]), 0.2 * std::cos(two_pi * x[0]),
                 0.1 * std::sin(two_pi * x[1])};
    const Vec3 lap{-8.0 * pi2 * w[0], -4.0 * pi2 * w[1], -4.0 * pi2 * w[2]};
    const Vec3 d = exact(x, t);
    const Vec3 q = ((norm2(d) - 1.0) / eps) * d - (k * e) * lap;
    return -e * w + gamma * q;
  }

  VectorField field(const Grid& g, double t, bool src) const {
    VectorField f(g);
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = src ? source(g.position(i), t) : exact(g.position(i), t);
    return f;
  }
};

VectorField solve_manufactured(const Manufactured& mf, const Material& m, int n, double dt_max,
                               double t_end, Scheme scheme, double& dt_used, int& steps) {
  const Grid g = Grid::cube(2, n);
  steps = static_cast<int>(std::ceil(t_end / dt_max - 1e-9));
  dt_used = t_end / steps;
  StepperConfig cfg;
  cfg.scheme = scheme;
  VectorField d = mf.field(g, 0.0, false);
  const VectorField v(g);
  for (int k = 0; k < steps; ++k) {
    const VectorField s = mf.field(g, k * dt_used, true);
    d = advance_director(v, d, m, dt_used, scheme, &s, cfg);
  }
  return d;
}

}  // namespace

ConvergenceReport convergence_study(ConvergenceMode mode, const ConvergenceOptions& opts) {
  Manufactured mf;
  mf.stationary = opts.stationary;
  Material m;
  m.params = default_parameters();
  m.params.gamma = mf.gamma;
  m.params.epsilon = mf.eps;
  m.elastic = ElasticTensor::isotropic(mf.k);

  ConvergenceReport rep;
  rep.mode = mode;
  if (mode == ConvergenceMode::space) {
    rep.expected = 1.9;
    for (int n : opts.sizes) {
      const double h = 1.0 / n;
      ConvergenceRow row;
      row.n = n;
      const VectorField d = solve_manufactured(mf, m, n, 0.2 * h * h, opts.t_end, opts.scheme, row.dt, row.steps);
      row.error = lp_norm(d - mf.field(d.grid, opts.t_end, false), 2.0);
      if (!rep.rows.empty()) {
        const ConvergenceRow& prev = rep.rows.back();
        row.order = row.error > 0.0 ? std::log(prev.error / row.error) / std::log(static_cast<double>(n) / prev.n) : 0.0;
      }
      rep.rows.push_back(row);
    }
  } else {
    rep.expected = 0.9;
    std::vector<VectorField> sols;
    std::vector<ConvergenceRow> runs;
    for (double dt : opts.dts) {
      ConvergenceRow row;
      row.n = opts.time_n;
      sols.push_back(solve_manufactured(mf, m, opts.time_n, dt, opts.t_end, opts.scheme, row.dt, row.steps));
      runs.push_back(row);
    }
    for (std::size_t k = 0; k + 1 < sols.size(); ++k) {
      ConvergenceRow row = runs[k];
      row.error = lp_norm(sols[k] - sols[k + 1], 2.0);
      if (k > 0) {
        const ConvergenceRow& prev = rep.rows.back();
        row.order = row.error > 0.0 ? std::log(prev.error / row.error) / std::log(prev.dt / row.dt) : 0.0;
      }
      rep.rows.push_back(row);
    }
  }
  return rep;
}

}  // namespace leslie
