#include "leslie/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "leslie/linsolve.hpp"
#include "leslie/parallel.hpp"

namespace leslie {

State make_state(const VectorField& d, double t) {
  State s;
  s.t = t;
  s.d = d;
  s.v = VectorField(d.grid);
  s.p = ScalarField(d.grid);
  return s;
}

std::string to_string(Scheme s) {
  return s == Scheme::explicit_euler ? "explicit-euler" : "semi-implicit";
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "explicit-euler") return Scheme::explicit_euler;
  if (s == "semi-implicit") return Scheme::semi_implicit;
  throw std::invalid_argument("unknown scheme '" + s + "' (expected explicit-euler|semi-implicit)");
}

void StepperConfig::check() const {
  if (!(dt > 0.0)) throw std::invalid_argument("stepper dt must be > 0");
  if (!(t_end >= 0.0)) throw std::invalid_argument("stepper t_end must be >= 0");
  if (!(poisson_tol > 0.0 && poisson_tol <= 1e-6))
    throw std::invalid_argument("stepper poisson_tol must lie in (0, 1e-6]");
  if (poisson_max_iter < 1) throw std::invalid_argument("stepper poisson_max_iter must be >= 1");
  if (output_every < 1) throw std::invalid_argument("stepper output_every must be >= 1");
  if (!(solver_tol > 0.0)) throw std::invalid_argument("stepper solver_tol must be > 0");
}

namespace {

std::vector<double> flatten(const VectorField& f) {
  std::vector<double> out(3 * f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    for (int c = 0; c < 3; ++c) out[3 * i + static_cast<std::size_t>(c)] = f[i][c];
  return out;
}

VectorField unflatten(const Grid& g, std::span<const double> x) {
  VectorField f(g);
  for (std::size_t i = 0; i < f.size(); ++i)
    for (int c = 0; c < 3; ++c) f[i][c] = x[3 * i + static_cast<std::size_t>(c)];
  return f;
}

TensorField sym_gradient(const VectorField& v) {
  TensorField s = gradient_vec(v);
  for (auto& m : s.values) m = sym(m);
  return s;
}

void zero_boundary(VectorField& f) {
  if (f.grid.bc != Boundary::dirichlet) return;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f.grid.on_boundary(i)) f[i] = {};
}

void zero_boundary(std::vector<double>& f, const Grid& g) {
  if (g.bc != Boundary::dirichlet) return;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (g.on_boundary(i)) f[i] = 0.0;
}

double max_speed(const VectorField& v) {
  double m = 0.0;
  for (const auto& x : v.values) m = std::max(m, norm(x));
  return m;
}

double min_spacing(const Grid& g) {
  double h = g.h[0];
  for (int a = 1; a < g.dim; ++a) h = std::min(h, g.h[static_cast<std::size_t>(a)]);
  return h;
}

double interior_l2(const ScalarField& f) {
  ScalarField w = f;
  zero_boundary(w.values, f.grid);
  return lp_norm(w, 2.0);
}

// Solve (I - coeff * op) x = rhs with boundary rows of a dirichlet grid held at rhs.
template <class Op>
VectorField helmholtz_solve(const VectorField& rhs, double coeff, Op&& op, const StepperConfig& cfg,
                            int& iterations, const char* what) {
  const Grid& g = rhs.grid;
  const bool dirichlet = g.bc == Boundary::dirichlet;
  auto apply = [&](const std::vector<double>& x) {
    const VectorField xf = unflatten(g, x);
    VectorField y = xf;
    axpy(y, -coeff, op(xf));
    if (dirichlet)
      for (std::size_t i = 0; i < y.size(); ++i)
        if (g.on_boundary(i)) y[i] = xf[i];
    return flatten(y);
  };
  const std::vector<double> b = flatten(rhs);
  std::vector<double> x = b;
  const SolveReport rep = dirichlet ? bicgstab(apply, b, x, cfg.solver_tol, cfg.solver_max_iter)
                                    : conjugate_gradient(apply, b, x, cfg.solver_tol, cfg.solver_max_iter);
  iterations += rep.iterations;
  if (!rep.converged) {
    std::ostringstream os;
    os << what << " solve did not converge: relative residual " << rep.relative_residual << " after "
       << rep.iterations << " iterations";
    throw SolverError(os.str());
  }
  return unflatten(g, x);
}

}  // namespace

TensorField leslie_stress(const VectorField& v, const VectorField& d, const VectorField& q,
                          const ParameterSet& p) {
  const TensorField s = sym_gradient(v);
  TensorField t(d.grid);
  const double c_q = p.gamma * p.mu23();
  const double c_dir = p.directional_viscosity();
  parallel_for(d.size(), [&](std::size_t i) {
    const Vec3& di = d[i];
    const Mat3& si = s[i];
    const Vec3 sd = si * di;
    const Mat3 dq = outer(di, q[i]);
    Mat3 m = (p.mu1 * dot(di, sd)) * outer(di, di);
    m += p.mu4 * si;
    m -= c_q * sym(dq);
    m -= skw(dq);
    m += c_dir * sym(outer(di, sd));
    t[i] = m;
  });
  return t;
}

VectorField ericksen_force(const VectorField& d, const VectorField& q) {
  const TensorField gd = gradient_vec(d);
  VectorField f(d.grid);
  for (std::size_t i = 0; i < d.size(); ++i) f[i] = -(transpose(gd[i]) * q[i]);
  return f;
}

VectorField director_rhs(const VectorField& v, const VectorField& d, const VectorField& q,
                         const ParameterSet& p) {
  const TensorField gv = gradient_vec(v);
  VectorField r = advect(v, d);
  parallel_for(d.size(), [&](std::size_t i) {
    const Mat3& g = gv[i];
    r[i] = skw(g) * d[i] - p.lambda * (sym(g) * d[i]) - p.gamma * q[i] - r[i];
  });
  return r;
}

VectorField momentum_rhs(const VectorField& v, const VectorField& d, const VectorField& q,
                         const VectorField& g, const ParameterSet& p) {
  VectorField r = divergence_tensor(leslie_stress(v, d, q, p));
  r -= advect(v, v);
  r -= ericksen_force(d, q);
  r += g;
  return r;
}

Projection project_divfree(const VectorField& u, double tol, int max_iter,
                           const ScalarField* initial_phi) {
  const Grid& g = u.grid;
  Projection out;
  out.phi = initial_phi ? *initial_phi : ScalarField(g);
  // Rounding floor: central differences of O(|u|) data lose about |u|/h ulps.
  const double floor = 1e-14 * std::max(1.0, lp_norm(u, 2.0) / min_spacing(g));
  auto effective_tol = [&](const std::vector<double>& b) {
    const double bn = lp_norm(ScalarField(g, b), 2.0);
    return bn > 0.0 ? std::max(tol, std::min(0.5, floor / bn)) : tol;
  };

  if (g.bc == Boundary::periodic) {
    std::vector<double> b = divergence_vec(u).values;
    // Keep the right-hand side in the range of the singular operator.
    const double mean = pairwise_sum(b) / static_cast<double>(b.size());
    for (auto& x : b) x = mean - x;
    auto apply = [&](const std::vector<double>& x) {
      std::vector<double> y = laplacian_scalar(ScalarField(g, x)).values;
      for (auto& e : y) e = -e;
      return y;
    };
    out.report = conjugate_gradient(apply, b, out.phi.values, effective_tol(b), max_iter);
  } else {
    VectorField uz = u;
    zero_boundary(uz);
    std::vector<double> b = divergence_vec(uz).values;
    zero_boundary(b, g);
    auto apply = [&](const std::vector<double>& x) {
      std::vector<double> y(g.size(), 0.0);
      for (int a = 0; a < g.dim; ++a) {
        std::vector<double> ga = partial<double>(g, x, a);
        zero_boundary(ga, g);
        const std::vector<double> dga = partial<double>(g, ga, a);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += dga[i];
      }
      zero_boundary(y, g);
      return y;
    };
    auto apply_t = [&](std::vector<double> r) {
      zero_boundary(r, g);
      std::vector<double> y(g.size(), 0.0);
      for (int a = 0; a < g.dim; ++a) {
        std::vector<double> sa = partial_transpose(g, r, a);
        zero_boundary(sa, g);
        const std::vector<double> ta = partial_transpose(g, sa, a);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += ta[i];
      }
      return y;
    };
    out.report = cgls(apply, apply_t, b, out.phi.values, effective_tol(b), max_iter);
  }

  const double mean = integrate(out.phi) / g.measure();
  for (auto& x : out.phi.values) x -= mean;
  out.u = u;
  const VectorField gp = gradient_scalar(out.phi);
  out.u -= gp;
  zero_boundary(out.u);

  const double div_in = interior_l2(divergence_vec(g.bc == Boundary::dirichlet ? [&] {
    VectorField uz = u;
    zero_boundary(uz);
    return uz;
  }() : u));
  const double div_out = interior_l2(divergence_vec(out.u));
  out.report.relative_residual = div_in > 0.0 ? div_out / div_in : 0.0;
  if (!(div_out <= tol * div_in + floor)) {
    std::ostringstream os;
    os << "pressure projection did not converge: |div u| went " << div_in << " -> " << div_out
       << " after " << out.report.iterations << " iterations (tol " << tol << ")";
    throw SolverError(os.str());
  }
  out.report.converged = true;
  return out;
}

double stability_bound(const Grid& grid, const Material& m) {
  double s = 0.0;
  for (int a = 0; a < grid.dim; ++a) s += 1.0 / (grid.h[static_cast<std::size_t>(a)] * grid.h[static_cast<std::size_t>(a)]);
  const ParameterSet& p = m.params;
  const double director = p.gamma * (m.elastic.operator_norm() * s + 2.0 / p.epsilon);
  const double viscous =
      (0.5 * std::abs(p.mu4) + std::abs(p.mu1) + 0.5 * std::abs(p.directional_viscosity())) * s;
  const double penalty = 4.0 * p.gamma / p.epsilon;
  return 0.5 / std::max({director, viscous, penalty});
}

VectorField advance_director(const VectorField& v, const VectorField& d, const Material& m,
                             double dt, Scheme scheme, const VectorField* source,
                             const StepperConfig& cfg) {
  const ParameterSet& p = m.params;
  VectorField out;
  if (scheme == Scheme::explicit_euler) {
    const VectorField q = variational_derivative(d, m.elastic, p.epsilon);
    VectorField r = director_rhs(v, d, q, p);
    if (source) r += *source;
    out = d;
    axpy(out, dt, r);
  } else {
    // Explicit part: transport, rotation, stretching and the penalty force.
    const TensorField gv = gradient_vec(v);
    VectorField r = advect(v, d);
    for (std::size_t i = 0; i < d.size(); ++i) {
      const Vec3 pen = ((norm2(d[i]) - 1.0) / p.epsilon) * d[i];
      r[i] = skw(gv[i]) * d[i] - p.lambda * (sym(gv[i]) * d[i]) - p.gamma * pen - r[i];
    }
    if (source) r += *source;
    VectorField rhs = d;
    axpy(rhs, dt, r);
    int iters = 0;
    out = helmholtz_solve(
        rhs, dt * p.gamma, [&](const VectorField& x) { return laplacian_lambda(x, m.elastic); }, cfg,
        iters, "director");
  }
  if (d.grid.bc == Boundary::dirichlet)
    for (std::size_t i = 0; i < d.size(); ++i)
      if (d.grid.on_boundary(i)) out[i] = d[i];
  return out;
}

State step(const State& s, const StepperConfig& cfg, const Material& m, StepDiagnostics* diag,
           double dt) {
  if (dt <= 0.0) dt = cfg.dt;
  const ParameterSet& p = m.params;
  const Grid& g = s.grid();
  StepDiagnostics local;
  StepDiagnostics& dg = diag ? *diag : local;
  dg = {};
  dg.cfl = dt * max_speed(s.v) / min_spacing(g);
  dg.cfl_warning = dg.cfl > 0.5;

  const VectorField force = p.forcing.evaluate(g, s.t);
  State next;
  next.t = s.t + dt;
  VectorField w;

  if (cfg.scheme == Scheme::explicit_euler) {
    const VectorField q = variational_derivative(s.d, m.elastic, p.epsilon);
    next.d = s.d;
    axpy(next.d, dt, director_rhs(s.v, s.d, q, p));
    if (g.bc == Boundary::dirichlet)
      for (std::size_t i = 0; i < g.size(); ++i)
        if (g.on_boundary(i)) next.d[i] = s.d[i];
    w = s.v;
    axpy(w, dt, momentum_rhs(s.v, s.d, q, force, p));
  } else {
    next.d = advance_director(s.v, s.d, m, dt, Scheme::semi_implicit, nullptr, cfg);
    const VectorField q = variational_derivative(next.d, m.elastic, p.epsilon);
    ParameterSet no_mu4 = p;
    no_mu4.mu4 = 0.0;
    VectorField r = divergence_tensor(leslie_stress(s.v, next.d, q, no_mu4));
    r -= advect(s.v, s.v);
    r -= ericksen_force(next.d, q);
    r += force;
    VectorField rhs = s.v;
    axpy(rhs, dt, r);
    zero_boundary(rhs);
    // div(mu4 S) = mu4/2 (Lap v + grad div v); the gradient part goes to the projection.
    w = helmholtz_solve(rhs, 0.5 * dt * p.mu4, [](const VectorField& x) { return laplacian_vec(x); },
                        cfg, dg.solver_iterations, "viscous");
  }
  zero_boundary(w);

  ScalarField guess = s.p;
  guess *= dt;
  Projection proj = project_divfree(w, cfg.poisson_tol, cfg.poisson_max_iter, &guess);
  dg.poisson_iterations = proj.report.iterations;
  next.v = std::move(proj.u);
  next.p = std::move(proj.phi);
  next.p *= 1.0 / dt;
  return next;
}

EnergySample sample_energy(const State& s, const Material& m) {
  const VectorField q = variational_derivative(s.d, m.elastic, m.params.epsilon);
  const VectorField g = m.params.forcing.evaluate(s.grid(), s.t);
  return measure_energy(s.t, s.v, s.d, q, g, m.params, m.elastic);
}

Trajectory run(const State& initial, const StepperConfig& cfg, const Material& m,
               const RunOptions& opts) {
  cfg.check();
  Trajectory tr;
  auto record = [&](const State& s) {
    EnergySample e = sample_energy(s, m);
    if (opts.observer) opts.observer(s, e);
    tr.energy.push_back(e);
    if (opts.store_states) tr.states.push_back(s);
  };

  State s = initial;
  record(s);
  const double t0 = initial.t;
  const double span = cfg.t_end - t0;
  const long nsteps = span > 0.0 ? static_cast<long>(std::ceil(span / cfg.dt - 1e-9)) : 0;
  bool warned = false;
  for (long n = 1; n <= nsteps; ++n) {
    const double t_target = n == nsteps ? cfg.t_end : t0 + static_cast<double>(n) * cfg.dt;
    StepDiagnostics diag;
    State next = step(s, cfg, m, &diag, t_target - s.t);
    next.t = t_target;
    if (!all_finite(next.v) || !all_finite(next.d) || !all_finite(next.p)) {
      std::ostringstream os;
      os << "non-finite values after step " << n << " (t = " << t_target << ")";
      throw SimulationError(os.str(), std::move(s));
    }
    if (diag.cfl_warning && !warned) {
      std::ostringstream os;
      os << "CFL number " << diag.cfl << " exceeds 0.5 at t = " << s.t;
      tr.warnings.push_back(os.str());
      warned = true;
    }
    s = std::move(next);
    ++tr.steps;
    if (n % cfg.output_every == 0 || n == nsteps) record(s);
  }
  return tr;
}

}  // namespace leslie
