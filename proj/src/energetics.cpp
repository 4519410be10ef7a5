#include "leslie/energetics.hpp"

#include <cmath>
#include <stdexcept>

namespace leslie {

namespace {

double squared_l2(const ScalarField& f) { return inner(f, f); }

ScalarField penalty_density(const VectorField& d) {
  ScalarField s(d.grid);
  for (std::size_t i = 0; i < d.size(); ++i) s[i] = norm2(d[i]) - 1.0;
  return s;
}

TensorField apply_lambda(const ElasticTensor& L, TensorField a) {
  for (auto& m : a.values) m = lambda_apply(L, m);
  return a;
}

TensorField sym_gradient(const VectorField& v) {
  TensorField s = gradient_vec(v);
  for (auto& m : s.values) m = sym(m);
  return s;
}

VectorField apply_pointwise(const TensorField& s, const VectorField& d) {
  VectorField out(d.grid);
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = s[i] * d[i];
  return out;
}

ScalarField contract(const VectorField& d, const VectorField& sd) {
  ScalarField out(d.grid);
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = dot(d[i], sd[i]);
  return out;
}

}  // namespace

EnergyBreakdown free_energy(const VectorField& d, const ElasticTensor& L, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("free_energy needs eps > 0");
  const TensorField g = gradient_vec(d);
  EnergyBreakdown e;
  e.elastic = 0.5 * inner(g, apply_lambda(L, g));
  e.penalty = squared_l2(penalty_density(d)) / (4.0 * eps);
  return e;
}

double kinetic_energy(const VectorField& v) { return 0.5 * inner(v, v); }

EnergyBreakdown total_energy(const VectorField& v, const VectorField& d, const ElasticTensor& L,
                             double eps) {
  EnergyBreakdown e = free_energy(d, L, eps);
  e.kinetic = kinetic_energy(v);
  return e;
}

VectorField variational_derivative(const VectorField& d, const ElasticTensor& L, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("variational_derivative needs eps > 0");
  VectorField q = laplacian_lambda(d, L);
  for (std::size_t i = 0; i < d.size(); ++i) q[i] = (norm2(d[i]) - 1.0) / eps * d[i] - q[i];
  return q;
}

Dissipation dissipation(const VectorField& v, const VectorField& d, const VectorField& q,
                        const ParameterSet& p) {
  const TensorField s = sym_gradient(v);
  const VectorField sd = apply_pointwise(s, d);
  const ScalarField dsd = contract(d, sd);
  Dissipation out;
  out.mu1 = p.mu1 * squared_l2(dsd);
  out.mu4 = p.mu4 * inner(s, s);
  out.directional = p.directional_viscosity() * inner(sd, sd);
  out.q = p.gamma * inner(q, q);
  return out;
}

double cross_term(const VectorField& v, const VectorField& d, const VectorField& q,
                  const ParameterSet& p) {
  const double c = p.cross_coefficient();
  if (c == 0.0) return 0.0;
  return c * inner(q, apply_pointwise(sym_gradient(v), d));
}

RelativeEnergyParts relative_energy_parts(const VectorField& v, const VectorField& d,
                                          const VectorField& vt, const VectorField& dt,
                                          const ElasticTensor& L, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("relative_energy needs eps > 0");
  const VectorField dv = v - vt;
  const TensorField dg = gradient_vec(d) - gradient_vec(dt);
  ScalarField dp(d.grid);
  for (std::size_t i = 0; i < d.size(); ++i) dp[i] = norm2(d[i]) - norm2(dt[i]);
  RelativeEnergyParts r;
  r.kinetic = 0.5 * inner(dv, dv);
  r.elastic = 0.5 * inner(dg, apply_lambda(L, dg));
  r.penalty = squared_l2(dp) / (4.0 * eps);
  return r;
}

double relative_energy(const VectorField& v, const VectorField& d, const VectorField& vt,
                       const VectorField& dt, const ElasticTensor& L, double eps) {
  return relative_energy_parts(v, d, vt, dt, L, eps).total();
}

Dissipation relative_dissipation_parts(const VectorField& v, const VectorField& d,
                                       const VectorField& q, const VectorField& vt,
                                       const VectorField& dt, const VectorField& qt,
                                       const ParameterSet& p) {
  const TensorField s = sym_gradient(v);
  const TensorField st = sym_gradient(vt);
  const VectorField sd = apply_pointwise(s, d);
  const VectorField sdt = apply_pointwise(st, dt);
  const ScalarField ddiff = contract(d, sd) - contract(dt, sdt);
  const TensorField sdiff = s - st;
  const VectorField dirdiff = sd - sdt;
  const VectorField qdiff = q - qt;
  Dissipation out;
  out.mu1 = p.mu1 * squared_l2(ddiff);
  out.mu4 = p.mu4 * inner(sdiff, sdiff);
  out.directional = p.directional_viscosity() * inner(dirdiff, dirdiff);
  out.q = p.gamma * inner(qdiff, qdiff);
  return out;
}

double relative_dissipation(const VectorField& v, const VectorField& d, const VectorField& q,
                            const VectorField& vt, const VectorField& dt, const VectorField& qt,
                            const ParameterSet& p) {
  return relative_dissipation_parts(v, d, q, vt, dt, qt, p).total();
}

AbsorptionCheck absorption_check(const VectorField& v, const VectorField& d, const VectorField& q,
                                 const VectorField& vt, const VectorField& dt,
                                 const VectorField& qt, const ParameterSet& p) {
  const VectorField dirdiff =
      apply_pointwise(sym_gradient(v), d) - apply_pointwise(sym_gradient(vt), dt);
  const VectorField qdiff = q - qt;
  AbsorptionCheck a;
  a.cross = std::abs(p.cross_coefficient() * inner(qdiff, dirdiff));
  a.budget = zeta(p) * (p.gamma * inner(qdiff, qdiff) +
                        p.directional_viscosity() * inner(dirdiff, dirdiff));
  return a;
}

GronwallNorms gronwall_norms(const VectorField& v, const VectorField& d, const VectorField& vt,
                             const VectorField& dt, const VectorField& qt,
                             const VectorField& dtime_dt) {
  GronwallNorms n;
  n.d_l6 = lp_norm(d, 6.0);
  n.dt_l6 = lp_norm(dt, 6.0);
  n.vt_w16 = w1p_norm(vt, 6.0);
  n.qt_l3 = lp_norm(qt, 3.0);
  n.dsd_l6 = lp_norm(contract(dt, apply_pointwise(sym_gradient(vt), dt)), 6.0);
  n.dtime_dt_l3 = lp_norm(dtime_dt, 3.0);
  n.penalty_l6 = lp_norm(penalty_density(dt), 6.0);
  n.v_l6 = lp_norm(v, 6.0);
  n.grad_dt_l2 = lp_norm(gradient_vec(dt), 2.0);
  return n;
}

double gronwall_K(const GronwallNorms& norms, double c) {
  return c * norms.first_factor() * norms.second_factor();
}

double gronwall_K(const VectorField& v, const VectorField& d, const VectorField& vt,
                  const VectorField& dt, const VectorField& qt, const VectorField& dtime_dt,
                  double c) {
  return gronwall_K(gronwall_norms(v, d, vt, dt, qt, dtime_dt), c);
}

EnergySample measure_energy(double t, const VectorField& v, const VectorField& d,
                            const VectorField& q, const VectorField& g, const ParameterSet& p,
                            const ElasticTensor& L) {
  EnergySample s;
  s.t = t;
  s.energy = total_energy(v, d, L, p.epsilon);
  s.diss = dissipation(v, d, q, p);
  s.cross = cross_term(v, d, q, p);
  s.forcing_power = inner(g, v);
  return s;
}

std::vector<double> cumulative_trapezoid(std::span<const double> t, std::span<const double> y) {
  if (t.size() != y.size()) throw std::invalid_argument("cumulative_trapezoid: length mismatch");
  std::vector<double> out(t.size(), 0.0);
  for (std::size_t k = 1; k < t.size(); ++k)
    out[k] = out[k - 1] + 0.5 * (t[k] - t[k - 1]) * (y[k] + y[k - 1]);
  return out;
}

std::vector<double> energy_inequality_residual(std::span<const EnergySample> trace) {
  std::vector<double> t(trace.size()), diss(trace.size()), supply(trace.size());
  for (std::size_t k = 0; k < trace.size(); ++k) {
    t[k] = trace[k].t;
    diss[k] = trace[k].diss.total();
    supply[k] = trace[k].forcing_power + trace[k].cross;
  }
  const auto diss_int = cumulative_trapezoid(t, diss);
  const auto supply_int = cumulative_trapezoid(t, supply);
  std::vector<double> r(trace.size(), 0.0);
  if (trace.empty()) return r;
  const double e0 = trace.front().energy.total();
  for (std::size_t k = 0; k < trace.size(); ++k)
    r[k] = (trace[k].energy.total() - e0) + (diss_int[k] - supply_int[k]);
  return r;
}

std::vector<double> energy_equality_residual(std::span<const EnergySample> trace) {
  return energy_inequality_residual(trace);
}

}  // namespace leslie
