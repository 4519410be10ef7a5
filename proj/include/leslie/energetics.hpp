#pragma once

#include <span>
#include <vector>

#include "leslie/grid.hpp"
#include "leslie/material.hpp"
#include "leslie/tensor.hpp"

namespace leslie {

struct EnergyBreakdown {
  double kinetic = 0.0;  // 1/2 ||v||^2
  double elastic = 0.0;  // 1/2 (grad d : L : grad d)
  double penalty = 0.0;  // 1/(4 eps) || |d|^2 - 1 ||^2
  double total() const { return kinetic + elastic + penalty; }
};

/// Free energy of a director field; kinetic is left at zero.
EnergyBreakdown free_energy(const VectorField& d, const ElasticTensor& L, double eps);
double kinetic_energy(const VectorField& v);
EnergyBreakdown total_energy(const VectorField& v, const VectorField& d, const ElasticTensor& L,
                             double eps);

/// q = -Delta_L d + (|d|^2 - 1) d / eps. With the adjoint stencil pair this is
/// the exact gradient of the discrete free energy.
VectorField variational_derivative(const VectorField& d, const ElasticTensor& L, double eps);

/// The four dissipation channels of one trajectory.
struct Dissipation {
  double mu1 = 0.0;          // mu1 || d . S d ||^2
  double mu4 = 0.0;          // mu4 || S ||^2
  double directional = 0.0;  // ((mu5+mu6) - lambda(mu2+mu3)) || S d ||^2
  double q = 0.0;            // gamma || q ||^2
  double total() const { return mu1 + mu4 + directional + q; }
};

Dissipation dissipation(const VectorField& v, const VectorField& d, const VectorField& q,
                        const ParameterSet& p);

/// (gamma(mu2+mu3) - lambda) (q, S d) with S = (grad v)_sym.
double cross_term(const VectorField& v, const VectorField& d, const VectorField& q,
                  const ParameterSet& p);

struct RelativeEnergyParts {
  double kinetic = 0.0;
  double elastic = 0.0;
  double penalty = 0.0;
  double total() const { return kinetic + elastic + penalty; }
};

RelativeEnergyParts relative_energy_parts(const VectorField& v, const VectorField& d,
                                          const VectorField& vt, const VectorField& dt,
                                          const ElasticTensor& L, double eps);
double relative_energy(const VectorField& v, const VectorField& d, const VectorField& vt,
                       const VectorField& dt, const ElasticTensor& L, double eps);

/// Relative dissipation, channel by channel.
Dissipation relative_dissipation_parts(const VectorField& v, const VectorField& d,
                                       const VectorField& q, const VectorField& vt,
                                       const VectorField& dt, const VectorField& qt,
                                       const ParameterSet& p);
double relative_dissipation(const VectorField& v, const VectorField& d, const VectorField& q,
                            const VectorField& vt, const VectorField& dt, const VectorField& qt,
                            const ParameterSet& p);

/// Left and right side of the zeta-absorption estimate at one instant:
///   |cross| = |(gamma(mu2+mu3) - lambda) (q - qt, S d - St dt)|
///   budget  = zeta (gamma ||q - qt||^2 + ((mu5+mu6) - lambda(mu2+mu3)) ||S d - St dt||^2)
struct AbsorptionCheck {
  double cross = 0.0;
  double budget = 0.0;
  double slack() const { return budget - cross; }
};

AbsorptionCheck absorption_check(const VectorField& v, const VectorField& d, const VectorField& q,
                                 const VectorField& vt, const VectorField& dt,
                                 const VectorField& qt, const ParameterSet& p);

/// Norms entering the Gronwall factor. Weak-run quantities: v, d. Reference-run
/// quantities: everything with a tilde.
struct GronwallNorms {
  double d_l6 = 0.0;           // ||d||_{L6}
  double dt_l6 = 0.0;          // ||d~||_{L6}
  double vt_w16 = 0.0;         // ||v~||_{W^{1,6}}
  double qt_l3 = 0.0;          // ||q~||_{L3}
  double dsd_l6 = 0.0;         // ||d~ . S~ d~||_{L6}
  double dtime_dt_l3 = 0.0;    // ||d/dt d~||_{L3}
  double penalty_l6 = 0.0;     // || |d~|^2 - 1 ||_{L6}
  double v_l6 = 0.0;           // ||v||_{L6}
  double grad_dt_l2 = 0.0;     // ||grad d~||_{L2}

  double first_factor() const { return 1.0 + d_l6 * d_l6 + dt_l6 * dt_l6; }
  /// The time derivative enters unsquared, all other norms squared.
  double second_factor() const {
    return vt_w16 * vt_w16 + qt_l3 * qt_l3 + dsd_l6 * dsd_l6 + dtime_dt_l3 +
           penalty_l6 * penalty_l6 + v_l6 * v_l6 + grad_dt_l2 * grad_dt_l2;
  }
};

GronwallNorms gronwall_norms(const VectorField& v, const VectorField& d, const VectorField& vt,
                             const VectorField& dt, const VectorField& qt,
                             const VectorField& dtime_dt);

/// c * first_factor * second_factor
double gronwall_K(const GronwallNorms& norms, double c);
double gronwall_K(const VectorField& v, const VectorField& d, const VectorField& vt,
                  const VectorField& dt, const VectorField& qt, const VectorField& dtime_dt,
                  double c);

/// One stored sample of a trajectory's energy bookkeeping.
struct EnergySample {
  double t = 0.0;
  EnergyBreakdown energy;
  Dissipation diss;
  double cross = 0.0;          // (gamma(mu2+mu3) - lambda)(q, S d)
  double forcing_power = 0.0;  // (g, v)
};

EnergySample measure_energy(double t, const VectorField& v, const VectorField& d,
                            const VectorField& q, const VectorField& g, const ParameterSet& p,
                            const ElasticTensor& L);

/// residual(t_k) = [energy(t_k) + int_0^t_k dissipation] - [energy(0) + int_0^t_k (forcing + cross)]
/// with trapezoidal time integrals over the stored samples. Non-positive values
/// mean the energy inequality holds.
std::vector<double> energy_inequality_residual(std::span<const EnergySample> trace);

/// Same expression, read as an equality (|residual| small) for resolved runs.
std::vector<double> energy_equality_residual(std::span<const EnergySample> trace);

/// Running trapezoid: out[k] = int_{t_0}^{t_k} y.
std::vector<double> cumulative_trapezoid(std::span<const double> t, std::span<const double> y);

}  // namespace leslie
