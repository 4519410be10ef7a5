#pragma once

#include <string>
#include <vector>

#include "leslie/grid.hpp"

namespace leslie {

/// Body force catalog.
///   zero:       g = 0
///   constant:   g = amplitude e_1
///   sinusoidal: g = amplitude sin(2 pi y / L_y) cos(2 pi frequency t) e_1
struct Forcing {
  enum class Kind { zero, constant, sinusoidal };
  Kind kind = Kind::zero;
  double amplitude = 0.0;
  double frequency = 0.0;

  bool is_zero() const { return kind == Kind::zero || amplitude == 0.0; }
  VectorField evaluate(const Grid& grid, double t) const;
};

std::string to_string(Forcing::Kind k);
Forcing::Kind forcing_kind_from_string(const std::string& s);

/// Leslie coefficients, relaxation parameter and forcing. mu2, mu3 and mu5, mu6
/// are kept separately although only their sums enter the equations.
struct ParameterSet {
  double lambda = 1.0;
  double gamma = 1.0;
  double mu1 = 1.0;
  double mu2 = 0.5;
  double mu3 = 0.5;
  double mu4 = 1.0;
  double mu5 = 1.0;
  double mu6 = 1.0;
  double epsilon = 0.1;
  Forcing forcing;

  double mu23() const { return mu2 + mu3; }
  double mu56() const { return mu5 + mu6; }
  /// (mu5 + mu6) - lambda (mu2 + mu3), the coefficient of the |(grad v)_sym d|^2 channel.
  double directional_viscosity() const { return mu56() - lambda * mu23(); }
  /// gamma (mu2 + mu3) - lambda, the coefficient of the energy cross term.
  double cross_coefficient() const { return gamma * mu23() - lambda; }
};

/// The demo set: Parodi's relation holds, so the cross term vanishes.
ParameterSet default_parameters();

enum class Condition { mu1_positive, mu4_positive, gamma_positive, directional_positive, coupling_bound };

/// Human-readable inequality, e.g. "μ₁ > 0".
std::string describe(Condition c);

/// Conditions that fail; an empty result means the set is dissipative.
std::vector<Condition> validate(const ParameterSet& p);

/// Smallest zeta with (gamma(mu2+mu3) - lambda)^2 <= zeta^2 4 gamma ((mu5+mu6) - lambda(mu2+mu3)).
/// Throws std::invalid_argument if the set does not validate.
double zeta(const ParameterSet& p);

/// |gamma (mu2+mu3) - lambda| <= tol (1 + |lambda|)
bool is_parodi(const ParameterSet& p, double tol = 1e-12);

/// Everything constitutive a simulation needs.
struct Material {
  ParameterSet params;
  ElasticTensor elastic = ElasticTensor::isotropic(1.0);
};

}  // namespace leslie
