#include "leslie/material.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace leslie {

VectorField Forcing::evaluate(const Grid& grid, double t) const {
  VectorField g(grid);
  switch (kind) {
    case Kind::zero:
      break;
    case Kind::constant:
      for (auto& v : g.values) v = {amplitude, 0.0, 0.0};
      break;
    case Kind::sinusoidal: {
      const double ly = grid.length(1);
      const double tf = std::cos(2.0 * std::numbers::pi * frequency * t);
      for (std::size_t i = 0; i < g.size(); ++i) {
        const double y = grid.position(i)[1];
        g[i] = {amplitude * std::sin(2.0 * std::numbers::pi * y / ly) * tf, 0.0, 0.0};
      }
      break;
    }
  }
  if (grid.bc == Boundary::dirichlet)
    for (std::size_t i = 0; i < g.size(); ++i)
      if (grid.on_boundary(i)) g[i] = {};
  return g;
}

std::string to_string(Forcing::Kind k) {
  switch (k) {
    case Forcing::Kind::zero: return "zero";
    case Forcing::Kind::constant: return "constant";
    case Forcing::Kind::sinusoidal: return "sinusoidal";
  }
  return "zero";
}

Forcing::Kind forcing_kind_from_string(const std::string& s) {
  if (s == "zero") return Forcing::Kind::zero;
  if (s == "constant") return Forcing::Kind::constant;
  if (s == "sinusoidal") return Forcing::Kind::sinusoidal;
  throw std::invalid_argument("unknown forcing '" + s + "' (expected zero|constant|sinusoidal)");
}

ParameterSet default_parameters() { return ParameterSet{}; }

std::string describe(Condition c) {
  switch (c) {
    case Condition::mu1_positive: return "μ₁ > 0";
    case Condition::mu4_positive: return "μ₄ > 0";
    case Condition::gamma_positive: return "γ > 0";
    case Condition::directional_positive: return "(μ₅+μ₆) − λ(μ₂+μ₃) > 0";
    case Condition::coupling_bound: return "4γ((μ₅+μ₆) − λ(μ₂+μ₃)) > (γ(μ₂+μ₃) − λ)²";
  }
  return {};
}

std::vector<Condition> validate(const ParameterSet& p) {
  std::vector<Condition> failed;
  if (!(p.mu1 > 0.0)) failed.push_back(Condition::mu1_positive);
  if (!(p.mu4 > 0.0)) failed.push_back(Condition::mu4_positive);
  if (!(p.gamma > 0.0)) failed.push_back(Condition::gamma_positive);
  const double dv = p.directional_viscosity();
  if (!(dv > 0.0)) failed.push_back(Condition::directional_positive);
  const double cc = p.cross_coefficient();
  if (!(4.0 * p.gamma * dv > cc * cc)) failed.push_back(Condition::coupling_bound);
  return failed;
}

double zeta(const ParameterSet& p) {
  const auto failed = validate(p);
  if (!failed.empty())
    throw std::invalid_argument("zeta needs a dissipative parameter set; violated: " + describe(failed.front()));
  return std::abs(p.cross_coefficient()) / std::sqrt(4.0 * p.gamma * p.directional_viscosity());
}

bool is_parodi(const ParameterSet& p, double tol) {
  return std::abs(p.cross_coefficient()) <= tol * (1.0 + std::abs(p.lambda));
}

}  // namespace leslie
