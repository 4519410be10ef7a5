#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "leslie/energetics.hpp"
#include "leslie/grid.hpp"
#include "leslie/linsolve.hpp"
#include "leslie/material.hpp"

namespace leslie {

/// One sample of the coupled system. `p` is the multiplier of the discrete
/// projection (it absorbs grad F), not a claim about the analytic pressure.
struct State {
  double t = 0.0;
  VectorField v;
  VectorField d;
  ScalarField p;

  const Grid& grid() const { return d.grid; }
  friend bool operator==(const State&, const State&) = default;
};

/// Start-of-run state with zero velocity and pressure.
State make_state(const VectorField& d, double t = 0.0);

enum class Scheme {
  /// Forward Euler on every term followed by the projection.
  explicit_euler,
  /// Implicit elasticity and mu4 diffusion, explicit penalty, transport and coupling.
  semi_implicit,
};

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

struct StepperConfig {
  double dt = 1e-4;
  double t_end = 0.1;
  double poisson_tol = 1e-10;
  int poisson_max_iter = 5000;
  int output_every = 1;
  Scheme scheme = Scheme::explicit_euler;
  /// Tolerance of the implicit director / viscous solves (semi-implicit scheme).
  double solver_tol = 1e-12;
  int solver_max_iter = 5000;

  /// Throws std::invalid_argument on dt <= 0, t_end < 0, poisson_tol outside
  /// (0, 1e-6] or output_every < 1.
  void check() const;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by `run` when a step produces non-finite values.
class SimulationError : public std::runtime_error {
 public:
  SimulationError(const std::string& what, State last_valid)
      : std::runtime_error(what), last_valid_(std::move(last_valid)) {}
  const State& last_valid() const { return last_valid_; }

 private:
  State last_valid_;
};

/// T^L = mu1 (d.Sd) d⊗d + mu4 S - gamma(mu2+mu3) (d⊗q)_sym - (d⊗q)_skw
///       + ((mu5+mu6) - lambda(mu2+mu3)) (d⊗Sd)_sym,  S = (grad v)_sym.
/// The skew part is -(d⊗q)_skw so that it balances the co-rotation (grad v)_skw d
/// of the director equation in the energy law.
TensorField leslie_stress(const VectorField& v, const VectorField& d, const VectorField& q,
                          const ParameterSet& p);

/// -(grad d)^T q, the representative of div T^E once grad F is moved into the pressure.
VectorField ericksen_force(const VectorField& d, const VectorField& q);

/// -(v.grad)d + (grad v)_skw d - lambda (grad v)_sym d - gamma q
VectorField director_rhs(const VectorField& v, const VectorField& d, const VectorField& q,
                         const ParameterSet& p);

/// -(v.grad)v + div T^L - ericksen_force + g, before projection.
VectorField momentum_rhs(const VectorField& v, const VectorField& d, const VectorField& q,
                         const VectorField& g, const ParameterSet& p);

struct Projection {
  VectorField u;   // divergence-free part
  ScalarField phi; // u_in = u + grad phi, mean zero
  SolveReport report;
};

/// Discrete Leray projection. Periodic grids solve -Lap phi = -div u by CG;
/// dirichlet grids keep u = 0 on the boundary layer and solve the constraint on
/// the interior by CGLS. Throws SolverError if tol is not reached.
Projection project_divfree(const VectorField& u, double tol, int max_iter,
                           const ScalarField* initial_phi = nullptr);

/// Largest dt for which the explicit scheme is energy stable in practice
/// (diffusive, penalty and viscous limits with a safety factor of 1/2).
double stability_bound(const Grid& grid, const Material& m);

struct StepDiagnostics {
  double cfl = 0.0;
  bool cfl_warning = false;
  int poisson_iterations = 0;
  int solver_iterations = 0;
};

/// Director update alone (velocity frozen), optionally with an extra source:
/// used by the manufactured-solution studies.
VectorField advance_director(const VectorField& v, const VectorField& d, const Material& m,
                             double dt, Scheme scheme, const VectorField* source,
                             const StepperConfig& cfg);

/// One time step of length `dt` (cfg.dt unless given).
State step(const State& s, const StepperConfig& cfg, const Material& m,
           StepDiagnostics* diag = nullptr, double dt = 0.0);

struct Trajectory {
  std::vector<State> states;          // stored only when requested
  std::vector<EnergySample> energy;   // one per output time
  std::vector<std::string> warnings;
  int steps = 0;
};

struct RunOptions {
  bool store_states = false;
  /// Called with every output state.
  std::function<void(const State&, const EnergySample&)> observer;
};

/// Iterates `step` from `initial` to cfg.t_end, recording the energy
/// bookkeeping every cfg.output_every steps and at the final time.
Trajectory run(const State& initial, const StepperConfig& cfg, const Material& m,
               const RunOptions& opts = {});

/// Energy bookkeeping of a single state at its own time.
EnergySample sample_energy(const State& s, const Material& m);

}  // namespace leslie
