#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "leslie/config.hpp"
#include "leslie/dynamics.hpp"
#include "leslie/energetics.hpp"
#include "leslie/random.hpp"

namespace leslie {

/// Sum of low Fourier modes (|k_a| <= modes) with seeded normal coefficients
/// decaying like 1/(1+|k|^2), scaled to max norm `amplitude`. Periodic in the
/// domain; on dirichlet grids it is multiplied by a sine window and zeroed on
/// the boundary layer.
VectorField smooth_random_field(const Grid& g, Rng& rng, int modes, double amplitude);

/// As above with mean zero.
VectorField mean_zero_random_field(const Grid& g, Rng& rng, int modes, double amplitude);

/// Projected smooth random velocity with max norm `amplitude`.
VectorField divergence_free_random_field(const Grid& g, Rng& rng, int modes, double amplitude);

/// Initial state of the catalog entry in `spec`.
State initial_state(const Grid& g, const InitialSpec& spec);

// ---------------------------------------------------------------- energy

struct EnergyReport {
  std::vector<EnergySample> trace;
  std::vector<double> residual;
  double e0 = 0.0;
  double max_residual = 0.0;      // max_t residual(t), signed
  double max_step_increase = 0.0; // largest E(t_{k+1}) - E(t_k), 0 if non-increasing
  bool parodi = false;
  bool cross_zero = true;         // every sample has cross == 0 exactly (Parodi runs)
  bool residual_ok = false;
  bool monotone_ok = false;
  double monotone_tol = 1e-10;
  std::vector<std::string> warnings;
  std::string failure;            // non-finite blow-up message, empty otherwise
  bool pass() const { return residual_ok && monotone_ok && (!parodi || cross_zero); }
};

/// One trajectory from the configured initial data with the energy bookkeeping.
/// Every step is sampled for the checks; trace and residual are then thinned to
/// the configured output_every. Passes iff residual(t) <= energy_tol E(0) at
/// every step, the energy never rises by more than monotone_tol E(0) per step, and (for Parodi
/// parameters) the cross term is identically zero. A blow-up is a failure, not
/// an exception.
EnergyReport energy_monitor(const RunConfig& cfg, double monotone_tol = 1e-10);

// ---------------------------------------------------------------- comparison

struct Perturbation {
  std::uint64_t seed = 7;
  double amplitude = 1e-3;
};

struct RelativeSample {
  double t = 0.0;
  double E = 0.0;
  double W = 0.0;
  double K = 0.0;      // at the configured constant
  double K_hat = 0.0;  // with c = 1
  double int_K_hat = 0.0;
  double bound = 0.0;  // E(0) exp(c int K_hat)
  double cross = 0.0;  // |(gamma(mu2+mu3) - lambda)(q - q~, Sd - S~d~)|
  double budget = 0.0; // zeta times the matching part of W
  EnergySample perturbed;
};

struct ComparisonReport {
  double delta0 = 0.0;
  double gronwall_c = 1.0;
  double zeta = 0.0;
  std::vector<RelativeSample> trace;
  double minimal_c = 0.0;
  bool bound_satisfied = false;
  double max_E = 0.0;
  double max_E_over_E0 = 0.0;
  double initial_free_energy = 0.0;
  double min_absorption_slack = 0.0;
  std::vector<std::string> warnings;
};

/// Runs the reference trajectory from the configured data and a perturbed one
/// from (v0 + delta xi_v, d0 + delta xi_d) in lock step and records E, W and
/// K. Time derivatives of the reference director use centered differences
/// (one sided at the ends).
ComparisonReport weak_strong_experiment(const RunConfig& base, const Perturbation& pert);

// ---------------------------------------------------------------- identities

struct IbpRow {
  int n = 0;
  std::uint64_t seed = 0;
  double product_rule = 0.0;  // telescoped d/dt (v, v~)
  double elastic_spatial = 0.0;
  double elastic_temporal = 0.0;
  double modulus_rule = 0.0;  // (|d|^2, |d~|^2) with the factor 2 chain rule
  double worst() const;
};

struct IbpReport {
  std::vector<IbpRow> rows;
  double tolerance = 1e-12;
  double worst() const;
  bool pass() const { return worst() <= tolerance; }
};

/// Relative residuals of the discrete integration-by-parts identities on
/// periodic grids, for smooth random sequences (or constants if `constant`).
IbpReport ibp_suite(const std::vector<int>& sizes, const std::vector<std::uint64_t>& seeds,
                    int dim = 2, bool constant = false);

// ---------------------------------------------------------------- convergence

enum class ConvergenceMode { space, time };
std::string to_string(ConvergenceMode m);
ConvergenceMode convergence_mode_from_string(const std::string& s);

struct ConvergenceRow {
  int n = 0;
  double dt = 0.0;
  int steps = 0;
  double error = 0.0;  // space: L2 error vs exact; time: L2 difference to the next finer run
  double order = 0.0;  // 0 on the first row
};

struct ConvergenceReport {
  ConvergenceMode mode = ConvergenceMode::space;
  std::vector<ConvergenceRow> rows;
  double expected = 0.0;
  double min_order() const;
  bool pass() const;
};

struct ConvergenceOptions {
  double t_end = 0.1;
  std::vector<int> sizes{16, 32, 64};               // space mode
  int time_n = 16;                                  // time mode
  std::vector<double> dts{1e-3, 5e-4, 2.5e-4, 1.25e-4};
  Scheme scheme = Scheme::explicit_euler;
  /// Stationary constant solution with zero source (error must vanish).
  bool stationary = false;
};

/// Manufactured solution of the v = 0 director flow d_t = -gamma q + s.
ConvergenceReport convergence_study(ConvergenceMode mode, const ConvergenceOptions& opts = {});

}  // namespace leslie
