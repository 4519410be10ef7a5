#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "leslie/dynamics.hpp"
#include "leslie/grid.hpp"
#include "leslie/material.hpp"

namespace leslie {

/// Initial data catalog.
///   constant:      d = director, v = 0
///   perturbed:     d = normalize(director + amplitude w) with one fixed smooth mode w
///   smooth_random: d = normalize(director + amplitude xi) with seeded smooth random xi
/// Any kind adds a seeded divergence-free velocity of size velocity_amplitude.
struct InitialSpec {
  enum class Kind { constant, perturbed, smooth_random };
  Kind kind = Kind::smooth_random;
  Vec3 director{1.0, 0.0, 0.0};
  std::uint64_t seed = 1;
  double amplitude = 0.3;
  double velocity_amplitude = 0.0;
  int modes = 3;
};

std::string to_string(InitialSpec::Kind k);
InitialSpec::Kind initial_kind_from_string(const std::string& s);

struct RunConfig {
  Grid grid = Grid::cube(2, 32);
  Material material;
  StepperConfig stepper;
  InitialSpec initial;
  /// Constant c of the Gronwall factor used for the bound check.
  double gronwall_c = 1.0;
  /// Energy monitor tolerance, relative to the initial energy.
  double energy_tol = 1e-6;
};

/// Parse or validation failure; line is 0 when the problem is not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& msg)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Sectioned key = value text with sections [grid], [material], [stepper] and
/// [initial]. '#' starts a comment. Omitted keys keep the RunConfig defaults;
/// unknown sections or keys are errors. Unless allow_invalid is set, parameter
/// sets that are not dissipative are rejected with the failing inequality.
RunConfig parse_config(const std::string& text, bool allow_invalid = false);
RunConfig load_config(const std::string& path, bool allow_invalid = false);

/// Inverse of parse_config (17 significant digits, every key written).
std::string format_config(const RunConfig& cfg);

}  // namespace leslie
