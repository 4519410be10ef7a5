// Command-line front end: validate, simulate, compare, energy-check, ibp-check, converge.
// Exit codes: 0 pass, 1 failed check or simulation, 2 usage or configuration error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "leslie/config.hpp"
#include "leslie/experiments.hpp"
#include "leslie/io.hpp"

using namespace leslie;

namespace {

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_usage = 2;

void emit_csv(const std::string& out, const std::string& csv) {
  if (out.empty() || out == "-")
    std::cout << csv;
  else
    write_file_atomic(out, csv);
}

int summary(bool pass, const std::string& what) {
  std::cout << (pass ? "PASS " : "FAIL ") << what << std::endl;
  return pass ? exit_pass : exit_fail;
}

std::string g17(double x) { return format_double(x); }

std::string describe_run(const RunConfig& c) {
  std::ostringstream os;
  os << "grid " << c.grid.dim << "D n=" << c.grid.n[0] << " bc=" << to_string(c.grid.bc)
     << " dt=" << g17(c.stepper.dt) << " t_end=" << g17(c.stepper.t_end)
     << " scheme=" << to_string(c.stepper.scheme);
  return os.str();
}

int cmd_validate(const std::string& path) {
  const RunConfig c = load_config(path);
  const ParameterSet& p = c.material.params;
  const double bound = stability_bound(c.grid, c.material);
  std::ostringstream os;
  os << "config " << path << ": " << describe_run(c) << " zeta=" << g17(zeta(p))
     << " parodi=" << (is_parodi(p) ? "yes" : "no") << " dt_bound=" << g17(bound);
  if (c.stepper.scheme == Scheme::explicit_euler && c.stepper.dt > bound)
    std::cerr << "warning: dt exceeds the explicit stability bound " << g17(bound) << "\n";
  return summary(true, os.str());
}

int cmd_simulate(const std::string& path, bool allow_invalid, const std::string& snapdir,
                 const std::string& out) {
  const RunConfig c = load_config(path, allow_invalid);
  if (allow_invalid) {
    for (Condition bad : validate(c.material.params))
      std::cerr << "warning: parameters violate " << describe(bad) << "\n";
  }
  if (!snapdir.empty()) std::filesystem::create_directories(snapdir);
  int index = 0;
  RunOptions opts;
  if (!snapdir.empty()) {
    opts.observer = [&](const State& s, const EnergySample&) {
      char name[32];
      std::snprintf(name, sizeof name, "snap_%06d.bin", index++);
      write_snapshot(s, (std::filesystem::path(snapdir) / name).string());
    };
  }
  const State s0 = initial_state(c.grid, c.initial);
  try {
    const Trajectory tr = run(s0, c.stepper, c.material, opts);
    for (const auto& w : tr.warnings) std::cerr << "warning: " << w << "\n";
    const auto rows = rows_from_energy(tr.energy);
    emit_csv(out, format_csv(rows));
    std::ostringstream os;
    os << "simulate " << describe_run(c) << " steps=" << tr.steps << " E0=" << g17(rows.front().total)
       << " E_end=" << g17(rows.back().total);
    return summary(true, os.str());
  } catch (const SimulationError& e) {
    if (!snapdir.empty())
      write_snapshot(e.last_valid(), (std::filesystem::path(snapdir) / "last_valid.bin").string());
    return summary(false, std::string("simulate: ") + e.what());
  }
}

int cmd_energy(const std::string& path, const std::string& out) {
  const RunConfig c = load_config(path);
  const EnergyReport r = energy_monitor(c);
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  emit_csv(out, format_csv(rows_from_energy(r.trace)));
  std::ostringstream os;
  os << "energy-check " << describe_run(c) << " E0=" << g17(r.e0)
     << " max_residual/E0=" << g17(r.e0 > 0 ? r.max_residual / r.e0 : r.max_residual)
     << " max_step_increase/E0=" << g17(r.e0 > 0 ? r.max_step_increase / r.e0 : r.max_step_increase)
     << (r.parodi ? (r.cross_zero ? " cross=0" : " cross!=0") : "");
  return summary(r.pass(), os.str());
}

int cmd_compare(const std::string& path, double delta, std::uint64_t seed, const std::string& out) {
  const RunConfig c = load_config(path);
  const ComparisonReport r = weak_strong_experiment(c, {seed, delta});
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  emit_csv(out, format_csv(rows_from_comparison(r)));
  std::ostringstream os;
  os << "compare delta=" << g17(delta) << " seed=" << seed << " E0=" << g17(r.trace.front().E)
     << " max_E=" << g17(r.max_E) << " max_E/E0=" << g17(r.max_E_over_E0)
     << " minimal_c=" << g17(r.minimal_c) << " c=" << g17(r.gronwall_c)
     << " bound=" << (r.bound_satisfied ? "holds" : "violated");
  return summary(r.bound_satisfied, os.str());
}

int cmd_ibp(const std::vector<int>& ns, const std::vector<std::uint64_t>& seeds) {
  const IbpReport r = ibp_suite(ns, seeds);
  std::cout << "n,seed,product_rule,elastic_spatial,elastic_temporal,modulus_rule\n";
  for (const auto& row : r.rows)
    std::cout << row.n << ',' << row.seed << ',' << g17(row.product_rule) << ','
              << g17(row.elastic_spatial) << ',' << g17(row.elastic_temporal) << ','
              << g17(row.modulus_rule) << '\n';
  return summary(r.pass(), "ibp-check worst relative residual " + g17(r.worst()) + " (tol " +
                               g17(r.tolerance) + ")");
}

int cmd_converge(const std::string& mode_name) {
  const ConvergenceMode mode = convergence_mode_from_string(mode_name);
  const ConvergenceReport r = convergence_study(mode);
  std::cout << "n,dt,steps,error,order\n";
  for (const auto& row : r.rows)
    std::cout << row.n << ',' << g17(row.dt) << ',' << row.steps << ',' << g17(row.error) << ','
              << g17(row.order) << '\n';
  return summary(r.pass(), "converge " + mode_name + " min order " + g17(r.min_order()) +
                               " (expected >= " + g17(r.expected) + ")");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Penalized Ericksen-Leslie simulator and verification harness"};
  app.require_subcommand(1);

  std::string config, out, snapdir, mode = "space";
  bool allow_invalid = false;
  double delta = 1e-3;
  std::uint64_t seed = 7;
  std::vector<int> ns{32};
  std::vector<std::uint64_t> seeds{1};

  auto* validate_cmd = app.add_subcommand("validate", "Parse a config and check the parameter conditions");
  validate_cmd->add_option("--config", config, "Config file")->required();

  auto* simulate_cmd = app.add_subcommand("simulate", "Run one trajectory");
  simulate_cmd->add_option("--config", config, "Config file")->required();
  simulate_cmd->add_flag("--allow-invalid", allow_invalid, "Run non-dissipative parameter sets");
  simulate_cmd->add_option("--snapshots", snapdir, "Directory for binary snapshots");
  simulate_cmd->add_option("--out", out, "Trace CSV (default stdout)");

  auto* compare_cmd = app.add_subcommand("compare", "Relative-energy comparison of two runs");
  compare_cmd->add_option("--config", config, "Config file")->required();
  compare_cmd->add_option("--delta", delta, "Perturbation size")->check(CLI::NonNegativeNumber);
  compare_cmd->add_option("--seed", seed, "Perturbation seed");
  compare_cmd->add_option("--out", out, "Relative trace CSV (default stdout)");

  auto* energy_cmd = app.add_subcommand("energy-check", "Energy inequality monitor");
  energy_cmd->add_option("--config", config, "Config file")->required();
  energy_cmd->add_option("--out", out, "Trace CSV (default stdout)");

  auto* ibp_cmd = app.add_subcommand("ibp-check", "Discrete integration-by-parts identities");
  ibp_cmd->add_option("--n", ns, "Grid sizes")->check(CLI::Range(4, 512));
  ibp_cmd->add_option("--seed", seeds, "Seeds");

  auto* converge_cmd = app.add_subcommand("converge", "Manufactured-solution refinement study");
  converge_cmd->add_option("--mode", mode, "space or time")->check(CLI::IsMember({"space", "time"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (*validate_cmd) return cmd_validate(config);
    if (*simulate_cmd) return cmd_simulate(config, allow_invalid, snapdir, out);
    if (*compare_cmd) return cmd_compare(config, delta, seed, out);
    if (*energy_cmd) return cmd_energy(config, out);
    if (*ibp_cmd) return cmd_ibp(ns, seeds);
    if (*converge_cmd) return cmd_converge(mode);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cout << "FAIL configuration: " << e.what() << std::endl;
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cout << "FAIL configuration: " << e.what() << std::endl;
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cout << "FAIL " << e.what() << std::endl;
    return exit_fail;
  }
  return exit_usage;
}
