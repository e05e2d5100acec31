#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <bondalt/errors.hpp>
#include <bondalt/version.hpp>

#include "commands.hpp"

namespace {

// Flag wiring shared by campaign and sweep. Flags beat the config file,
// which beats built-in defaults, so the config file is applied first and a
// flag only lands when it was actually given on the command line.
struct CommonFlags {
  std::string config_path;
  double theta = 0.0;
  double theta_min = 0.0;
  double theta_max = 0.0;
  int theta_steps = 0;
  int trials = 0;
  int chi = 0;
  std::uint64_t seed = 0;
  std::string reference;
  std::string out;
  int workers = 0;
  double pin_strength = 0.0;
  int pin_sweeps = 0;
  double jump_threshold = 0.0;
  bool include_boundaries = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f, bool sweep_grid) {
  cmd->add_option("--config", f.config_path, "JSON config document (flags win over it)");
  if (sweep_grid) {
    cmd->add_option("--theta-min", f.theta_min, "sweep start angle (radians)");
    cmd->add_option("--theta-max", f.theta_max, "sweep end angle (radians, exclusive)");
    cmd->add_option("--theta-steps", f.theta_steps, "number of grid points");
    cmd->add_option("--jump-threshold", f.jump_threshold,
                    "fidelity jump that counts as a discontinuity (default 1e-3)");
    cmd->add_flag("--include-boundaries", f.include_boundaries,
                  "run campaigns on boundary grid points too instead of only flagging them");
  } else {
    cmd->add_option("--theta", f.theta, "coupling angle theta (radians, or via config)");
  }
  cmd->add_option("--trials", f.trials, "random initial states per theta (default 30)");
  cmd->add_option("--chi", f.chi, "bond dimension cap (default 32)");
  cmd->add_option("--seed", f.seed, "master seed; trial seeds derive from (seed, trial)");
  cmd->add_option("--reference", f.reference,
                  "reference state file, or 'generate' for a seed-derived product state");
  cmd->add_option("--out", f.out, "output CSV path (or via config)");
  cmd->add_option("--workers", f.workers,
                  "parallel executors (default: BONDALT_WORKERS env var, then hardware)");
  cmd->add_option("--pin-strength", f.pin_strength,
                  "symmetry-breaking bias strength (default 1e-3, 0 disables)");
  cmd->add_option("--pin-sweeps", f.pin_sweeps, "sweeps with the bias applied (default 50)");
}

bondalt::cli::SweepConfig build_config(const CLI::App* cmd, const CommonFlags& f) {
  auto given = [cmd](const std::string& name) {
    const CLI::Option* o = cmd->get_option_no_throw(name);
    return o != nullptr && o->count() > 0;
  };
  bondalt::cli::SweepConfig cfg;
  if (given("--config")) {
    bondalt::cli::apply_config_file(cfg, f.config_path);
  }
  if (given("--theta")) cfg.theta = f.theta;
  if (given("--theta-min")) cfg.theta_min = f.theta_min;
  if (given("--theta-max")) cfg.theta_max = f.theta_max;
  if (given("--theta-steps")) cfg.theta_steps = f.theta_steps;
  if (given("--trials")) cfg.n_trials = f.trials;
  if (given("--chi")) cfg.chi_max = f.chi;
  if (given("--seed")) cfg.master_seed = f.seed;
  if (given("--reference")) cfg.reference = f.reference;
  if (given("--out")) cfg.out = f.out;
  if (given("--workers")) cfg.workers = f.workers;
  if (given("--pin-strength")) cfg.schedule.pin_strength = f.pin_strength;
  if (given("--pin-sweeps")) cfg.schedule.pin_sweeps = f.pin_sweeps;
  if (given("--jump-threshold")) cfg.jump_threshold = f.jump_threshold;
  if (given("--include-boundaries")) cfg.include_boundaries = f.include_boundaries;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bond-alternating Ising chain groundstate campaigns via iTEBD on period-4 iMPS"};
  app.set_version_flag("--version", std::string("bondalt ") + bondalt::kVersion);
  app.require_subcommand(1);

  // make-reference
  std::uint64_t ref_seed = 1;
  int ref_period = 4;
  int ref_chi = 1;
  std::string ref_out;
  auto* mk = app.add_subcommand("make-reference",
                                "generate and persist a random reference state");
  mk->add_option("--seed", ref_seed, "seed for the reference state (default 1)");
  mk->add_option("--period", ref_period, "unit cell length (default 4)");
  mk->add_option("--chi", ref_chi,
                 "reference bond dimension; 1 gives a product state (default), larger values "
                 "give an entangled random reference");
  mk->add_option("--out", ref_out, "output state file")->required();

  // campaign
  CommonFlags cf;
  auto* campaign = app.add_subcommand(
      "campaign", "fixed-theta degeneracy campaign: evolve trials, fidelities, clusters");
  add_common_flags(campaign, cf, false);

  // sweep
  CommonFlags sf;
  auto* sweep = app.add_subcommand(
      "sweep", "theta sweep against one persisted reference, with discontinuity report");
  add_common_flags(sweep, sf, true);

  // oracle
  double o_theta = 0.0, o_theta_min = 0.0, o_theta_max = 0.0;
  int o_steps = 1, o_length = 8;
  std::string o_out;
  auto* oracle = app.add_subcommand(
      "oracle", "brute-force finite-chain ground energies and degeneracies");
  oracle->add_option("--theta", o_theta, "single angle (radians)");
  oracle->add_option("--theta-min", o_theta_min, "grid start angle");
  oracle->add_option("--theta-max", o_theta_max, "grid end angle (exclusive)");
  oracle->add_option("--theta-steps", o_steps, "grid points (default 1)");
  oracle->add_option("--length", o_length, "even chain length <= 24 (default 8)");
  oracle->add_option("--out", o_out, "output CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (mk->parsed()) {
      return bondalt::cli::cmd_make_reference(ref_seed, ref_period, ref_chi, ref_out);
    }
    if (campaign->parsed()) {
      return bondalt::cli::cmd_campaign(build_config(campaign, cf));
    }
    if (sweep->parsed()) {
      return bondalt::cli::cmd_sweep(build_config(sweep, sf));
    }
    if (oracle->parsed()) {
      if (oracle->count("--theta") > 0) {
        return bondalt::cli::cmd_oracle(o_theta, o_theta, 1, o_length, o_out);
      }
      return bondalt::cli::cmd_oracle(o_theta_min, o_theta_max, o_steps, o_length, o_out);
    }
  } catch (const bondalt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
