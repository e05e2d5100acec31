#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include <bondalt/fidelity.hpp>
#include <bondalt/imps.hpp>
#include <bondalt/itebd.hpp>
#include <bondalt/model.hpp>

namespace bondalt::cli {

/// Effective configuration of a campaign / sweep run. Values come from, in
/// decreasing precedence: command-line flags, the optional JSON config
/// document, built-in defaults.
struct SweepConfig {
  double theta = std::numeric_limits<double>::quiet_NaN();  // campaign only
  double theta_min = 0.0;
  double theta_max = 2.0 * 3.14159265358979323846;
  int theta_steps = 80;
  int n_trials = 30;
  int chi_max = 32;
  std::uint64_t master_seed = 1;
  std::string reference = "generate";  // state file path or "generate"
  std::string out;
  int workers = 0;  // 0: BONDALT_WORKERS env var, then hardware concurrency
  double jump_threshold = 1e-3;
  bool include_boundaries = false;
  Schedule schedule = Schedule::defaults();

  /// Canonical JSON dump of every effective field; hashed into CSV headers.
  std::string canonical_json() const;
};

/// Fills unset fields of `cfg` from a JSON config document. Flags win over
/// the config file, so main() applies this before flag overrides.
void apply_config_file(SweepConfig& cfg, const std::filesystem::path& path);

/// Worker count resolution: explicit > BONDALT_WORKERS > hardware.
int resolve_workers(int requested);

struct CampaignOutput {
  ModelParams params;
  bool boundary = false;
  std::vector<FidelityRecord> records;
  DegeneracyReport report;  // clusters over converged records only
  std::uint64_t reference_hash = 0;
};

/// Runs the trials of one campaign against the resolved reference.
CampaignOutput run_campaign_config(const SweepConfig& cfg, const Imps& reference);

/// Loads cfg.reference, or generates the deterministic product reference
/// when it equals "generate". Throws IoError with a make-reference hint when
/// the file is missing.
Imps resolve_reference(const SweepConfig& cfg);

void write_campaign_csv(const SweepConfig& cfg, const CampaignOutput& out, std::ostream& os);

struct SweepClusterRow {
  int cluster = 0;
  double representative_d = 0.0;
  int count = 0;
  double frequency = 0.0;
  double energy_per_site = 0.0;
  OrderParameterSet order_params;
};

struct SweepPoint {
  int index = 0;
  double theta = 0.0;
  bool boundary = false;
  std::vector<SweepClusterRow> clusters;
  bool reference_warning = false;
};

struct DiscontinuityBracket {
  double theta_lo = 0.0;
  double theta_hi = 0.0;
};

struct SweepOutput {
  std::vector<SweepPoint> points;
  std::vector<DiscontinuityBracket> discontinuities;
  std::uint64_t reference_hash = 0;
};

SweepOutput run_sweep_config(const SweepConfig& cfg, const Imps& reference);

void write_sweep_csv(const SweepConfig& cfg, const SweepOutput& out, std::ostream& os);

/// Subcommand entry points; each returns a process exit code.
int cmd_make_reference(std::uint64_t seed, int period, int chi, const std::string& out_path);
int cmd_campaign(const SweepConfig& cfg);
int cmd_sweep(const SweepConfig& cfg);
int cmd_oracle(double theta_min, double theta_max, int steps, int length,
               const std::string& out_path);

/// Minimal reader for the emitted CSV files: returns data rows split on
/// commas, skipping the '#' header/summary lines.
std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path);

/// 17-significant-digit formatting used for every numeric CSV field.
std::string fmt17(double value);

}  // namespace bondalt::cli
