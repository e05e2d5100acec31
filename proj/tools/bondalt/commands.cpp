#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>

#include <json.hpp>

#include <bondalt/errors.hpp>
#include <bondalt/oracle.hpp>
#include <bondalt/orderparams.hpp>
#include <bondalt/rng.hpp>
#include <bondalt/serialize.hpp>
#include <bondalt/version.hpp>

namespace bondalt::cli {

using nlohmann::json;

std::string fmt17(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string SweepConfig::canonical_json() const {
  // workers and the output path are execution details, not part of the
  // scientific configuration: output bytes must not depend on them.
  json j;
  j["theta"] = theta;
  j["theta_min"] = theta_min;
  j["theta_max"] = theta_max;
  j["theta_steps"] = theta_steps;
  j["trials"] = n_trials;
  j["chi"] = chi_max;
  j["seed"] = master_seed;
  j["reference"] = reference;
  j["jump_threshold"] = jump_threshold;
  j["include_boundaries"] = include_boundaries;
  j["energy_tol"] = schedule.energy_tol;
  j["lambda_tol"] = schedule.lambda_tol;
  j["pin_strength"] = schedule.pin_strength;
  j["pin_sweeps"] = schedule.pin_sweeps;
  json stages = json::array();
  for (const auto& s : schedule.stages) stages.push_back({s.dtau, s.max_sweeps});
  j["dtau_steps"] = std::move(stages);
  return j.dump();
}

void apply_config_file(SweepConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("config: cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidInputError("config: parse failure in " + path.string() + ": " + e.what());
  }
  if (j.contains("theta")) cfg.theta = j["theta"].get<double>();
  if (j.contains("theta_min")) cfg.theta_min = j["theta_min"].get<double>();
  if (j.contains("theta_max")) cfg.theta_max = j["theta_max"].get<double>();
  if (j.contains("theta_steps")) cfg.theta_steps = j["theta_steps"].get<int>();
  if (j.contains("trials")) cfg.n_trials = j["trials"].get<int>();
  if (j.contains("chi")) cfg.chi_max = j["chi"].get<int>();
  if (j.contains("seed")) cfg.master_seed = j["seed"].get<std::uint64_t>();
  if (j.contains("reference")) cfg.reference = j["reference"].get<std::string>();
  if (j.contains("out")) cfg.out = j["out"].get<std::string>();
  if (j.contains("workers")) cfg.workers = j["workers"].get<int>();
  if (j.contains("jump_threshold")) cfg.jump_threshold = j["jump_threshold"].get<double>();
  if (j.contains("include_boundaries")) {
    cfg.include_boundaries = j["include_boundaries"].get<bool>();
  }
  if (j.contains("energy_tol")) cfg.schedule.energy_tol = j["energy_tol"].get<double>();
  if (j.contains("lambda_tol")) cfg.schedule.lambda_tol = j["lambda_tol"].get<double>();
  if (j.contains("pin_strength")) cfg.schedule.pin_strength = j["pin_strength"].get<double>();
  if (j.contains("pin_sweeps")) cfg.schedule.pin_sweeps = j["pin_sweeps"].get<int>();
  if (j.contains("dtau_steps")) {
    cfg.schedule.stages.clear();
    for (const auto& row : j["dtau_steps"]) {
      cfg.schedule.stages.push_back({row.at(0).get<double>(), row.at(1).get<int>()});
    }
  }
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("BONDALT_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const int hw = static_cast<int>(std::thread::hardware_concurrency());
  return hw > 0 ? hw : 1;
}

namespace {

std::uint64_t state_hash(const Imps& state) {
  const std::string bytes = state_to_json(state);
  return fnv1a(bytes.data(), bytes.size());
}

std::string hex64(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Deterministic in-memory reference for reference = "generate".
Imps generated_reference(std::uint64_t master_seed) {
  return random_product_state(derive_seed(master_seed, 0xFEEDBEEFULL), 4);
}

// Assign each record to the nearest cluster representative. Clusters are
// separated by orders of magnitude more than their internal spread, so
// nearest-representative matching reproduces the single-linkage membership.
int nearest_cluster(const DegeneracyReport& report, double d) {
  int best = 0;
  double best_dist = std::abs(d - report.clusters[0].representative_d);
  for (std::size_t c = 1; c < report.clusters.size(); ++c) {
    const double dist = std::abs(d - report.clusters[c].representative_d);
    if (dist < best_dist) {
      best_dist = dist;
      best = static_cast<int>(c);
    }
  }
  return best;
}

void write_header(std::ostream& os, const char* kind, const SweepConfig& cfg,
                  std::uint64_t reference_hash) {
  const std::string cfg_json = cfg.canonical_json();
  os << "# bondalt " << kVersion << " " << kind << "\n";
  os << "# config_hash=" << hex64(fnv1a(cfg_json.data(), cfg_json.size()))
     << " reference_hash=" << hex64(reference_hash) << "\n";
}

}  // namespace

Imps resolve_reference(const SweepConfig& cfg) {
  if (cfg.reference == "generate") {
    return generated_reference(cfg.master_seed);
  }
  if (!std::filesystem::exists(cfg.reference)) {
    throw IoError("reference state file '" + cfg.reference +
                  "' not found; generate one with: bondalt make-reference --seed <s> --out " +
                  cfg.reference);
  }
  return load_state(cfg.reference);
}

CampaignOutput run_campaign_config(const SweepConfig& cfg, const Imps& reference) {
  if (!std::isfinite(cfg.theta)) {
    throw InvalidInputError("campaign: theta is required (--theta flag or config file)");
  }
  CampaignOutput out;
  out.params = ModelParams::from_theta(cfg.theta);
  out.boundary = quadrant_phase(out.params.theta) == Phase::BOUNDARY;
  out.reference_hash = state_hash(reference);

  out.records = run_campaign(out.params, cfg.n_trials, cfg.master_seed, reference, cfg.schedule,
                             resolve_workers(cfg.workers), cfg.chi_max);
  std::vector<FidelityRecord> converged;
  for (const auto& r : out.records) {
    if (r.converged) converged.push_back(r);
  }
  if (!converged.empty()) {
    out.report = cluster_fidelities(converged);
  }
  return out;
}

void write_campaign_csv(const SweepConfig& cfg, const CampaignOutput& out, std::ostream& os) {
  write_header(os, "campaign", cfg, out.reference_hash);
  os << "theta,trial,seed,converged,d,energy_per_site,m_afm,m_fm,m_even_pair,m_odd_pair,phase\n";
  for (const auto& r : out.records) {
    os << fmt17(r.theta) << ',' << r.trial_index << ',' << r.seed << ','
       << (r.converged ? 1 : 0) << ',' << fmt17(r.d) << ',' << fmt17(r.energy_per_site) << ','
       << fmt17(r.order_params.m_afm) << ',' << fmt17(r.order_params.m_fm) << ','
       << fmt17(r.order_params.m_even_pair) << ',' << fmt17(r.order_params.m_odd_pair) << ','
       << (out.boundary ? phase_name(Phase::BOUNDARY) : phase_name(r.order_params.phase))
       << "\n";
  }
  os << "# summary: degeneracy=" << out.report.degeneracy_estimate << "\n";
  for (const auto& c : out.report.clusters) {
    os << "# cluster: representative_d=" << fmt17(c.representative_d) << " count=" << c.count
       << " frequency=" << fmt17(c.frequency) << "\n";
  }
  if (out.boundary) {
    os << "# warning: theta lies on a phase boundary; the ground manifold is extensively "
          "degenerate and the degeneracy estimate is not meaningful\n";
  }
  if (out.report.reference_warning) {
    os << "# warning: cluster representatives are nearly coincident; the reference state is "
          "unluckily close to symmetric, consider a new reference seed\n";
  }
}

SweepOutput run_sweep_config(const SweepConfig& cfg, const Imps& reference) {
  if (!(cfg.theta_min < cfg.theta_max)) {
    throw InvalidInputError("sweep: theta_min must be < theta_max");
  }
  if (cfg.theta_steps < 1) throw InvalidInputError("sweep: theta_steps must be >= 1");

  SweepOutput out;
  out.reference_hash = state_hash(reference);
  const double span = cfg.theta_max - cfg.theta_min;
  const double step = span / cfg.theta_steps;

  for (int i = 0; i < cfg.theta_steps; ++i) {
    SweepPoint point;
    point.index = i;
    point.theta = cfg.theta_min + i * step;
    point.boundary = quadrant_phase(point.theta) == Phase::BOUNDARY;
    if (!point.boundary || cfg.include_boundaries) {
      SweepConfig point_cfg = cfg;
      point_cfg.theta = point.theta;
      const CampaignOutput campaign = run_campaign_config(point_cfg, reference);
      point.reference_warning = campaign.report.reference_warning;
      for (std::size_t c = 0; c < campaign.report.clusters.size(); ++c) {
        const auto& cluster = campaign.report.clusters[c];
        SweepClusterRow row;
        row.cluster = static_cast<int>(c);
        row.representative_d = cluster.representative_d;
        row.count = cluster.count;
        row.frequency = cluster.frequency;
        for (const auto& r : campaign.records) {
          if (r.converged && nearest_cluster(campaign.report, r.d) == static_cast<int>(c)) {
            row.energy_per_site = r.energy_per_site;
            row.order_params = r.order_params;
            break;
          }
        }
        point.clusters.push_back(row);
      }
    }
    out.points.push_back(std::move(point));
  }

  // Discontinuity detection over consecutive interior points, including the
  // wrap-around pair when the sweep covers a full circle.
  std::vector<const SweepPoint*> interior;
  for (const auto& p : out.points) {
    if (!p.boundary) interior.push_back(&p);
  }
  const bool full_circle = std::abs(span - 2.0 * std::numbers::pi) < 0.5 * step;
  auto reps_of = [](const SweepPoint& p) {
    std::vector<double> reps;
    reps.reserve(p.clusters.size());
    for (const auto& c : p.clusters) reps.push_back(c.representative_d);
    std::sort(reps.begin(), reps.end());
    return reps;
  };
  auto jumps = [&](const SweepPoint& a, const SweepPoint& b) {
    const auto ra = reps_of(a);
    const auto rb = reps_of(b);
    if (ra.size() != rb.size()) return true;
    for (std::size_t i = 0; i < ra.size(); ++i) {
      if (std::abs(ra[i] - rb[i]) > cfg.jump_threshold) return true;
    }
    return false;
  };
  const std::size_t n_pairs =
      interior.size() < 2 ? 0 : (full_circle ? interior.size() : interior.size() - 1);
  for (std::size_t i = 0; i < n_pairs; ++i) {
    const SweepPoint& a = *interior[i];
    const SweepPoint& b = *interior[(i + 1) % interior.size()];
    if (jumps(a, b)) {
      const double hi = (i + 1 == interior.size()) ? b.theta + 2.0 * std::numbers::pi : b.theta;
      out.discontinuities.push_back({a.theta, hi});
    }
  }
  return out;
}

void write_sweep_csv(const SweepConfig& cfg, const SweepOutput& out, std::ostream& os) {
  write_header(os, "sweep", cfg, out.reference_hash);
  os << "theta,theta_index,boundary,cluster,representative_d,count,frequency,energy_per_site,"
        "m_afm,m_fm,m_even_pair,m_odd_pair,phase\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& p : out.points) {
    if (p.clusters.empty()) {
      // boundary point, or a grid point whose trials all failed to converge
      os << fmt17(p.theta) << ',' << p.index << ',' << (p.boundary ? 1 : 0) << ",-1,"
         << fmt17(nan) << ",0," << fmt17(nan) << ',' << fmt17(nan) << ',' << fmt17(nan) << ','
         << fmt17(nan) << ',' << fmt17(nan) << ',' << fmt17(nan) << ','
         << phase_name(Phase::BOUNDARY) << "\n";
      continue;
    }
    for (const auto& c : p.clusters) {
      os << fmt17(p.theta) << ',' << p.index << ',' << (p.boundary ? 1 : 0) << ',' << c.cluster
         << ',' << fmt17(c.representative_d) << ',' << c.count << ',' << fmt17(c.frequency) << ','
         << fmt17(c.energy_per_site) << ',' << fmt17(c.order_params.m_afm) << ','
         << fmt17(c.order_params.m_fm) << ',' << fmt17(c.order_params.m_even_pair) << ','
         << fmt17(c.order_params.m_odd_pair) << ','
         << (p.boundary ? phase_name(Phase::BOUNDARY) : phase_name(c.order_params.phase))
         << "\n";
    }
  }
  for (const auto& d : out.discontinuities) {
    os << "# discontinuity: theta_lo=" << fmt17(d.theta_lo) << " theta_hi=" << fmt17(d.theta_hi)
       << "\n";
  }
}

int cmd_make_reference(std::uint64_t seed, int period, int chi, const std::string& out_path) {
  const Imps reference =
      chi <= 1 ? random_product_state(seed, period) : random_entangled_state(seed, period, chi);
  save_state(reference, out_path);
  std::cout << "wrote reference state (period " << period << ", chi " << chi << ", hash "
            << hex64(state_hash(reference)) << ") to " << out_path << "\n";
  return 0;
}

int cmd_campaign(const SweepConfig& cfg) {
  if (cfg.out.empty()) throw InvalidInputError("campaign: --out is required");
  const Imps reference = resolve_reference(cfg);
  const CampaignOutput out = run_campaign_config(cfg, reference);

  std::ofstream os(cfg.out, std::ios::binary);
  if (!os) throw IoError("campaign: cannot open " + cfg.out + " for writing");
  write_campaign_csv(cfg, out, os);
  if (!os) throw IoError("campaign: write failed for " + cfg.out);

  int failed = 0;
  for (const auto& r : out.records) {
    if (!r.converged) ++failed;
  }
  std::cout << "campaign theta=" << fmt17(out.params.theta) << ": " << out.records.size()
            << " trials (" << failed << " non-converged), degeneracy estimate "
            << out.report.degeneracy_estimate << "\n";
  for (const auto& c : out.report.clusters) {
    std::cout << "  cluster d=" << fmt17(c.representative_d) << " frequency=" << c.frequency
              << "\n";
  }
  if (out.boundary) {
    std::cout << "  warning: boundary theta, ground manifold extensively degenerate\n";
  }
  if (out.report.reference_warning) {
    std::cout << "  warning: near-symmetric reference, consider a new reference seed\n";
  }
  return 0;
}

int cmd_sweep(const SweepConfig& cfg) {
  if (cfg.out.empty()) throw InvalidInputError("sweep: --out is required");
  const Imps reference = resolve_reference(cfg);
  const SweepOutput out = run_sweep_config(cfg, reference);

  std::ofstream os(cfg.out, std::ios::binary);
  if (!os) throw IoError("sweep: cannot open " + cfg.out + " for writing");
  write_sweep_csv(cfg, out, os);
  if (!os) throw IoError("sweep: write failed for " + cfg.out);

  std::cout << "sweep over [" << fmt17(cfg.theta_min) << ", " << fmt17(cfg.theta_max) << "), "
            << cfg.theta_steps << " points: " << out.discontinuities.size()
            << " discontinuity bracket(s)\n";
  for (const auto& d : out.discontinuities) {
    std::cout << "  jump between theta=" << fmt17(d.theta_lo) << " and theta=" << fmt17(d.theta_hi)
              << "\n";
  }
  return 0;
}

int cmd_oracle(double theta_min, double theta_max, int steps, int length,
               const std::string& out_path) {
  if (out_path.empty()) throw InvalidInputError("oracle: --out is required");
  if (steps < 1) throw InvalidInputError("oracle: steps must be >= 1");
  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw IoError("oracle: cannot open " + out_path + " for writing");

  os << "# bondalt " << kVersion << " oracle\n";
  os << "theta,L,energy_per_site,degeneracy\n";
  for (int i = 0; i < steps; ++i) {
    const double theta =
        steps == 1 ? theta_min : theta_min + i * (theta_max - theta_min) / steps;
    const auto manifold = brute_force_ground(length, ModelParams::from_theta(theta));
    os << fmt17(theta) << ',' << length << ',' << fmt17(manifold.energy_per_site) << ','
       << manifold.degeneracy << "\n";
  }
  if (!os) throw IoError("oracle: write failed for " + out_path);
  std::cout << "wrote oracle table (" << steps << " point(s), L=" << length << ") to " << out_path
            << "\n";
  return 0;
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("read_csv: cannot open " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace bondalt::cli
