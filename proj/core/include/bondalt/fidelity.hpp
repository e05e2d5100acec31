#pragma once

#include <cstdint>
#include <vector>

#include "bondalt/imps.hpp"
#include "bondalt/itebd.hpp"
#include "bondalt/model.hpp"
#include "bondalt/orderparams.hpp"

namespace bondalt {

/// Fidelity per site d(a, b) = |mu|^(1 / cell length) from the dominant
/// mixed-transfer eigenvalue. Both states must be normalized; then
/// d(a, a) = 1 and 0 <= d <= 1 + 1e-9.
double fidelity_per_site(const Imps& a, const Imps& b);

/// One trial of a degeneracy campaign: groundstate evolved from the n-th
/// seeded random initial state, compared against a fixed reference.
struct FidelityRecord {
  int trial_index = 0;
  std::uint64_t seed = 0;
  double d = 0.0;
  double energy_per_site = 0.0;
  double theta = 0.0;
  bool converged = false;
  OrderParameterSet order_params;
};

/// Runs n_trials independent evolutions (trial seeds derived from
/// (master_seed, n), so results do not depend on scheduling), one record per
/// trial in trial order. workers = 0 means hardware concurrency; chi_max
/// caps the bond dimension of the evolved trial states.
std::vector<FidelityRecord> run_campaign(const ModelParams& params, int n_trials,
                                         std::uint64_t master_seed, const Imps& reference,
                                         const Schedule& schedule, int workers = 0,
                                         int chi_max = 32);

struct FidelityCluster {
  double representative_d = 0.0;  // mean of the member d values
  int count = 0;
  double frequency = 0.0;
};

struct DegeneracyReport {
  std::vector<FidelityCluster> clusters;  // ascending in representative_d
  int degeneracy_estimate = 0;
  /// Two representatives closer than 10x the clustering eps: the reference
  /// is unluckily close to symmetric and a new reference seed is advisable.
  bool reference_warning = false;
};

inline constexpr double kClusterEps = 1e-6;

/// Single-linkage clustering of the d values with threshold eps. All records
/// must be converged (callers exclude failed trials explicitly); throws
/// InvalidInputError on empty input or non-converged records.
DegeneracyReport cluster_fidelities(const std::vector<FidelityRecord>& records,
                                    double eps = kClusterEps);

}  // namespace bondalt
