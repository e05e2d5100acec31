#include "bondalt/fidelity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "bondalt/errors.hpp"
#include "bondalt/rng.hpp"

namespace bondalt {

double fidelity_per_site(const Imps& a, const Imps& b) {
  const Complex mu = mixed_transfer_eigenvalue(a, b);
  const int cell = common_cell_length(a, b);
  return std::pow(std::abs(mu), 1.0 / cell);
}

std::vector<FidelityRecord> run_campaign(const ModelParams& params, int n_trials,
                                         std::uint64_t master_seed, const Imps& reference,
                                         const Schedule& schedule, int workers, int chi_max) {
  if (n_trials < 1) throw InvalidInputError("run_campaign: n_trials must be >= 1");
  if (chi_max < 1) throw InvalidInputError("run_campaign: chi_max must be >= 1");
  schedule.validate();

  std::vector<FidelityRecord> records(n_trials);
  std::atomic<int> next{0};

  auto run_trial = [&](int n) {
    const std::uint64_t trial_seed = derive_seed(master_seed, static_cast<std::uint64_t>(n));
    FidelityRecord rec;
    rec.trial_index = n;
    rec.seed = trial_seed;
    rec.theta = params.theta;

    Imps initial = random_product_state(trial_seed, 4);
    initial.chi_max = chi_max;
    auto [ground, report] = evolve(initial, params, schedule, trial_seed);
    rec.converged = report.converged;
    rec.energy_per_site = report.final_energy_per_site;
    rec.d = fidelity_per_site(ground, reference);
    rec.order_params = order_parameters(ground);
    records[n] = rec;
  };

  int n_workers = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
  if (n_workers < 1) n_workers = 1;
  n_workers = std::min(n_workers, n_trials);

  if (n_workers == 1) {
    for (int n = 0; n < n_trials; ++n) run_trial(n);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) {
      pool.emplace_back([&] {
        for (int n = next.fetch_add(1); n < n_trials; n = next.fetch_add(1)) {
          run_trial(n);
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  return records;
}

DegeneracyReport cluster_fidelities(const std::vector<FidelityRecord>& records, double eps) {
  if (records.empty()) throw InvalidInputError("cluster_fidelities: no records");
  if (!(eps > 0.0)) throw InvalidInputError("cluster_fidelities: eps must be > 0");
  for (const auto& r : records) {
    if (!r.converged) {
      throw InvalidInputError("cluster_fidelities: non-converged record passed; "
                              "exclude failed trials before clustering");
    }
  }

  std::vector<double> ds(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) ds[i] = records[i].d;
  std::sort(ds.begin(), ds.end());

  // Single linkage in one dimension: split the sorted values at gaps > eps.
  DegeneracyReport report;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= ds.size(); ++i) {
    if (i == ds.size() || ds[i] - ds[i - 1] > eps) {
      FidelityCluster c;
      c.count = static_cast<int>(i - start);
      double sum = 0.0;
      for (std::size_t j = start; j < i; ++j) sum += ds[j];
      c.representative_d = sum / c.count;
      c.frequency = static_cast<double>(c.count) / static_cast<double>(ds.size());
      report.clusters.push_back(c);
      start = i;
    }
  }
  report.degeneracy_estimate = static_cast<int>(report.clusters.size());

  for (std::size_t i = 0; i + 1 < report.clusters.size(); ++i) {
    if (report.clusters[i + 1].representative_d - report.clusters[i].representative_d <
        10.0 * eps) {
      report.reference_warning = true;
    }
  }
  return report;
}

}  // namespace bondalt
