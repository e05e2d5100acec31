#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bondalt/imps.hpp"
#include "bondalt/model.hpp"

namespace bondalt {

/// One imaginary-time step size and its sweep budget.
struct DtauStage {
  double dtau = 0.0;
  int max_sweeps = 0;
};

/// Annealing schedule for the imaginary-time evolution. dtau values must be
/// strictly decreasing. During the first pin_sweeps sweeps a seeded random
/// sigma^z bias of magnitude pin_strength is added to the bond Hamiltonians
/// (redrawn every sweep) and then removed; it tips the evolution into one of
/// the two degenerate symmetry-broken groundstates instead of a cat state.
/// pin_strength = 0 disables every symmetry-breaking intervention, which is
/// useful for studying the cat-state fixed point.
struct Schedule {
  std::vector<DtauStage> stages;
  double energy_tol = 1e-10;
  double lambda_tol = 1e-10;
  double pin_strength = 1e-3;
  int pin_sweeps = 50;

  /// dtau in {0.5, 0.1, 0.01, 0.001}, 2000 sweeps each, tolerances 1e-10.
  static Schedule defaults();

  void validate() const;
};

struct EvolutionReport {
  bool converged = false;
  double final_energy_per_site = 0.0;
  std::vector<double> energy_history;  // one entry per sweep, true Hamiltonian
  double max_truncation_error = 0.0;
  int sweeps_used = 0;
  bool lambda_floor_hit = false;  // inverse-lambda regularization triggered
  bool cat_collapsed = false;     // dominant-component projection triggered
};

/// Imaginary-time Trotter gate exp(-dtau h) for a Hermitian 4x4 h; diagonal
/// h yields the elementwise exponential of the diagonal.
Eigen::Matrix4cd bond_gate(const Eigen::Matrix4cd& h, double dtau);

/// One Vidal two-site update on the bond between sites (bond, bond+1):
/// contract lambda Gamma lambda Gamma lambda with the gate, SVD, truncate to
/// state.chi_max, restore the Gamma-lambda form. Returns the updated state
/// and the relative truncation error of the SVD. Lambda entries below 1e-14
/// hit during the inverse-lambda restoration are floored at 1e-12.
std::pair<Imps, double> apply_gate(const Imps& state, const Eigen::Matrix4cd& gate, int bond);

/// Drives `initial` to a groundstate of the model: per sweep, all even bonds
/// then all odd bonds are updated (first-order Trotter; the bond terms all
/// commute for this diagonal model, so the splitting is exact). A stage
/// converges when the energy change per sweep drops below energy_tol and the
/// largest lambda change below lambda_tol. Deterministic for fixed inputs.
std::pair<Imps, EvolutionReport> evolve(const Imps& initial, const ModelParams& params,
                                        const Schedule& schedule, std::uint64_t seed);

}  // namespace bondalt
