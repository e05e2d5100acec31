#include "bondalt/itebd.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

#include "bondalt/errors.hpp"
#include "bondalt/rng.hpp"
#include "transfer_detail.hpp"

namespace bondalt {

namespace {

// Relative Schmidt-value cutoff used inside gate updates.
constexpr double kSvdCutoff = 1e-12;
// Inverse-lambda regularization thresholds.
constexpr double kLambdaZero = 1e-14;
constexpr double kLambdaFloor = 1e-12;
// A state whose worst bond keeps a subdominant Schmidt weight above this
// after the full schedule is treated as an unresolved cat superposition.
constexpr double kCatRatio = 1e-8;
// Relative floor below which converged Schmidt directions are spurious: they
// carry weight < 1e-14 in every local observable yet would still contribute
// an O(1) eigenvalue to mixed transfer operators, corrupting fidelities.
constexpr double kResidualCutoff = 1e-7;

struct GateUpdate {
  Imps state;
  double truncation_error = 0.0;
  bool floor_hit = false;
};

GateUpdate apply_gate_impl(const Imps& state, const Eigen::Matrix4cd& gate, int bond) {
  const int p = state.period;
  if (p < 2) throw InvalidInputError("apply_gate: period must be >= 2");
  if (bond < 0 || bond >= p) throw InvalidInputError("apply_gate: bond index out of range");

  const int k1 = bond;
  const int k2 = (bond + 1) % p;
  const int l = (bond - 1 + p) % p;
  const Eigen::Index dl = state.bond_dim(l);
  const Eigen::Index dr = state.bond_dim(k2);

  // Two-site wavefunction blocks theta[s1][s2] = (lam_l G_k1[s1] lam_k1) (G_k2[s2] lam_k2).
  std::array<Matrix, 2> left_half, right_half;
  for (int s = 0; s < 2; ++s) {
    left_half[s] = state.lambdas[l].asDiagonal() * state.gammas[k1][s] *
                   state.lambdas[k1].asDiagonal();
    right_half[s] = state.gammas[k2][s] * state.lambdas[k2].asDiagonal();
  }

  Matrix m(2 * dl, 2 * dr);
  for (int sp1 = 0; sp1 < 2; ++sp1) {
    for (int sp2 = 0; sp2 < 2; ++sp2) {
      Matrix block = Matrix::Zero(dl, dr);
      for (int s1 = 0; s1 < 2; ++s1) {
        for (int s2 = 0; s2 < 2; ++s2) {
          const Complex g = gate(sp1 * 2 + sp2, s1 * 2 + s2);
          if (g == Complex(0.0, 0.0)) continue;
          block.noalias() += g * (left_half[s1] * right_half[s2]);
        }
      }
      m.block(sp1 * dl, sp2 * dr, dl, dr) = block;
    }
  }

  const SvdResult svd = truncated_svd(m, state.chi_max, kSvdCutoff);
  const Eigen::Index chi = svd.rank();
  const double s_norm = svd.singular_values.norm();
  if (!(s_norm > 0.0)) {
    throw DegenerateStateError("apply_gate: gate annihilated the two-site wavefunction");
  }

  GateUpdate out;
  out.state = state;
  out.truncation_error = svd.truncation_error;
  out.state.lambdas[k1] = svd.singular_values / s_norm;

  RealVector inv_l(dl), inv_r(dr);
  for (Eigen::Index i = 0; i < dl; ++i) {
    const double v = state.lambdas[l](i);
    if (v < kLambdaZero) out.floor_hit = true;
    inv_l(i) = 1.0 / std::max(v, kLambdaFloor);
  }
  for (Eigen::Index i = 0; i < dr; ++i) {
    const double v = state.lambdas[k2](i);
    if (v < kLambdaZero) out.floor_hit = true;
    inv_r(i) = 1.0 / std::max(v, kLambdaFloor);
  }

  for (int s = 0; s < 2; ++s) {
    out.state.gammas[k1][s] = inv_l.asDiagonal() * svd.left_vectors.block(s * dl, 0, dl, chi);
    out.state.gammas[k2][s] =
        svd.right_vectors_conj.block(0, s * dr, chi, dr) * inv_r.asDiagonal();
  }
  return out;
}

// Largest subdominant-to-dominant Schmidt ratio over all bonds.
double worst_schmidt_ratio(const Imps& state) {
  double worst = 0.0;
  for (const auto& lam : state.lambdas) {
    if (lam.size() >= 2 && lam(0) > 0.0) {
      worst = std::max(worst, lam(1) / lam(0));
    }
  }
  return worst;
}

// Truncate every bond to its dominant Schmidt component. Used as the final
// symmetry-breaking fallback when pinning left a cat superposition behind.
Imps project_dominant_component(const Imps& state) {
  Imps out = state;
  for (int k = 0; k < state.period; ++k) {
    for (int s = 0; s < 2; ++s) {
      out.gammas[k][s] = state.gammas[k][s].block(0, 0, 1, 1);
    }
    out.lambdas[k] = RealVector::Ones(1);
  }
  return out;
}

// Drop Schmidt values below rel_cutoff * lambda_0 on every bond. Returns
// whether anything was dropped.
bool truncate_small_schmidt(Imps& state, double rel_cutoff) {
  const int p = state.period;
  std::vector<Eigen::Index> keep(p);
  bool changed = false;
  for (int k = 0; k < p; ++k) {
    const auto& lam = state.lambdas[k];
    Eigen::Index n = lam.size();
    while (n > 1 && lam(n - 1) < rel_cutoff * lam(0)) --n;
    keep[k] = n;
    changed = changed || n != lam.size();
  }
  if (!changed) return false;
  for (int k = 0; k < p; ++k) {
    const Eigen::Index dl = keep[(k - 1 + p) % p];
    const Eigen::Index dr = keep[k];
    for (int s = 0; s < 2; ++s) {
      state.gammas[k][s] = state.gammas[k][s].topLeftCorner(dl, dr).eval();
    }
    RealVector lam = state.lambdas[k].head(dr);
    state.lambdas[k] = lam / lam.norm();
  }
  return true;
}

Eigen::Matrix4cd sigma_z_first() {
  Eigen::Matrix4cd z = Eigen::Matrix4cd::Zero();
  z.diagonal() << 1.0, 1.0, -1.0, -1.0;
  return z;
}

Eigen::Matrix4cd sigma_z_second() {
  Eigen::Matrix4cd z = Eigen::Matrix4cd::Zero();
  z.diagonal() << 1.0, -1.0, 1.0, -1.0;
  return z;
}

}  // namespace

Schedule Schedule::defaults() {
  Schedule s;
  s.stages = {{0.5, 2000}, {0.1, 2000}, {0.01, 2000}, {0.001, 2000}};
  return s;
}

void Schedule::validate() const {
  if (stages.empty()) throw InvalidInputError("Schedule: at least one dtau stage required");
  for (std::size_t i = 0; i < stages.size(); ++i) {
    if (!(stages[i].dtau > 0.0)) throw InvalidInputError("Schedule: dtau must be > 0");
    if (stages[i].max_sweeps < 1) throw InvalidInputError("Schedule: max_sweeps must be >= 1");
    if (i > 0 && !(stages[i].dtau < stages[i - 1].dtau)) {
      throw InvalidInputError("Schedule: dtau values must be strictly decreasing");
    }
  }
  if (!(energy_tol > 0.0) || !(lambda_tol > 0.0)) {
    throw InvalidInputError("Schedule: tolerances must be > 0");
  }
  if (pin_strength < 0.0) throw InvalidInputError("Schedule: pin_strength must be >= 0");
  if (pin_sweeps < 0) throw InvalidInputError("Schedule: pin_sweeps must be >= 0");
}

Eigen::Matrix4cd bond_gate(const Eigen::Matrix4cd& h, double dtau) {
  if (!(dtau > 0.0)) throw InvalidInputError("bond_gate: dtau must be > 0");
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw InvalidInputError("bond_gate: Hamiltonian must be Hermitian");
  }
  double off_diag = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i != j) off_diag = std::max(off_diag, std::abs(h(i, j)));
    }
  }
  if (off_diag == 0.0) {
    Eigen::Matrix4cd g = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 4; ++i) g(i, i) = std::exp(-dtau * h(i, i).real());
    return g;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h);
  Eigen::Vector4d w = es.eigenvalues();
  Eigen::Matrix4cd g = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 4; ++i) g(i, i) = std::exp(-dtau * w(i));
  return es.eigenvectors() * g * es.eigenvectors().adjoint();
}

std::pair<Imps, double> apply_gate(const Imps& state, const Eigen::Matrix4cd& gate, int bond) {
  GateUpdate u = apply_gate_impl(state, gate, bond);
  return {std::move(u.state), u.truncation_error};
}

std::pair<Imps, EvolutionReport> evolve(const Imps& initial, const ModelParams& params,
                                        const Schedule& schedule, std::uint64_t seed) {
  schedule.validate();
  if (initial.period < 2 || initial.period % 2 != 0) {
    throw InvalidInputError("evolve: period must be even and >= 2");
  }

  Imps state = normalize(initial);
  const int p = state.period;
  Rng pin_rng(derive_seed(seed, 0x70F1));

  EvolutionReport report;
  const bool pinning_enabled = schedule.pin_strength > 0.0 && schedule.pin_sweeps > 0;
  const int pin_end = pinning_enabled ? schedule.pin_sweeps : 0;
  int global_sweep = 0;
  double prev_energy = std::numeric_limits<double>::quiet_NaN();
  Matrix warm_left, warm_right;

  const Eigen::Matrix4cd h_even = bond_hamiltonian(params, BondParity::even);
  const Eigen::Matrix4cd h_odd = bond_hamiltonian(params, BondParity::odd);
  const Eigen::Matrix4cd z1 = sigma_z_first();
  const Eigen::Matrix4cd z2 = sigma_z_second();

  auto sweep_once = [&](double dtau) {
    std::vector<Eigen::Matrix4cd> gates(p);
    const bool pinned = pinning_enabled && global_sweep < pin_end;
    if (pinned) {
      // Fresh seeded bias fields every sweep; a field pattern accidentally
      // orthogonal to the groundstate difference then cannot persist.
      std::vector<double> field(p);
      for (int k = 0; k < p; ++k) field[k] = schedule.pin_strength * pin_rng.uniform_signed();
      for (int k = 0; k < p; ++k) {
        const Eigen::Matrix4cd& base = k % 2 == 0 ? h_even : h_odd;
        gates[k] = bond_gate(base + 0.5 * (field[k] * z1 + field[(k + 1) % p] * z2), dtau);
      }
    } else {
      const Eigen::Matrix4cd ge = bond_gate(h_even, dtau);
      const Eigen::Matrix4cd go = bond_gate(h_odd, dtau);
      for (int k = 0; k < p; ++k) gates[k] = k % 2 == 0 ? ge : go;
    }
    for (int k = 0; k < p; k += 2) {
      GateUpdate u = apply_gate_impl(state, gates[k], k);
      state = std::move(u.state);
      report.max_truncation_error = std::max(report.max_truncation_error, u.truncation_error);
      report.lambda_floor_hit = report.lambda_floor_hit || u.floor_hit;
    }
    for (int k = 1; k < p; k += 2) {
      GateUpdate u = apply_gate_impl(state, gates[k], k);
      state = std::move(u.state);
      report.max_truncation_error = std::max(report.max_truncation_error, u.truncation_error);
      report.lambda_floor_hit = report.lambda_floor_hit || u.floor_hit;
    }
    ++global_sweep;
  };

  auto measure_and_rescale = [&]() {
    const Eigen::Index d_anchor = state.bond_dim(p - 1);
    const bool can_warm = warm_left.rows() == d_anchor && warm_left.cols() == d_anchor;
    const auto env = detail::compute_environments(state, can_warm ? &warm_left : nullptr,
                                                  can_warm ? &warm_right : nullptr);
    double energy = 0.0;
    for (int k = 0; k < p; ++k) {
      const auto parity = k % 2 == 0 ? BondParity::even : BondParity::odd;
      energy += detail::two_site_expectation(state, env, bond_hamiltonian(params, parity), k);
    }
    energy /= p;
    // Keep the overall scale pinned at self-transfer eigenvalue 1 so the
    // imaginary-time damping cannot underflow the tensors.
    const double scale = std::pow(env.mu, -1.0 / (2.0 * p));
    for (auto& g : state.gammas) {
      g[0] *= scale;
      g[1] *= scale;
    }
    warm_left = env.left[p - 1];
    warm_right = env.right[p - 1];
    return energy;
  };

  auto run_stage = [&](const DtauStage& stage) {
    bool converged = false;
    for (int sweep = 0; sweep < stage.max_sweeps; ++sweep) {
      std::vector<RealVector> old_lambdas = state.lambdas;
      sweep_once(stage.dtau);
      const double energy = measure_and_rescale();
      report.energy_history.push_back(energy);

      double lambda_change = 0.0;
      for (int k = 0; k < p; ++k) {
        const auto& a = old_lambdas[k];
        const auto& b = state.lambdas[k];
        const Eigen::Index n = std::max(a.size(), b.size());
        for (Eigen::Index i = 0; i < n; ++i) {
          const double va = i < a.size() ? a(i) : 0.0;
          const double vb = i < b.size() ? b(i) : 0.0;
          lambda_change = std::max(lambda_change, std::abs(va - vb));
        }
      }

      const bool measurable = global_sweep >= pin_end + 2;
      if (measurable && std::isfinite(prev_energy) &&
          std::abs(energy - prev_energy) < schedule.energy_tol &&
          lambda_change < schedule.lambda_tol) {
        prev_energy = energy;
        converged = true;
        break;
      }
      prev_energy = energy;
    }
    report.sweeps_used = global_sweep;
    return converged;
  };

  bool converged = false;
  for (const auto& stage : schedule.stages) {
    converged = run_stage(stage);
  }

  // Symmetry-broken selection fallback: if pinning could not fully tip a cat
  // superposition of the two degenerate groundstates, keep the dominant
  // Schmidt component on every bond and re-polish at the final step size.
  if (pinning_enabled && worst_schmidt_ratio(state) > kCatRatio) {
    state = normalize(project_dominant_component(state));
    warm_left.resize(0, 0);
    warm_right.resize(0, 0);
    prev_energy = std::numeric_limits<double>::quiet_NaN();
    report.cat_collapsed = true;
    converged = run_stage(schedule.stages.back());
  }

  // Spurious-sector purge: converged bonds can stall with Schmidt residue
  // around lambda_tol that no longer moves. Its weight is irrelevant for
  // every observable, but mixed transfer eigenvalues are per-sector
  // quantities, so a dead direction would still show up at O(1) in
  // fidelities against other states. Drop it and re-polish.
  if (pinning_enabled && truncate_small_schmidt(state, kResidualCutoff)) {
    state = normalize(state);
    warm_left.resize(0, 0);
    warm_right.resize(0, 0);
    prev_energy = std::numeric_limits<double>::quiet_NaN();
    converged = run_stage(schedule.stages.back());
  }

  report.converged = converged;
  state = normalize(state);
  report.final_energy_per_site = energy_per_site(state, params);
  return {std::move(state), report};
}

}  // namespace bondalt
