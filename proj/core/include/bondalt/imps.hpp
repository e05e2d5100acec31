#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "bondalt/linalg.hpp"

namespace bondalt {

/// A 2x2 Hermitian single-site observable in the {|up>, |down>} basis.
struct SiteObservable {
  Eigen::Matrix2cd matrix;

  static SiteObservable sigma_z();
  static SiteObservable sigma_x();
  static SiteObservable identity();

  /// Throws InvalidInputError unless Hermitian within 1e-12.
  void validate() const;
};

/// Infinite matrix product state with a periodic unit cell, stored in the
/// Vidal Gamma-lambda convention: lambda[k] lives on the bond to the right
/// of gamma[k], so the cell reads ... G0 l0 G1 l1 ... G(p-1) l(p-1) | G0 ...
///
/// gamma[k][s] is the (D_{k-1} x D_k) bond matrix for physical index s
/// (s = 0 is up, s = 1 is down); D_k = lambda[k].size() and the bond to the
/// left of site 0 is bond p-1.
///
/// Values are immutable in spirit: every operation returns a new state.
struct Imps {
  int period = 0;
  std::vector<std::array<Matrix, 2>> gammas;
  std::vector<RealVector> lambdas;
  int chi_max = 32;

  Eigen::Index bond_dim(int bond) const;
  int left_bond(int site) const { return (site - 1 + period) % period; }

  /// Gamma_k with its right lambda absorbed: A_k[s] = Gamma_k[s] diag(lambda_k).
  std::array<Matrix, 2> a_tensor(int site) const;

  /// Structural invariants: shapes consistent, lambdas descending with unit
  /// square sum, bond dimensions within chi_max, entries finite.
  void validate() const;
};

/// chi = 1 state with independently drawn per-site amplitudes (real Gaussian
/// pairs, normalized per site). Deterministic for a given seed.
Imps random_product_state(std::uint64_t seed, int period = 4);

/// The exact product state for a classical spin pattern; +1 means up, -1
/// means down. period = pattern length.
Imps basis_product_state(std::span<const int> pattern);

/// Entangled random state of the given bond dimension (normalized). Used as
/// an optional non-product reference in fidelity campaigns.
Imps random_entangled_state(std::uint64_t seed, int period, int chi);

/// Rescales the tensors so the unit-cell self-transfer eigenvalue is exactly
/// one (i.e. self fidelity per site = 1). Expectation values are unchanged.
/// Throws DegenerateStateError on a zero-norm state.
Imps normalize(const Imps& state);

/// <psi| O_site |psi> for a Hermitian O; real up to floating point noise.
double expectation(const Imps& state, const SiteObservable& obs, int site);

/// Two-point function <O_i O_{i+r}>; r = 0 gives <O_i^2> (identically 1 for
/// sigma_z on spin-1/2).
double correlation(const Imps& state, const SiteObservable& obs, int site, int separation);

/// Applies |up> <-> |down> on every physical index.
Imps spin_flip(const Imps& state);

/// Cyclically relabels the unit cell: site k of the result is site
/// (k + shift) mod p of the input.
Imps translate(const Imps& state, int shift);

/// Dominant eigenvalue mu of the mixed transfer operator built from a's
/// tensors and b's conjugated tensors over one common unit cell
/// (periods padded to their lcm). For normalized states |mu| <= 1 + 1e-9 and
/// fidelity per site d = |mu|^(1/cell_length).
Complex mixed_transfer_eigenvalue(const Imps& a, const Imps& b);

/// The padded cell length used by mixed_transfer_eigenvalue, lcm(p_a, p_b).
int common_cell_length(const Imps& a, const Imps& b);

}  // namespace bondalt
