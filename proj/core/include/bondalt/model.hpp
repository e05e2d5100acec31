#pragma once

#include <utility>

#include "bondalt/imps.hpp"
#include "bondalt/linalg.hpp"

namespace bondalt {

/// Couplings of the bond-alternating Ising chain
///   H = sum_i ( J' S^z_{2i-1} S^z_{2i} + J S^z_{2i} S^z_{2i+1} ),
/// parametrized as J = cos(theta), J' = sin(theta). Even-index bonds
/// (2i, 2i+1) carry J, odd-index bonds carry J'. Site 0 is an even site and
/// bond (0,1) carries J.
struct ModelParams {
  double theta = 0.0;
  double j_even = 1.0;  // J
  double j_odd = 0.0;   // J'

  /// Wraps theta into [0, 2*pi) and derives the couplings.
  static ModelParams from_theta(double theta);

  double coupling(int bond_index) const { return bond_index % 2 == 0 ? j_even : j_odd; }
};

/// The four ordered phases, one per quadrant of (J, J'); BOUNDARY at the
/// lines J = 0 or J' = 0 where the ground manifold is extensively degenerate.
enum class Phase { I_AFM, II_ODD_AFM, III_FM, IV_EVEN_AFM, BOUNDARY };

const char* phase_name(Phase p);

inline constexpr double kBoundaryTol = 1e-9;

/// Phase of the quadrant containing theta; BOUNDARY within kBoundaryTol of a
/// multiple of pi/2.
Phase quadrant_phase(double theta, double boundary_tol = kBoundaryTol);

enum class BondParity { even, odd };

/// Two-site bond term c * S^z x S^z as a diagonal 4x4 matrix in the basis
/// {uu, ud, du, dd}: diag(c/4, -c/4, -c/4, c/4) with c = J or J'.
Eigen::Matrix4cd bond_hamiltonian(const ModelParams& params, BondParity parity);

/// The two symmetry-broken product groundstates of the quadrant containing
/// theta, as period-4 states:
///   I   up,down,up,down    / flipped      (Neel)
///   II  up,up,down,down    / flipped
///   III all up             / all down
///   IV  up,down,down,up    / flipped
/// Throws BoundaryError within kBoundaryTol of a boundary.
std::pair<Imps, Imps> exact_ground_pair(const ModelParams& params);

/// Unit-cell average of the bond energies (one bond per site). Period must
/// be even so the bond parity pattern closes around the cell.
double energy_per_site(const Imps& state, const ModelParams& params);

}  // namespace bondalt
