#include "bondalt/model.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "bondalt/errors.hpp"
#include "transfer_detail.hpp"

namespace bondalt {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;
}  // namespace

ModelParams ModelParams::from_theta(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  ModelParams p;
  p.theta = t;
  p.j_even = std::cos(t);
  p.j_odd = std::sin(t);
  return p;
}

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::I_AFM: return "I_AFM";
    case Phase::II_ODD_AFM: return "II_ODD_AFM";
    case Phase::III_FM: return "III_FM";
    case Phase::IV_EVEN_AFM: return "IV_EVEN_AFM";
    case Phase::BOUNDARY: return "BOUNDARY";
  }
  return "UNKNOWN";
}

Phase quadrant_phase(double theta, double boundary_tol) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  for (int k = 0; k <= 4; ++k) {
    if (std::abs(t - k * kHalfPi) < boundary_tol) return Phase::BOUNDARY;
  }
  if (t < kHalfPi) return Phase::I_AFM;
  if (t < 2.0 * kHalfPi) return Phase::II_ODD_AFM;
  if (t < 3.0 * kHalfPi) return Phase::III_FM;
  return Phase::IV_EVEN_AFM;
}

Eigen::Matrix4cd bond_hamiltonian(const ModelParams& params, BondParity parity) {
  const double c = parity == BondParity::even ? params.j_even : params.j_odd;
  Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
  h(0, 0) = c / 4.0;   // uu
  h(1, 1) = -c / 4.0;  // ud
  h(2, 2) = -c / 4.0;  // du
  h(3, 3) = c / 4.0;   // dd
  return h;
}

std::pair<Imps, Imps> exact_ground_pair(const ModelParams& params) {
  const Phase phase = quadrant_phase(params.theta);
  if (phase == Phase::BOUNDARY) {
    throw BoundaryError("exact_ground_pair: theta sits on a phase boundary; "
                        "the ground manifold is infinitely degenerate there");
  }
  std::array<int, 4> first{};
  switch (phase) {
    case Phase::I_AFM: first = {1, -1, 1, -1}; break;
    case Phase::II_ODD_AFM: first = {1, 1, -1, -1}; break;
    case Phase::III_FM: first = {1, 1, 1, 1}; break;
    case Phase::IV_EVEN_AFM: first = {1, -1, -1, 1}; break;
    case Phase::BOUNDARY: break;  // unreachable
  }
  std::array<int, 4> second{};
  for (int i = 0; i < 4; ++i) second[i] = -first[i];
  return {basis_product_state(first), basis_product_state(second)};
}

double energy_per_site(const Imps& state, const ModelParams& params) {
  if (state.period % 2 != 0) {
    throw InvalidInputError("energy_per_site: period must be even for a consistent bond parity");
  }
  const auto env = detail::compute_environments(state);
  double total = 0.0;
  for (int bond = 0; bond < state.period; ++bond) {
    const auto parity = bond % 2 == 0 ? BondParity::even : BondParity::odd;
    total += detail::two_site_expectation(state, env, bond_hamiltonian(params, parity), bond);
  }
  return total / state.period;
}

}  // namespace bondalt
