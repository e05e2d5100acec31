#pragma once

#include <array>

#include "bondalt/imps.hpp"
#include "bondalt/model.hpp"

namespace bondalt {

/// Pairwise magnetizations built from single-site sigma^z expectations:
///   m_f[j]  = <sigma^z_{i+j} + sigma^z_{i+j+1}> / 2
///   m_af[j] = <sigma^z_{i+j} - sigma^z_{i+j+1}> / 2
/// for j = 0..3 relative to an even anchor site i.
struct LocalMagnetizations {
  std::array<double, 4> m_f{};
  std::array<double, 4> m_af{};
};

LocalMagnetizations local_magnetizations(const Imps& state, int origin_site = 0);

/// The four order parameters (sigma^z units, so fully ordered states reach
/// magnitude 1) plus the resulting phase label:
///   m_afm       = (m_af[0] + m_af[2]) / 2   -> phase I
///   m_fm        = (m_f[0]  + m_f[2])  / 2   -> phase III
///   m_even_pair = (m_f[0]  - m_f[2])  / 2   -> phase II  (odd AFM)
///   m_odd_pair  = (m_f[1]  - m_f[3])  / 2   -> phase IV  (even AFM)
/// anchored at unit-cell site 0. The even/odd names describe which sublattice
/// of pair magnetizations is differenced; which phase each one detects
/// follows from the Hamiltonian's bond parity, with the even-site difference
/// firing in the odd AFM phase and vice versa.
struct OrderParameterSet {
  double m_afm = 0.0;
  double m_fm = 0.0;
  double m_even_pair = 0.0;
  double m_odd_pair = 0.0;
  Phase phase = Phase::BOUNDARY;
};

OrderParameterSet order_parameters(const Imps& state);

inline constexpr double kClassifyThreshold = 0.5;

/// The unique phase whose order parameter exceeds the threshold in
/// magnitude; BOUNDARY when none or several do.
Phase classify(double m_afm, double m_fm, double m_even_pair, double m_odd_pair,
               double threshold = kClassifyThreshold);

}  // namespace bondalt
