#pragma once

#include <cstdint>
#include <vector>

#include "bondalt/model.hpp"

namespace bondalt {

/// Exhaustive ground manifold of a periodic finite chain. The Hamiltonian is
/// diagonal, so eigenstates are classical configurations; bit k of a
/// configuration word is site k, with a set bit meaning spin up (+1).
/// Configurations are sorted ascending as unsigned integers.
struct GroundManifold {
  int length = 0;
  double energy_per_site = 0.0;
  std::vector<std::uint32_t> configurations;
  int degeneracy = 0;
};

/// Enumerates all 2^L configurations of a periodic chain of even length
/// L <= 24 and returns the minimum energy per site together with every
/// minimizer. Ties are resolved with a 1e-12 absolute energy tolerance.
GroundManifold brute_force_ground(int length, const ModelParams& params);

/// Observables evaluated directly on one classical configuration of the
/// manifold: correlations <sigma^z_0 sigma^z_r> for r = 0..L/2 and the four
/// order parameters anchored at site 0.
struct OracleObservables {
  std::vector<double> correlations;
  double m_afm = 0.0;
  double m_fm = 0.0;
  double m_even_pair = 0.0;
  double m_odd_pair = 0.0;
};

OracleObservables oracle_observables(const GroundManifold& manifold, int config_index);

}  // namespace bondalt
