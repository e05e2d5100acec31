#include "bondalt/oracle.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <thread>

#include "bondalt/errors.hpp"

namespace bondalt {

namespace {

struct ChunkResult {
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::uint32_t> ties;
};

constexpr double kTieTol = 1e-12;

// E(config) = (J/4)(L/2 - 2 a_even) + (J'/4)(L/2 - 2 a_odd), where a_even /
// a_odd count anti-aligned bonds of each parity. Bit k of the word is site k.
ChunkResult scan_range(std::uint32_t begin, std::uint32_t end, int length,
                       const ModelParams& params) {
  const int half = length / 2;
  const std::uint32_t site_mask = (1u << length) - 1u;  // length <= 24
  const std::uint32_t even_mask = 0x55555555u & site_mask;
  const std::uint32_t odd_mask = 0xAAAAAAAAu & site_mask;

  ChunkResult out;
  for (std::uint32_t config = begin; config < end; ++config) {
    const std::uint32_t rot = (config >> 1) | ((config & 1u) << (length - 1));
    const std::uint32_t diff = config ^ rot;
    const int anti_even = std::popcount(diff & even_mask);
    const int anti_odd = std::popcount(diff & odd_mask);
    const double energy = 0.25 * params.j_even * (half - 2 * anti_even) +
                          0.25 * params.j_odd * (half - 2 * anti_odd);
    if (energy < out.best - kTieTol) {
      out.best = energy;
      out.ties.clear();
      out.ties.push_back(config);
    } else if (energy <= out.best + kTieTol) {
      out.ties.push_back(config);
    }
  }
  return out;
}

}  // namespace

GroundManifold brute_force_ground(int length, const ModelParams& params) {
  if (length < 2 || length % 2 != 0) {
    throw InvalidInputError("brute_force_ground: length must be even and >= 2");
  }
  if (length > 24) {
    throw InvalidInputError("brute_force_ground: length must be <= 24");
  }

  const std::uint32_t total = 1u << length;
  unsigned n_threads = std::min(std::thread::hardware_concurrency(), 8u);
  if (n_threads == 0) n_threads = 1;
  if (length <= 16) n_threads = 1;

  std::vector<ChunkResult> chunks(n_threads);
  if (n_threads == 1) {
    chunks[0] = scan_range(0, total, length, params);
  } else {
    std::vector<std::thread> pool;
    const std::uint32_t step = total / n_threads;
    for (unsigned t = 0; t < n_threads; ++t) {
      const std::uint32_t begin = t * step;
      const std::uint32_t end = (t + 1 == n_threads) ? total : begin + step;
      pool.emplace_back(
          [&, t, begin, end] { chunks[t] = scan_range(begin, end, length, params); });
    }
    for (auto& th : pool) th.join();
  }

  // min-reduce over chunks; chunks cover ascending ranges so concatenating
  // their tie lists keeps configurations sorted as unsigned integers.
  GroundManifold out;
  out.length = length;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : chunks) best = std::min(best, c.best);
  for (const auto& c : chunks) {
    for (std::uint32_t config : c.ties) {
      const ChunkResult one = scan_range(config, config + 1, length, params);
      if (one.best <= best + kTieTol) out.configurations.push_back(config);
    }
  }
  out.energy_per_site = best / length;
  out.degeneracy = static_cast<int>(out.configurations.size());
  return out;
}

OracleObservables oracle_observables(const GroundManifold& manifold, int config_index) {
  if (config_index < 0 || config_index >= manifold.degeneracy) {
    throw InvalidInputError("oracle_observables: configuration index out of range");
  }
  const int length = manifold.length;
  const std::uint32_t config = manifold.configurations[config_index];
  auto spin = [&](int site) {
    return ((config >> (site % length)) & 1u) ? 1.0 : -1.0;
  };

  OracleObservables out;
  out.correlations.resize(length / 2 + 1);
  for (int r = 0; r <= length / 2; ++r) {
    out.correlations[r] = spin(0) * spin(r);
  }

  // Pair magnetizations relative to site 0, same construction as the iMPS
  // order parameters but evaluated on the classical configuration.
  auto m_f = [&](int j) { return 0.5 * (spin(j) + spin(j + 1)); };
  auto m_af = [&](int j) { return 0.5 * (spin(j) - spin(j + 1)); };
  out.m_afm = 0.5 * (m_af(0) + m_af(2));
  out.m_fm = 0.5 * (m_f(0) + m_f(2));
  out.m_even_pair = 0.5 * (m_f(0) - m_f(2));
  out.m_odd_pair = 0.5 * (m_f(1) - m_f(3));
  return out;
}

}  // namespace bondalt
