#pragma once

#include <cstdint>

namespace bondalt {

/// Deterministic, platform-independent pseudo random stream (splitmix64).
/// The standard library distributions are implementation-defined, so every
/// random draw in the library goes through this generator to keep campaign
/// results byte-reproducible across compilers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 bits of mantissa.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in (-1, 1).
  double uniform_signed() { return 2.0 * uniform() - 1.0; }

  /// Standard normal via Box-Muller (no libstdc++ distribution involved).
  double gaussian();

 private:
  std::uint64_t state_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

/// Stable 64-bit mix of (master seed, index); used to derive per-trial
/// seeds so results do not depend on execution order.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

/// FNV-1a over a byte buffer; used for provenance hashes in CSV headers.
std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t seed = 0xCBF29CE484222325ULL);

}  // namespace bondalt
