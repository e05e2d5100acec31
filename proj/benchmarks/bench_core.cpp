#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include <bondalt/fidelity.hpp>
#include <bondalt/itebd.hpp>
#include <bondalt/linalg.hpp>
#include <bondalt/model.hpp>
#include <bondalt/oracle.hpp>
#include <bondalt/rng.hpp>

using namespace bondalt;

namespace {
constexpr double kPi = std::numbers::pi;

Matrix random_square(std::uint64_t seed, Eigen::Index n) {
  Rng rng(seed);
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = Complex(rng.gaussian(), rng.gaussian());
    }
  }
  return m;
}
}  // namespace

static void BM_TruncatedSvd(benchmark::State& state) {
  const Matrix m = random_square(1, state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(truncated_svd(m, state.range(0) / 2, 1e-12));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TruncatedSvd)->RangeMultiplier(2)->Range(8, 64)->Complexity();

static void BM_ApplyGate(benchmark::State& state) {
  const Imps psi = random_entangled_state(7, 4, static_cast<int>(state.range(0)));
  const ModelParams params = ModelParams::from_theta(kPi / 4.0);
  const Eigen::Matrix4cd gate = bond_gate(bond_hamiltonian(params, BondParity::even), 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_gate(psi, gate, 0));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ApplyGate)->RangeMultiplier(2)->Range(2, 32)->Complexity();

static void BM_FidelityPerSite(benchmark::State& state) {
  const Imps a = random_entangled_state(11, 4, static_cast<int>(state.range(0)));
  const Imps b = random_entangled_state(12, 4, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fidelity_per_site(a, b));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FidelityPerSite)->RangeMultiplier(2)->Range(2, 16)->Complexity();

static void BM_EvolveMidpoint(benchmark::State& state) {
  const ModelParams params = ModelParams::from_theta(kPi / 4.0);
  const Schedule schedule = Schedule::defaults();
  std::uint64_t seed = 100;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve(random_product_state(seed, 4), params, schedule, seed));
    ++seed;
  }
}
BENCHMARK(BM_EvolveMidpoint)->Unit(benchmark::kMillisecond);

static void BM_BruteForceGround(benchmark::State& state) {
  const ModelParams params = ModelParams::from_theta(3.0 * kPi / 4.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_force_ground(static_cast<int>(state.range(0)), params));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BruteForceGround)->DenseRange(12, 20, 4)->Complexity();

BENCHMARK_MAIN();
