#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bondalt/errors.hpp>
#include <bondalt/model.hpp>
#include <bondalt/oracle.hpp>

#include <array>
#include <cmath>
#include <numbers>

using namespace bondalt;

namespace {
constexpr double kPi = std::numbers::pi;
const double kMinusRoot2Over8 = -std::sqrt(2.0) / 8.0;
}  // namespace

TEST_CASE("couplings derive from theta and wrap into [0, 2pi)") {
  const ModelParams p = ModelParams::from_theta(kPi / 4.0);
  CHECK(p.j_even == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(p.j_odd == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(p.j_even * p.j_even + p.j_odd * p.j_odd == doctest::Approx(1.0).epsilon(1e-12));

  const ModelParams wrapped = ModelParams::from_theta(-kPi / 2.0);
  CHECK(wrapped.theta == doctest::Approx(1.5 * kPi).epsilon(1e-12));
}

TEST_CASE("bond term is diag(c/4, -c/4, -c/4, c/4)") {
  const ModelParams p = ModelParams::from_theta(kPi / 4.0);
  const Eigen::Matrix4cd h = bond_hamiltonian(p, BondParity::even);
  const double c4 = std::cos(kPi / 4.0) / 4.0;  // sqrt(2)/8
  CHECK(h(0, 0).real() == doctest::Approx(c4).epsilon(1e-15));
  CHECK(h(1, 1).real() == doctest::Approx(-c4).epsilon(1e-15));
  CHECK(h(2, 2).real() == doctest::Approx(-c4).epsilon(1e-15));
  CHECK(h(3, 3).real() == doctest::Approx(c4).epsilon(1e-15));
  CHECK(h.cwiseAbs().sum() == doctest::Approx(4 * c4).epsilon(1e-12));  // diagonal only

  const Eigen::Matrix4cd zero = bond_hamiltonian(ModelParams::from_theta(0.0), BondParity::odd);
  CHECK(zero.cwiseAbs().maxCoeff() == 0.0);

  const Eigen::Matrix4cd neg =
      bond_hamiltonian(ModelParams::from_theta(5.0 * kPi / 4.0), BondParity::even);
  CHECK(neg(0, 0).real() == doctest::Approx(-std::sqrt(2.0) / 8.0).epsilon(1e-13));
  CHECK(neg(1, 1).real() == doctest::Approx(std::sqrt(2.0) / 8.0).epsilon(1e-13));
}

TEST_CASE("quadrants classify to their phases with boundary tolerance") {
  CHECK(quadrant_phase(kPi / 4.0) == Phase::I_AFM);
  CHECK(quadrant_phase(3.0 * kPi / 4.0) == Phase::II_ODD_AFM);
  CHECK(quadrant_phase(5.0 * kPi / 4.0) == Phase::III_FM);
  CHECK(quadrant_phase(7.0 * kPi / 4.0) == Phase::IV_EVEN_AFM);
  CHECK(quadrant_phase(0.0) == Phase::BOUNDARY);
  CHECK(quadrant_phase(kPi / 2.0 + 5e-10) == Phase::BOUNDARY);
  CHECK(quadrant_phase(kPi / 2.0 + 1e-8) == Phase::II_ODD_AFM);
  CHECK(quadrant_phase(2.0 * kPi) == Phase::BOUNDARY);
}

TEST_CASE("exact ground pair reproduces the quadrant spin patterns") {
  SUBCASE("phase I alternates site by site") {
    const auto [a, b] = exact_ground_pair(ModelParams::from_theta(kPi / 4.0));
    for (int r = 0; r <= 6; ++r) {
      const double expected = (r % 2 == 0) ? 1.0 : -1.0;
      CHECK(correlation(a, SiteObservable::sigma_z(), 0, r) ==
            doctest::Approx(expected).epsilon(1e-10));
      CHECK(correlation(b, SiteObservable::sigma_z(), 0, r) ==
            doctest::Approx(expected).epsilon(1e-10));
    }
  }
  SUBCASE("phase III is fully polarized") {
    const auto [a, b] = exact_ground_pair(ModelParams::from_theta(5.0 * kPi / 4.0));
    for (int site = 0; site < 4; ++site) {
      CHECK(expectation(a, SiteObservable::sigma_z(), site) == doctest::Approx(1.0));
      CHECK(expectation(b, SiteObservable::sigma_z(), site) == doctest::Approx(-1.0));
    }
  }
  SUBCASE("phase IV starts up down down up") {
    const auto [a, b] = exact_ground_pair(ModelParams::from_theta(7.0 * kPi / 4.0));
    const std::array<double, 4> pattern{1.0, -1.0, -1.0, 1.0};
    for (int site = 0; site < 4; ++site) {
      CHECK(expectation(a, SiteObservable::sigma_z(), site) ==
            doctest::Approx(pattern[site]).epsilon(1e-12));
      CHECK(expectation(b, SiteObservable::sigma_z(), site) ==
            doctest::Approx(-pattern[site]).epsilon(1e-12));
    }
  }
  SUBCASE("boundaries are refused") {
    CHECK_THROWS_AS(exact_ground_pair(ModelParams::from_theta(kPi / 2.0)), BoundaryError);
    CHECK_THROWS_AS(exact_ground_pair(ModelParams::from_theta(0.0)), BoundaryError);
  }
}

TEST_CASE("ground energies match hand evaluation and the finite-chain oracle") {
  const ModelParams p14 = ModelParams::from_theta(kPi / 4.0);
  const auto [g1, g2] = exact_ground_pair(p14);
  CHECK(energy_per_site(g1, p14) == doctest::Approx(kMinusRoot2Over8).epsilon(1e-10));
  CHECK(energy_per_site(g2, p14) == doctest::Approx(kMinusRoot2Over8).epsilon(1e-10));
  const GroundManifold oracle = brute_force_ground(8, p14);
  CHECK(energy_per_site(g1, p14) == doctest::Approx(oracle.energy_per_site).epsilon(1e-12));

  // theta = 0 is a boundary: only J bonds contribute, minimized by the Neel pattern
  const ModelParams p0 = ModelParams::from_theta(0.0);
  const Imps neel = basis_product_state(std::array<int, 4>{1, -1, 1, -1});
  CHECK(energy_per_site(neel, p0) == doctest::Approx(-0.125).epsilon(1e-10));
  CHECK(brute_force_ground(8, p0).energy_per_site == doctest::Approx(-0.125).epsilon(1e-12));

  const ModelParams p54 = ModelParams::from_theta(5.0 * kPi / 4.0);
  const Imps up = basis_product_state(std::array<int, 4>{1, 1, 1, 1});
  CHECK(energy_per_site(up, p54) == doctest::Approx(kMinusRoot2Over8).epsilon(1e-10));
}

TEST_CASE("energy is invariant under global spin flip and two-site translation") {
  const ModelParams p = ModelParams::from_theta(1.1);
  std::vector<Imps> states;
  states.push_back(random_product_state(31, 4));
  states.push_back(random_entangled_state(32, 4, 2));
  states.push_back(exact_ground_pair(p).first);
  for (const auto& s : states) {
    const double e = energy_per_site(s, p);
    CHECK(std::abs(energy_per_site(spin_flip(s), p) - e) < 1e-10);
    CHECK(std::abs(energy_per_site(translate(s, 2), p) - e) < 1e-10);
  }
}

TEST_CASE("odd periods are rejected by the energy evaluation") {
  const Imps p1 = random_product_state(3, 1);
  CHECK_THROWS_AS(energy_per_site(p1, ModelParams::from_theta(1.0)), InvalidInputError);
}
