#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bondalt/errors.hpp>
#include <bondalt/imps.hpp>
#include <bondalt/oracle.hpp>

#include <cmath>
#include <numbers>

using namespace bondalt;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("L=4 AFM point: the two Neel configurations") {
  const GroundManifold gm = brute_force_ground(4, ModelParams::from_theta(kPi / 4.0));
  REQUIRE(gm.degeneracy == 2);
  // bit k = site k, set = up: 0101 and 1010
  CHECK(gm.configurations[0] == 5u);
  CHECK(gm.configurations[1] == 10u);
  CHECK(gm.energy_per_site == doctest::Approx(-std::sqrt(2.0) / 8.0).epsilon(1e-12));
}

TEST_CASE("theta = 0 decouples the odd bonds: 2^(L/4 pairs) ground configurations") {
  const GroundManifold gm = brute_force_ground(8, ModelParams::from_theta(0.0));
  CHECK(gm.degeneracy == 16);
  CHECK(gm.energy_per_site == doctest::Approx(-0.125).epsilon(1e-12));
}

TEST_CASE("FM quadrant on L=6: all-up and all-down") {
  const GroundManifold gm = brute_force_ground(6, ModelParams::from_theta(5.0 * kPi / 4.0));
  REQUIRE(gm.degeneracy == 2);
  CHECK(gm.configurations[0] == 0u);
  CHECK(gm.configurations[1] == 63u);
}

TEST_CASE("interior quadrants are doubly degenerate at several lengths") {
  for (double theta : {kPi / 4.0, 3.0 * kPi / 4.0, 5.0 * kPi / 4.0, 7.0 * kPi / 4.0, 0.9, 4.0}) {
    for (int length : {4, 8, 12}) {
      const GroundManifold gm = brute_force_ground(length, ModelParams::from_theta(theta));
      CHECK(gm.degeneracy == 2);
    }
  }
}

TEST_CASE("L=8 and L=12 agree on the energy per site at the quadrant midpoints") {
  for (double theta : {kPi / 4.0, 3.0 * kPi / 4.0, 5.0 * kPi / 4.0, 7.0 * kPi / 4.0}) {
    const ModelParams p = ModelParams::from_theta(theta);
    const double e8 = brute_force_ground(8, p).energy_per_site;
    const double e12 = brute_force_ground(12, p).energy_per_site;
    CHECK(std::abs(e8 - e12) < 1e-14);
    CHECK(e8 == doctest::Approx(-std::sqrt(2.0) / 8.0).epsilon(1e-12));
  }
}

TEST_CASE("invalid lengths are rejected") {
  const ModelParams p = ModelParams::from_theta(1.0);
  CHECK_THROWS_AS(brute_force_ground(7, p), InvalidInputError);
  CHECK_THROWS_AS(brute_force_ground(0, p), InvalidInputError);
  CHECK_THROWS_AS(brute_force_ground(26, p), InvalidInputError);
}

TEST_CASE("configurations come back sorted as unsigned integers") {
  const GroundManifold gm = brute_force_ground(12, ModelParams::from_theta(0.3));
  for (std::size_t i = 1; i < gm.configurations.size(); ++i) {
    CHECK(gm.configurations[i - 1] < gm.configurations[i]);
  }
}

TEST_CASE("iMPS correlations match the oracle on the matching configuration") {
  for (double theta : {kPi / 4.0, 3.0 * kPi / 4.0, 5.0 * kPi / 4.0, 7.0 * kPi / 4.0}) {
    const ModelParams params = ModelParams::from_theta(theta);
    const auto pair = exact_ground_pair(params);
    const GroundManifold gm = brute_force_ground(12, params);
    REQUIRE(gm.degeneracy == 2);

    for (const Imps& state : {pair.first, pair.second}) {
      // identify the classical configuration this state realizes
      int match = -1;
      for (int c = 0; c < gm.degeneracy; ++c) {
        bool same = true;
        for (int site = 0; site < 4; ++site) {
          const double spin = ((gm.configurations[c] >> site) & 1u) ? 1.0 : -1.0;
          if (std::abs(expectation(state, SiteObservable::sigma_z(), site) - spin) > 1e-10) {
            same = false;
          }
        }
        if (same) match = c;
      }
      REQUIRE(match >= 0);
      const OracleObservables obs = oracle_observables(gm, match);
      for (int r = 0; r <= 6; ++r) {
        CHECK(std::abs(correlation(state, SiteObservable::sigma_z(), 0, r) -
                       obs.correlations[r]) < 1e-8);
      }
    }
  }
}

TEST_CASE("classical observables on selected configurations") {
  SUBCASE("Neel: same sublattice correlates positively") {
    const GroundManifold gm = brute_force_ground(8, ModelParams::from_theta(kPi / 4.0));
    const OracleObservables obs = oracle_observables(gm, 0);
    CHECK(obs.correlations[2] == doctest::Approx(1.0));
    CHECK(obs.correlations[3] == doctest::Approx(-1.0));
    CHECK(std::abs(obs.m_afm) == doctest::Approx(1.0));
    CHECK(obs.m_fm == doctest::Approx(0.0));
  }
  SUBCASE("period-4 pair pattern repeats at separation 4") {
    const GroundManifold gm = brute_force_ground(8, ModelParams::from_theta(3.0 * kPi / 4.0));
    REQUIRE(gm.degeneracy == 2);
    const OracleObservables obs = oracle_observables(gm, 0);
    CHECK(obs.correlations[4] == doctest::Approx(1.0));
    CHECK(obs.correlations[2] == doctest::Approx(-1.0));
    CHECK(std::abs(obs.m_even_pair) == doctest::Approx(1.0));
    CHECK(obs.m_afm == doctest::Approx(0.0));
  }
  SUBCASE("fully polarized configuration") {
    const GroundManifold gm = brute_force_ground(6, ModelParams::from_theta(5.0 * kPi / 4.0));
    const OracleObservables obs = oracle_observables(gm, 1);  // config 63 = all up
    CHECK(obs.m_fm == doctest::Approx(1.0));
    CHECK(obs.m_afm == doctest::Approx(0.0));
    CHECK(obs.m_even_pair == doctest::Approx(0.0));
    CHECK(obs.m_odd_pair == doctest::Approx(0.0));
    for (double c : obs.correlations) CHECK(c == doctest::Approx(1.0));
  }
  SUBCASE("index bounds") {
    const GroundManifold gm = brute_force_ground(4, ModelParams::from_theta(kPi / 4.0));
    CHECK_THROWS_AS(oracle_observables(gm, 2), InvalidInputError);
    CHECK_THROWS_AS(oracle_observables(gm, -1), InvalidInputError);
  }
}
