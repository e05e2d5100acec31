#include "bondalt/imps.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "bondalt/errors.hpp"
#include "bondalt/rng.hpp"
#include "transfer_detail.hpp"

namespace bondalt {

SiteObservable SiteObservable::sigma_z() {
  SiteObservable o;
  o.matrix << 1.0, 0.0, 0.0, -1.0;
  return o;
}

SiteObservable SiteObservable::sigma_x() {
  SiteObservable o;
  o.matrix << 0.0, 1.0, 1.0, 0.0;
  return o;
}

SiteObservable SiteObservable::identity() {
  SiteObservable o;
  o.matrix = Eigen::Matrix2cd::Identity();
  return o;
}

void SiteObservable::validate() const {
  if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw InvalidInputError("SiteObservable: matrix is not Hermitian within 1e-12");
  }
}

Eigen::Index Imps::bond_dim(int bond) const { return lambdas[bond].size(); }

std::array<Matrix, 2> Imps::a_tensor(int site) const {
  return {gammas[site][0] * lambdas[site].asDiagonal(),
          gammas[site][1] * lambdas[site].asDiagonal()};
}

void Imps::validate() const {
  if (period < 1) throw InvalidInputError("Imps: period must be >= 1");
  if (static_cast<int>(gammas.size()) != period || static_cast<int>(lambdas.size()) != period) {
    throw InvalidInputError("Imps: tensor count does not match period");
  }
  for (int k = 0; k < period; ++k) {
    const Eigen::Index dl = bond_dim(left_bond(k));
    const Eigen::Index dr = bond_dim(k);
    if (dr < 1 || dr > chi_max) {
      throw InvalidInputError("Imps: bond dimension outside [1, chi_max]");
    }
    for (int s = 0; s < 2; ++s) {
      if (gammas[k][s].rows() != dl || gammas[k][s].cols() != dr) {
        throw InvalidInputError("Imps: gamma shape inconsistent with bond dimensions");
      }
      if (!gammas[k][s].allFinite()) throw InvalidInputError("Imps: non-finite gamma entries");
    }
    double sum_sq = 0.0;
    for (Eigen::Index i = 0; i < dr; ++i) {
      const double v = lambdas[k](i);
      if (!(v >= 0.0)) throw InvalidInputError("Imps: lambda entries must be >= 0");
      if (i > 0 && lambdas[k](i) > lambdas[k](i - 1) + 1e-14) {
        throw InvalidInputError("Imps: lambda vector not sorted descending");
      }
      sum_sq += v * v;
    }
    if (std::abs(sum_sq - 1.0) > 1e-10) {
      throw InvalidInputError("Imps: lambda square sum deviates from 1");
    }
  }
}

Imps random_product_state(std::uint64_t seed, int period) {
  if (period < 1) throw InvalidInputError("random_product_state: period must be >= 1");
  Rng rng(seed);
  Imps s;
  s.period = period;
  s.gammas.resize(period);
  s.lambdas.resize(period);
  for (int k = 0; k < period; ++k) {
    double up = rng.gaussian();
    double down = rng.gaussian();
    double n = std::sqrt(up * up + down * down);
    while (n < 1e-12) {
      up = rng.gaussian();
      down = rng.gaussian();
      n = std::sqrt(up * up + down * down);
    }
    s.gammas[k][0] = Matrix::Constant(1, 1, Complex(up / n, 0.0));
    s.gammas[k][1] = Matrix::Constant(1, 1, Complex(down / n, 0.0));
    s.lambdas[k] = RealVector::Ones(1);
  }
  return s;
}

Imps basis_product_state(std::span<const int> pattern) {
  if (pattern.empty()) throw InvalidInputError("basis_product_state: empty pattern");
  Imps s;
  s.period = static_cast<int>(pattern.size());
  s.gammas.resize(s.period);
  s.lambdas.resize(s.period);
  for (int k = 0; k < s.period; ++k) {
    if (pattern[k] != 1 && pattern[k] != -1) {
      throw InvalidInputError("basis_product_state: pattern entries must be +1 or -1");
    }
    s.gammas[k][0] = Matrix::Constant(1, 1, pattern[k] == 1 ? 1.0 : 0.0);
    s.gammas[k][1] = Matrix::Constant(1, 1, pattern[k] == -1 ? 1.0 : 0.0);
    s.lambdas[k] = RealVector::Ones(1);
  }
  return s;
}

Imps random_entangled_state(std::uint64_t seed, int period, int chi) {
  if (period < 1) throw InvalidInputError("random_entangled_state: period must be >= 1");
  if (chi < 1) throw InvalidInputError("random_entangled_state: chi must be >= 1");
  Rng rng(seed);
  Imps s;
  s.period = period;
  s.chi_max = std::max(chi, 32);
  s.gammas.resize(period);
  s.lambdas.resize(period);
  for (int k = 0; k < period; ++k) {
    for (int sp = 0; sp < 2; ++sp) {
      s.gammas[k][sp] = Matrix(chi, chi);
      for (int i = 0; i < chi; ++i) {
        for (int j = 0; j < chi; ++j) {
          s.gammas[k][sp](i, j) = Complex(rng.gaussian(), 0.0);
        }
      }
    }
    RealVector lam(chi);
    for (int i = 0; i < chi; ++i) lam(i) = 0.25 + rng.uniform();
    std::sort(lam.data(), lam.data() + chi, std::greater<double>());
    lam /= lam.norm();
    s.lambdas[k] = lam;
  }
  return normalize(s);
}

Imps normalize(const Imps& state) {
  const Complex mu = detail::mixed_eigenvalue(state, state);
  const double amu = std::abs(mu);
  if (!(amu > 1e-290)) {
    throw DegenerateStateError("normalize: state has vanishing norm per site");
  }
  const double scale = std::pow(amu, -1.0 / (2.0 * state.period));
  Imps out = state;
  for (auto& g : out.gammas) {
    g[0] *= scale;
    g[1] *= scale;
  }
  return out;
}

double expectation(const Imps& state, const SiteObservable& obs, int site) {
  obs.validate();
  if (site < 0 || site >= state.period) {
    throw InvalidInputError("expectation: site index out of range");
  }
  const auto env = detail::compute_environments(state);
  return detail::site_expectation(state, env, obs.matrix, site);
}

double correlation(const Imps& state, const SiteObservable& obs, int site, int separation) {
  obs.validate();
  if (site < 0 || site >= state.period) {
    throw InvalidInputError("correlation: site index out of range");
  }
  if (separation < 0) throw InvalidInputError("correlation: separation must be >= 0");
  const auto env = detail::compute_environments(state);
  return detail::correlation_with_env(state, env, obs.matrix, site, separation);
}

Imps spin_flip(const Imps& state) {
  Imps out = state;
  for (auto& g : out.gammas) std::swap(g[0], g[1]);
  return out;
}

Imps translate(const Imps& state, int shift) {
  if (shift < 0 || shift >= state.period) {
    throw InvalidInputError("translate: shift must be in [0, period)");
  }
  Imps out = state;
  for (int k = 0; k < state.period; ++k) {
    out.gammas[k] = state.gammas[(k + shift) % state.period];
    out.lambdas[k] = state.lambdas[(k + shift) % state.period];
  }
  return out;
}

Complex mixed_transfer_eigenvalue(const Imps& a, const Imps& b) {
  return detail::mixed_eigenvalue(a, b);
}

int common_cell_length(const Imps& a, const Imps& b) {
  return std::lcm(a.period, b.period);
}

}  // namespace bondalt
