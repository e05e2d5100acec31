#include "bondalt/orderparams.hpp"

#include <cmath>

#include "bondalt/errors.hpp"
#include "transfer_detail.hpp"

namespace bondalt {

LocalMagnetizations local_magnetizations(const Imps& state, int origin_site) {
  if (state.period != 4) {
    throw InvalidInputError("local_magnetizations: period-4 state required");
  }
  if (origin_site % 2 != 0) {
    throw InvalidInputError("local_magnetizations: origin must be an even site");
  }
  const auto env = detail::compute_environments(state);
  const Eigen::Matrix2cd sz = SiteObservable::sigma_z().matrix;

  std::array<double, 4> sigma{};
  for (int j = 0; j < 4; ++j) {
    sigma[j] = detail::site_expectation(state, env, sz, (origin_site + j) % 4);
  }
  LocalMagnetizations out;
  for (int j = 0; j < 4; ++j) {
    const double next = sigma[(j + 1) % 4];
    out.m_f[j] = 0.5 * (sigma[j] + next);
    out.m_af[j] = 0.5 * (sigma[j] - next);
  }
  return out;
}

OrderParameterSet order_parameters(const Imps& state) {
  const LocalMagnetizations m = local_magnetizations(state, 0);
  OrderParameterSet ops;
  ops.m_afm = 0.5 * (m.m_af[0] + m.m_af[2]);
  ops.m_fm = 0.5 * (m.m_f[0] + m.m_f[2]);
  ops.m_even_pair = 0.5 * (m.m_f[0] - m.m_f[2]);
  ops.m_odd_pair = 0.5 * (m.m_f[1] - m.m_f[3]);
  ops.phase = classify(ops.m_afm, ops.m_fm, ops.m_even_pair, ops.m_odd_pair);
  return ops;
}

Phase classify(double m_afm, double m_fm, double m_even_pair, double m_odd_pair,
               double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw InvalidInputError("classify: threshold must lie in (0, 1)");
  }
  int hits = 0;
  Phase label = Phase::BOUNDARY;
  if (std::abs(m_afm) > threshold) {
    ++hits;
    label = Phase::I_AFM;
  }
  if (std::abs(m_fm) > threshold) {
    ++hits;
    label = Phase::III_FM;
  }
  if (std::abs(m_even_pair) > threshold) {
    ++hits;
    label = Phase::II_ODD_AFM;
  }
  if (std::abs(m_odd_pair) > threshold) {
    ++hits;
    label = Phase::IV_EVEN_AFM;
  }
  return hits == 1 ? label : Phase::BOUNDARY;
}

}  // namespace bondalt
