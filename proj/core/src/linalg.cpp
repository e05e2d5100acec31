#include "bondalt/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <vector>

#include "bondalt/errors.hpp"
#include "bondalt/rng.hpp"

namespace bondalt {

SvdResult truncated_svd(const Matrix& m, Eigen::Index chi_max, double cutoff) {
  if (m.rows() < 1 || m.cols() < 1) {
    throw InvalidInputError("truncated_svd: empty matrix");
  }
  if (!m.allFinite()) {
    throw InvalidInputError("truncated_svd: input has NaN/Inf entries");
  }
  if (chi_max < 1) {
    throw InvalidInputError("truncated_svd: chi_max must be >= 1");
  }
  if (cutoff < 0.0) {
    throw InvalidInputError("truncated_svd: cutoff must be >= 0");
  }

  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw NumericError("truncated_svd: Jacobi SVD did not converge", 0.0,
                       static_cast<int>(m.rows() * m.cols()));
  }

  const RealVector& all = svd.singularValues();  // descending by construction
  const double s_max = all.size() > 0 ? all(0) : 0.0;

  Eigen::Index keep = std::min<Eigen::Index>(chi_max, all.size());
  while (keep > 1 && all(keep - 1) < cutoff * s_max) --keep;
  // keep >= 1 always; a rank-0 input keeps one zero value.
  if (all.size() > 0 && all(0) < cutoff * s_max) keep = 1;

  double discarded_sq = 0.0;
  double total_sq = 0.0;
  for (Eigen::Index i = 0; i < all.size(); ++i) {
    total_sq += all(i) * all(i);
    if (i >= keep) discarded_sq += all(i) * all(i);
  }

  SvdResult out;
  out.left_vectors = svd.matrixU().leftCols(keep);
  out.singular_values = all.head(keep);
  out.right_vectors_conj = svd.matrixV().leftCols(keep).adjoint();
  out.truncation_error = total_sq > 0.0 ? std::sqrt(discarded_sq) / std::sqrt(total_sq) : 0.0;
  return out;
}

namespace {

Vector seeded_unit_vector(Eigen::Index dim, Rng& rng) {
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    v(i) = Complex(rng.gaussian(), rng.gaussian());
  }
  const double n = v.norm();
  if (n == 0.0) {
    v.setZero();
    v(0) = 1.0;
    return v;
  }
  return v / n;
}

// Relative spread of the trailing growth-rate estimates.
double growth_spread(const std::deque<double>& growth) {
  double lo = growth.front(), hi = growth.front();
  for (double g : growth) {
    lo = std::min(lo, g);
    hi = std::max(hi, g);
  }
  const double scale = std::max(std::abs(hi), 1e-300);
  return (hi - lo) / scale;
}

// Krylov (Arnoldi) refinement over span{x, Ax, ..., A^(k-1) x}. Plain power
// iteration stalls when the leading magnitude is shared or clustered (the
// +-lambda case, the complex-conjugate pair of a real map, or several
// eigenvalues within a few percent); the projected small eigenproblem
// resolves such clusters directly. Fills `out` with the best Ritz pair and
// returns its residual; the Ritz vector is a strictly better iterate even
// when the residual misses tol.
struct RitzResult {
  Complex value;
  Vector vector;
  double residual = std::numeric_limits<double>::infinity();
  bool tie_suspected = false;
};

bool arnoldi_refine(const LinearMap& apply, const Vector& x, RitzResult* out) {
  const Eigen::Index dim = x.size();
  const int k = static_cast<int>(std::min<Eigen::Index>(8, dim));
  if (k < 2) return false;

  std::vector<Vector> q;
  q.reserve(k + 1);
  q.push_back(x.normalized());
  Matrix h = Matrix::Zero(k + 1, k);
  int built = 0;
  Vector w(dim);
  for (int j = 0; j < k; ++j) {
    apply(q[j], w);
    if (!w.allFinite()) return false;
    for (int i = 0; i <= j; ++i) {
      h(i, j) = q[i].dot(w);
      w -= h(i, j) * q[i];
    }
    // re-orthogonalize once; Gram-Schmidt alone loses orthogonality here
    for (int i = 0; i <= j; ++i) {
      const Complex c = q[i].dot(w);
      h(i, j) += c;
      w -= c * q[i];
    }
    built = j + 1;
    const double nw = w.norm();
    h(j + 1, j) = nw;
    if (nw < 1e-14) break;  // exact invariant subspace
    if (j + 1 < k) q.push_back(w / nw);
  }

  const Matrix hk = h.topLeftCorner(built, built);
  Eigen::ComplexEigenSolver<Matrix> es(hk, true);
  if (es.info() != Eigen::Success) return false;

  int best = 0;
  double best_mag = -1.0;
  double second_mag = -1.0;
  for (int i = 0; i < built; ++i) {
    const double mag = std::abs(es.eigenvalues()(i));
    if (mag > best_mag) {
      second_mag = best_mag;
      best_mag = mag;
      best = i;
    } else {
      second_mag = std::max(second_mag, mag);
    }
  }

  Vector v = Vector::Zero(dim);
  for (int i = 0; i < built; ++i) v += es.eigenvectors()(i, best) * q[i];
  const double vn = v.norm();
  if (vn < 1e-300) return false;
  v /= vn;
  Vector av(dim);
  apply(v, av);

  out->value = es.eigenvalues()(best);
  out->vector = v;
  out->residual = (av - out->value * v).norm();
  out->tie_suspected =
      second_mag >= 0.0 && best_mag - second_mag < 1e-6 * std::max(1.0, best_mag);
  return true;
}

}  // namespace

EigenPair dominant_eigenpair_from(const LinearMap& apply, const Vector& start, double tol,
                                  int max_iter, std::uint64_t seed) {
  const Eigen::Index dim = start.size();
  if (dim < 1) throw InvalidInputError("dominant_eigenpair: dimension must be >= 1");
  if (tol <= 0.0) throw InvalidInputError("dominant_eigenpair: tol must be > 0");
  if (max_iter < 1) throw InvalidInputError("dominant_eigenpair: max_iter must be >= 1");

  Rng rng(seed);
  constexpr int kMaxRestarts = 2;
  constexpr int kMaxRefinements = 40;
  constexpr int kStagnationWindow = 200;
  constexpr std::size_t kGrowthWindow = 24;
  constexpr double kTieSpread = 1e-10;
  constexpr double kAnnihilation = 1e-250;

  Vector x = start;
  {
    const double n = x.norm();
    if (!(n > 0.0) || !x.allFinite()) {
      x = seeded_unit_vector(dim, rng);
    } else {
      x /= n;
    }
  }

  Vector y(dim);
  Complex mu(0.0, 0.0);
  double residual = std::numeric_limits<double>::infinity();
  double best_residual = residual;
  int since_improvement = 0;
  int restarts = 0;
  int refinements = 0;
  int zero_hits = 0;
  std::deque<double> growth;

  auto growth_tie = [&](int iter) -> EigenPair {
    // Degenerate leading magnitude with a stable per-step growth: report the
    // magnitude with a diagnostic instead of garbage.
    double mean = 0.0;
    for (double g : growth) mean += g;
    mean /= static_cast<double>(growth.size());
    const double amu = std::abs(mu);
    const Complex phase = amu > 0.0 ? mu / amu : Complex(1.0, 0.0);
    return EigenPair{mean * phase, x, false, true, iter, residual};
  };

  for (int iter = 1; iter <= max_iter; ++iter) {
    apply(x, y);
    if (!y.allFinite()) {
      throw NumericError("dominant_eigenpair: map produced NaN/Inf", residual, iter);
    }
    const double ny = y.norm();
    if (ny <= kAnnihilation) {
      // The map annihilates this vector. Confirm with an independent start
      // before concluding the dominant eigenvalue is exactly zero.
      ++zero_hits;
      if (zero_hits >= 2) {
        return EigenPair{Complex(0.0, 0.0), x, true, false, iter, ny};
      }
      x = seeded_unit_vector(dim, rng);
      continue;
    }

    mu = x.dot(y);  // Rayleigh quotient, x is unit norm
    residual = (y - mu * x).norm();
    if (residual <= tol * std::max(1.0, std::abs(mu))) {
      return EigenPair{mu, x, true, false, iter, residual};
    }

    growth.push_back(ny);
    if (growth.size() > kGrowthWindow) growth.pop_front();

    if (residual < 0.5 * best_residual) {
      best_residual = residual;
      since_improvement = 0;
    } else {
      ++since_improvement;
    }

    if (since_improvement >= kStagnationWindow) {
      RitzResult ritz;
      if (refinements < kMaxRefinements && arnoldi_refine(apply, x, &ritz)) {
        ++refinements;
        if (ritz.residual <= tol * std::max(1.0, std::abs(ritz.value))) {
          return EigenPair{ritz.value, ritz.vector, true, ritz.tie_suspected, iter,
                           ritz.residual};
        }
        if (ritz.residual < residual) {
          // continue iterating from the strictly better Ritz vector
          x = ritz.vector;
          since_improvement = 0;
          if (ritz.residual < best_residual) best_residual = ritz.residual;
          continue;
        }
      }
      if (growth.size() == kGrowthWindow && growth_spread(growth) < kTieSpread) {
        return growth_tie(iter);
      }
      if (restarts < kMaxRestarts) {
        ++restarts;
        x = seeded_unit_vector(dim, rng);
        best_residual = std::numeric_limits<double>::infinity();
        since_improvement = 0;
        growth.clear();
        continue;
      }
      break;
    }
    x = y / ny;
  }

  RitzResult ritz;
  if (arnoldi_refine(apply, x, &ritz) &&
      ritz.residual <= tol * std::max(1.0, std::abs(ritz.value))) {
    return EigenPair{ritz.value, ritz.vector, true, ritz.tie_suspected, max_iter, ritz.residual};
  }
  if (growth.size() == kGrowthWindow && growth_spread(growth) < kTieSpread) {
    return growth_tie(max_iter);
  }
  throw NumericError("dominant_eigenpair: no convergence and no stable magnitude", residual,
                     max_iter);
}

EigenPair dominant_eigenpair(const LinearMap& apply, Eigen::Index dim, double tol, int max_iter,
                             std::uint64_t seed) {
  if (dim < 1) throw InvalidInputError("dominant_eigenpair: dimension must be >= 1");
  Rng rng(seed);
  return dominant_eigenpair_from(apply, seeded_unit_vector(dim, rng), tol, max_iter, seed + 1);
}

}  // namespace bondalt
