#pragma once

#include <Eigen/Core>

#include <complex>
#include <cstdint>
#include <functional>

namespace bondalt {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Truncated singular value decomposition m ~= U * diag(s) * Vh.
///
/// left_vectors (U) has orthonormal columns, right_vectors_conj (Vh = V^H)
/// has orthonormal rows, singular_values are sorted descending.
/// truncation_error is the relative discarded weight
///   sqrt(sum of discarded s^2) / sqrt(sum of all s^2),
/// zero when nothing was discarded.
struct SvdResult {
  Matrix left_vectors;
  RealVector singular_values;
  Matrix right_vectors_conj;
  double truncation_error = 0.0;

  Eigen::Index rank() const { return singular_values.size(); }
  Matrix reconstruct() const {
    return left_vectors * singular_values.asDiagonal() * right_vectors_conj;
  }
};

/// SVD of m keeping at most chi_max singular values and dropping any value
/// below cutoff * s_max. Throws InvalidInputError on non-finite input and
/// NumericError if the decomposition fails.
SvdResult truncated_svd(const Matrix& m, Eigen::Index chi_max, double cutoff);

/// Matrix-free linear map: out = A * in. `out` is preallocated by the caller.
using LinearMap = std::function<void(const Vector& in, Vector& out)>;

/// Result of a dominant-eigenpair solve.
///
/// When `converged`, ||A v - value v|| <= tol. A leading magnitude shared by
/// two eigenvalues (a +-lambda pair or the complex-conjugate pair of a real
/// map) stalls the plain iteration; a two-vector Rayleigh-Ritz refinement
/// then resolves the pair, returning a converged result with tie_suspected
/// set. If even that fails but the per-step growth has stabilized, the
/// stable magnitude is reported with converged = false instead of silently
/// returning garbage.
struct EigenPair {
  Complex value;
  Vector vector;
  bool converged = false;
  bool tie_suspected = false;
  int iterations = 0;
  double residual = 0.0;
};

/// Seeded power iteration with Rayleigh-quotient estimate for the eigenvalue
/// of largest magnitude. Deterministic for a given seed. Restarts from a
/// fresh seeded vector on stagnation. Throws NumericError when neither the
/// pair nor a stable magnitude can be extracted within max_iter.
EigenPair dominant_eigenpair(const LinearMap& apply, Eigen::Index dim, double tol,
                             int max_iter, std::uint64_t seed);

/// Same solve but starting from a caller-supplied vector (used to warm-start
/// transfer-operator environments across iTEBD sweeps).
EigenPair dominant_eigenpair_from(const LinearMap& apply, const Vector& start, double tol,
                                  int max_iter, std::uint64_t seed);

}  // namespace bondalt
