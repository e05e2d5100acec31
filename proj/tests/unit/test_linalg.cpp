#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <bondalt/errors.hpp>
#include <bondalt/linalg.hpp>
#include <bondalt/rng.hpp>

#include <cmath>
#include <complex>

using namespace bondalt;

namespace {

Matrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(i, j) = Complex(rng.gaussian(), rng.gaussian());
    }
  }
  return m;
}

LinearMap matrix_map(const Matrix& m) {
  return [m](const Vector& in, Vector& out) { out = m * in; };
}

}  // namespace

TEST_CASE("svd of the 2x2 identity keeps both unit singular values") {
  const SvdResult r = truncated_svd(Matrix::Identity(2, 2), 2, 0.0);
  REQUIRE(r.rank() == 2);
  CHECK(r.singular_values(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.singular_values(1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.truncation_error == 0.0);
}

TEST_CASE("svd of a rank-1 matrix drops the zero value below cutoff") {
  Matrix m(2, 2);
  m << 1, 1, 1, 1;
  const SvdResult r = truncated_svd(m, 2, 1e-12);
  REQUIRE(r.rank() == 1);
  CHECK(r.singular_values(0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.truncation_error < 1e-10);
  CHECK((r.reconstruct() - m).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("truncating diag(3,2,1) to two values reports the relative discarded weight") {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = 3.0;
  m(1, 1) = 2.0;
  m(2, 2) = 1.0;
  const SvdResult r = truncated_svd(m, 2, 0.0);
  REQUIRE(r.rank() == 2);
  CHECK(r.singular_values(0) == doctest::Approx(3.0));
  CHECK(r.singular_values(1) == doctest::Approx(2.0));
  // discarded weight sqrt(1^2) / sqrt(3^2 + 2^2 + 1^2), evaluated by hand
  const double expected = std::sqrt(1.0) / std::sqrt(14.0);
  CHECK(r.truncation_error == doctest::Approx(expected).epsilon(1e-12));
  CHECK(r.truncation_error == doctest::Approx(0.2672612419124244).epsilon(1e-9));
}

TEST_CASE("svd rejects non-finite input and bad arguments") {
  Matrix m(1, 1);
  m(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(truncated_svd(m, 1, 0.0), InvalidInputError);
  CHECK_THROWS_AS(truncated_svd(Matrix::Identity(2, 2), 0, 0.0), InvalidInputError);
  CHECK_THROWS_AS(truncated_svd(Matrix::Identity(2, 2), 2, -1.0), InvalidInputError);
}

TEST_CASE("untruncated svd reconstructs random matrices with isometric factors") {
  Rng rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index rows = 1 + static_cast<Eigen::Index>(rng.next_u64() % 8);
    const Eigen::Index cols = 1 + static_cast<Eigen::Index>(rng.next_u64() % 8);
    const Matrix m = random_matrix(rng, rows, cols);
    const SvdResult r = truncated_svd(m, std::min(rows, cols), 0.0);

    CHECK((r.reconstruct() - m).cwiseAbs().maxCoeff() < 1e-10);
    const Matrix utu = r.left_vectors.adjoint() * r.left_vectors;
    const Matrix vvt = r.right_vectors_conj * r.right_vectors_conj.adjoint();
    CHECK((utu - Matrix::Identity(r.rank(), r.rank())).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((vvt - Matrix::Identity(r.rank(), r.rank())).cwiseAbs().maxCoeff() < 1e-10);
    for (Eigen::Index i = 1; i < r.rank(); ++i) {
      CHECK(r.singular_values(i) <= r.singular_values(i - 1) + 1e-14);
    }
  }
}

TEST_CASE("power iteration resolves a separated diagonal spectrum") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 2.0;
  m(1, 1) = 1.0;
  const EigenPair p = dominant_eigenpair(matrix_map(m), 2, 1e-12, 10000, 7);
  CHECK(p.converged);
  CHECK(std::abs(p.value - Complex(2.0, 0.0)) < 1e-10);
  CHECK(std::abs(p.vector(0)) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(p.residual <= 1e-12 * 2.0);
}

TEST_CASE("degenerate +-1 spectrum reports magnitude 1 with a tie diagnostic") {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  const EigenPair p = dominant_eigenpair(matrix_map(m), 2, 1e-10, 4000, 11);
  CHECK(p.tie_suspected);
  CHECK(std::abs(p.value) == doctest::Approx(1.0).epsilon(1e-9));
  if (p.converged) {
    CHECK(p.residual <= 1e-10);
    // the refined vector is a genuine eigenvector of one of the +-1 pair
    Vector image(2);
    matrix_map(m)(p.vector, image);
    CHECK((image - p.value * p.vector).norm() < 1e-9);
  }
}

TEST_CASE("complex-conjugate dominant pairs of a real map are resolved") {
  // rotation scaled by 1.3: eigenvalues 1.3 exp(+-ia), a genuine magnitude tie
  Matrix m(2, 2);
  const double a = 0.7;
  m << 1.3 * std::cos(a), -1.3 * std::sin(a), 1.3 * std::sin(a), 1.3 * std::cos(a);
  const EigenPair p = dominant_eigenpair(matrix_map(m), 2, 1e-10, 50000, 5);
  CHECK(std::abs(p.value) == doctest::Approx(1.3).epsilon(1e-9));
  CHECK(p.tie_suspected);
  if (p.converged) {
    CHECK(std::abs(p.value.imag()) > 0.1);  // genuinely complex eigenvalue
  }
}

TEST_CASE("the zero map converges to eigenvalue zero") {
  const EigenPair p = dominant_eigenpair(matrix_map(Matrix::Zero(3, 3)), 3, 1e-12, 1000, 3);
  CHECK(p.converged);
  CHECK(std::abs(p.value) == 0.0);
  CHECK(p.vector.norm() == doctest::Approx(1.0));
}

TEST_CASE("power iteration magnitude matches a dense eigensolver on random matrices") {
  Rng rng(515);
  int tested = 0;
  for (int trial = 0; trial < 40 && tested < 15; ++trial) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.next_u64() % 15);
    const Matrix m = random_matrix(rng, n, n);

    Eigen::ComplexEigenSolver<Matrix> dense(m, false);
    std::vector<double> mags(n);
    for (Eigen::Index i = 0; i < n; ++i) mags[i] = std::abs(dense.eigenvalues()(i));
    std::sort(mags.begin(), mags.end());
    // keep the well-separated cases; a near-tie has no unique dominant pair
    if (mags[n - 1] < 1.05 * mags[n - 2]) continue;
    ++tested;

    const EigenPair p = dominant_eigenpair(matrix_map(m), n, 1e-12, 200000, 1000 + trial);
    CHECK(std::abs(std::abs(p.value) - mags[n - 1]) < 1e-8 * std::max(1.0, mags[n - 1]));
  }
  CHECK(tested >= 15);
}

TEST_CASE("non-convergence without a stable magnitude raises a numeric error") {
  // six conjugate pairs with distinct near-equal magnitudes: more clustered
  // directions than the Krylov refinement spans, growing at visibly
  // different rates, under an iteration budget too small for any estimate
  Matrix m = Matrix::Zero(12, 12);
  for (int b = 0; b < 6; ++b) {
    const double mag = 1.30 - 0.01 * b;
    const double ang = 0.5 + 0.4 * b;
    m(2 * b, 2 * b) = mag * std::cos(ang);
    m(2 * b, 2 * b + 1) = -mag * std::sin(ang);
    m(2 * b + 1, 2 * b) = mag * std::sin(ang);
    m(2 * b + 1, 2 * b + 1) = mag * std::cos(ang);
  }
  CHECK_THROWS_AS(dominant_eigenpair(matrix_map(m), 12, 1e-14, 10, 1), NumericError);
}

TEST_CASE("deterministic for a fixed seed") {
  Rng rng(99);
  const Matrix m = random_matrix(rng, 6, 6);
  const EigenPair a = dominant_eigenpair(matrix_map(m), 6, 1e-11, 100000, 42);
  const EigenPair b = dominant_eigenpair(matrix_map(m), 6, 1e-11, 100000, 42);
  CHECK(a.value == b.value);
  CHECK((a.vector - b.vector).norm() == 0.0);
}
