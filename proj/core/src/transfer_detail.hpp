#pragma once

// Internal contraction toolkit for unit-cell transfer operators and their
// fixed-point environments. Not installed; shared by imps.cpp, model.cpp and
// itebd.cpp.

#include <array>
#include <cstdint>
#include <vector>

#include "bondalt/imps.hpp"
#include "bondalt/linalg.hpp"

namespace bondalt::detail {

inline constexpr std::uint64_t kTransferSeed = 0x51AB5EED2024ULL;
inline constexpr double kTransferTol = 1e-13;
inline constexpr int kTransferMaxIter = 500000;

/// out = sum_s B[s]^H X A[s]  (one site of a left-to-right transfer sweep;
/// B is the bra-side tensor and is conjugated).
inline void transfer_left(const std::array<Matrix, 2>& a, const std::array<Matrix, 2>& b,
                          const Matrix& x, Matrix& out) {
  out.noalias() = b[0].adjoint() * x * a[0];
  out.noalias() += b[1].adjoint() * x * a[1];
}

/// out = sum_{s',s} O(s',s) B[s']^H X A[s]  (site map with an observable
/// inserted on the physical leg; s' is the bra index).
inline void transfer_left_obs(const std::array<Matrix, 2>& a, const std::array<Matrix, 2>& b,
                              const Eigen::Matrix2cd& o, const Matrix& x, Matrix& out) {
  out.noalias() = o(0, 0) * (b[0].adjoint() * x * a[0]);
  out.noalias() += o(0, 1) * (b[0].adjoint() * x * a[1]);
  out.noalias() += o(1, 0) * (b[1].adjoint() * x * a[0]);
  out.noalias() += o(1, 1) * (b[1].adjoint() * x * a[1]);
}

/// out = sum_s A[s] Y A[s]^H  (one site of a right-to-left sweep).
inline void transfer_right(const std::array<Matrix, 2>& a, const Matrix& y, Matrix& out) {
  out.noalias() = a[0] * y * a[0].adjoint();
  out.noalias() += a[1] * y * a[1].adjoint();
}

/// Self-transfer fixed points of a state, anchored at bond p-1 and pushed to
/// every bond of the cell. left[k] / right[k] are the environments on bond k.
struct CellEnvironment {
  std::vector<Matrix> left;
  std::vector<Matrix> right;
  double mu = 0.0;  // dominant self-transfer eigenvalue per cell
};

/// Computes the dominant left/right fixed points by seeded power iteration.
/// warm_left / warm_right, when given, are used as start vectors (their
/// dimensions must match the anchor bond).
CellEnvironment compute_environments(const Imps& state, const Matrix* warm_left = nullptr,
                                     const Matrix* warm_right = nullptr);

/// <psi| O_site |psi> using precomputed environments.
double site_expectation(const Imps& state, const CellEnvironment& env, const Eigen::Matrix2cd& o,
                        int site);

/// <psi| h_{site,site+1} |psi> for a two-site operator h given in the basis
/// {uu, ud, du, dd} (row index bra). bond = left site index.
double two_site_expectation(const Imps& state, const CellEnvironment& env,
                            const Eigen::Matrix4cd& h, int bond);

/// <O_i O_{i+r}> using precomputed environments.
double correlation_with_env(const Imps& state, const CellEnvironment& env,
                            const Eigen::Matrix2cd& o, int site, int separation);

/// Dominant eigenvalue of the mixed transfer operator of (a ket, b bra) over
/// the padded common cell.
Complex mixed_eigenvalue(const Imps& a, const Imps& b);

}  // namespace bondalt::detail
