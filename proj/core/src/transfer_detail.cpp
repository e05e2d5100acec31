#include "transfer_detail.hpp"

#include <cmath>
#include <complex>

#include "bondalt/errors.hpp"

namespace bondalt::detail {

namespace {

// Rotate the global phase so the trace is real positive, then Hermitize.
// Fixed points of self-transfer maps are PSD up to the arbitrary phase the
// power iteration returns.
void make_hermitian_positive(Matrix& x) {
  const Complex tr = x.trace();
  const double atr = std::abs(tr);
  if (atr > 1e-300) {
    x *= std::conj(tr) / atr;
  }
  x = 0.5 * (x + x.adjoint()).eval();
}

}  // namespace

CellEnvironment compute_environments(const Imps& state, const Matrix* warm_left,
                                     const Matrix* warm_right) {
  const int p = state.period;
  std::vector<std::array<Matrix, 2>> a(p);
  for (int k = 0; k < p; ++k) a[k] = state.a_tensor(k);

  const Eigen::Index d_anchor = state.bond_dim(p - 1);
  const Eigen::Index dim = d_anchor * d_anchor;

  auto left_map = [&](const Vector& in, Vector& out) {
    Eigen::Map<const Matrix> x(in.data(), d_anchor, d_anchor);
    Matrix cur = x;
    Matrix next;
    for (int k = 0; k < p; ++k) {
      transfer_left(a[k], a[k], cur, next);
      cur.swap(next);
    }
    out.resize(dim);
    Eigen::Map<Matrix>(out.data(), d_anchor, d_anchor) = cur;
  };
  auto right_map = [&](const Vector& in, Vector& out) {
    Eigen::Map<const Matrix> y(in.data(), d_anchor, d_anchor);
    Matrix cur = y;
    Matrix next;
    for (int k = p - 1; k >= 0; --k) {
      transfer_right(a[k], cur, next);
      cur.swap(next);
    }
    out.resize(dim);
    Eigen::Map<Matrix>(out.data(), d_anchor, d_anchor) = cur;
  };

  EigenPair lpair, rpair;
  if (warm_left != nullptr && warm_left->rows() == d_anchor && warm_left->cols() == d_anchor) {
    Vector start = Eigen::Map<const Vector>(warm_left->data(), dim);
    lpair = dominant_eigenpair_from(left_map, start, kTransferTol, kTransferMaxIter, kTransferSeed);
  } else {
    lpair = dominant_eigenpair(left_map, dim, kTransferTol, kTransferMaxIter, kTransferSeed);
  }
  if (warm_right != nullptr && warm_right->rows() == d_anchor && warm_right->cols() == d_anchor) {
    Vector start = Eigen::Map<const Vector>(warm_right->data(), dim);
    rpair =
        dominant_eigenpair_from(right_map, start, kTransferTol, kTransferMaxIter, kTransferSeed + 7);
  } else {
    rpair = dominant_eigenpair(right_map, dim, kTransferTol, kTransferMaxIter, kTransferSeed + 7);
  }

  CellEnvironment env;
  env.mu = std::abs(lpair.value);
  env.left.resize(p);
  env.right.resize(p);

  Matrix l_anchor = Eigen::Map<const Matrix>(lpair.vector.data(), d_anchor, d_anchor);
  Matrix r_anchor = Eigen::Map<const Matrix>(rpair.vector.data(), d_anchor, d_anchor);
  make_hermitian_positive(l_anchor);
  make_hermitian_positive(r_anchor);
  env.left[p - 1] = l_anchor;
  env.right[p - 1] = r_anchor;

  for (int k = 0; k < p - 1; ++k) {
    transfer_left(a[k], a[k], env.left[(k - 1 + p) % p], env.left[k]);
  }
  for (int k = p - 1; k >= 1; --k) {
    transfer_right(a[k], env.right[k], env.right[k - 1]);
  }
  return env;
}

double site_expectation(const Imps& state, const CellEnvironment& env, const Eigen::Matrix2cd& o,
                        int site) {
  const int p = state.period;
  const auto a = state.a_tensor(site);
  const Matrix& l = env.left[(site - 1 + p) % p];
  const Matrix& r = env.right[site];

  Matrix num_mat, den_mat;
  transfer_left_obs(a, a, o, l, num_mat);
  transfer_left(a, a, l, den_mat);
  const Complex num = (num_mat * r).trace();
  const Complex den = (den_mat * r).trace();
  if (std::abs(den) < 1e-300) {
    throw DegenerateStateError("site_expectation: vanishing norm contraction");
  }
  return (num / den).real();
}

double two_site_expectation(const Imps& state, const CellEnvironment& env,
                            const Eigen::Matrix4cd& h, int bond) {
  const int p = state.period;
  const int s1 = bond;
  const int s2 = (bond + 1) % p;
  const auto a1 = state.a_tensor(s1);
  const auto a2 = state.a_tensor(s2);
  const Matrix& l = env.left[(s1 - 1 + p) % p];
  const Matrix& r = env.right[s2];

  // Cache the one-site bridges L_{s'1 s1} = A1[s'1]^H L A1[s1].
  std::array<std::array<Matrix, 2>, 2> bridge;
  for (int sp = 0; sp < 2; ++sp) {
    for (int s = 0; s < 2; ++s) {
      bridge[sp][s].noalias() = a1[sp].adjoint() * l * a1[s];
    }
  }

  Complex num(0.0, 0.0);
  Complex den(0.0, 0.0);
  for (int sp1 = 0; sp1 < 2; ++sp1) {
    for (int sp2 = 0; sp2 < 2; ++sp2) {
      for (int t1 = 0; t1 < 2; ++t1) {
        for (int t2 = 0; t2 < 2; ++t2) {
          const Complex coeff = h(sp1 * 2 + sp2, t1 * 2 + t2);
          const bool diag = (sp1 == t1 && sp2 == t2);
          if (coeff == Complex(0.0, 0.0) && !diag) continue;
          const Complex val =
              (a2[sp2].adjoint() * bridge[sp1][t1] * a2[t2] * r).trace();
          num += coeff * val;
          if (diag) den += val;
        }
      }
    }
  }
  if (std::abs(den) < 1e-300) {
    throw DegenerateStateError("two_site_expectation: vanishing norm contraction");
  }
  return (num / den).real();
}

double correlation_with_env(const Imps& state, const CellEnvironment& env,
                            const Eigen::Matrix2cd& o, int site, int separation) {
  const int p = state.period;
  const Matrix& l = env.left[(site - 1 + p) % p];
  const Matrix& r = env.right[(site + separation) % p];

  if (separation == 0) {
    const Eigen::Matrix2cd o2 = o * o;
    const auto a = state.a_tensor(site);
    Matrix num_mat, den_mat;
    transfer_left_obs(a, a, o2, l, num_mat);
    transfer_left(a, a, l, den_mat);
    const Complex num = (num_mat * r).trace();
    const Complex den = (den_mat * r).trace();
    if (std::abs(den) < 1e-300) {
      throw DegenerateStateError("correlation: vanishing norm contraction");
    }
    return (num / den).real();
  }

  Matrix num_acc, den_acc, tmp;
  {
    const auto a = state.a_tensor(site);
    transfer_left_obs(a, a, o, l, num_acc);
    transfer_left(a, a, l, den_acc);
  }
  for (int j = 1; j < separation; ++j) {
    const auto a = state.a_tensor((site + j) % p);
    transfer_left(a, a, num_acc, tmp);
    num_acc.swap(tmp);
    transfer_left(a, a, den_acc, tmp);
    den_acc.swap(tmp);
  }
  {
    const auto a = state.a_tensor((site + separation) % p);
    transfer_left_obs(a, a, o, num_acc, tmp);
    num_acc.swap(tmp);
    transfer_left(a, a, den_acc, tmp);
    den_acc.swap(tmp);
  }
  const Complex num = (num_acc * r).trace();
  const Complex den = (den_acc * r).trace();
  if (std::abs(den) < 1e-300) {
    throw DegenerateStateError("correlation: vanishing norm contraction");
  }
  return (num / den).real();
}

Complex mixed_eigenvalue(const Imps& a_state, const Imps& b_state) {
  const int cell = common_cell_length(a_state, b_state);
  const int pa = a_state.period;
  const int pb = b_state.period;

  std::vector<std::array<Matrix, 2>> a(pa), b(pb);
  for (int k = 0; k < pa; ++k) a[k] = a_state.a_tensor(k);
  for (int k = 0; k < pb; ++k) b[k] = b_state.a_tensor(k);

  // Anchor bond sits left of site 0; rows are the bra (b) bond, cols the ket.
  const Eigen::Index db = b_state.bond_dim(pb - 1);
  const Eigen::Index da = a_state.bond_dim(pa - 1);
  const Eigen::Index dim = db * da;

  auto map = [&](const Vector& in, Vector& out) {
    Eigen::Map<const Matrix> x(in.data(), db, da);
    Matrix cur = x;
    Matrix next;
    for (int j = 0; j < cell; ++j) {
      transfer_left(a[j % pa], b[j % pb], cur, next);
      cur.swap(next);
    }
    out.resize(dim);
    Eigen::Map<Matrix>(out.data(), db, da) = cur;
  };

  const EigenPair pair =
      dominant_eigenpair(map, dim, kTransferTol, kTransferMaxIter, kTransferSeed + 13);
  return pair.value;
}

}  // namespace bondalt::detail
