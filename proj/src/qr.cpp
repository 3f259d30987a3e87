#include "ics/qr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ics {

Permutation row_presort_linf(const Eigen::Ref<const Matrix>& a) {
  require_finite(a, "row_presort_linf");
  const Index n = a.rows();
  Vector norms(n);
  for (Index i = 0; i < n; ++i) {
    norms[i] = a.row(i).cwiseAbs().maxCoeff();
  }
  Permutation perm = identity_permutation(n);
  std::stable_sort(perm.begin(), perm.end(),
                   [&norms](Index i, Index j) { return norms[i] > norms[j]; });
  return perm;
}

namespace {

// Recompute threshold: a downdated squared norm below sqrt(eps) times its
// last exactly-computed value has lost half its digits.
constexpr double kNormRecomputeTol = 1.4901161193847656e-08;  // sqrt(eps)

}  // namespace

PivotedQR qr_pivoted(const Eigen::Ref<const Matrix>& a, bool column_pivot,
                     bool row_pivot) {
  const Index n = a.rows();
  const Index p = a.cols();
  if (n < p || p < 1) {
    throw ShapeError("qr_pivoted: need n >= p >= 1, got " + std::to_string(n) +
                     " x " + std::to_string(p));
  }
  require_finite(a, "qr_pivoted");

  PivotedQR out;
  out.row_perm = row_pivot ? row_presort_linf(a) : identity_permutation(n);
  out.col_perm = identity_permutation(p);

  // Working copy in presorted row order; columns are swapped in place as
  // pivoting proceeds. R accumulates in the upper triangle, Householder
  // vectors (unit leading entry implicit via beta bookkeeping) below it.
  Matrix w(n, p);
  for (Index i = 0; i < n; ++i) {
    w.row(i) = a.row(out.row_perm[static_cast<std::size_t>(i)]);
  }

  Matrix v_store = Matrix::Zero(n, p);  // full Householder vectors
  Vector betas = Vector::Zero(p);

  Vector colnorm2(p), colnorm2_ref(p);
  if (column_pivot) {
    for (Index j = 0; j < p; ++j) colnorm2[j] = w.col(j).squaredNorm();
    colnorm2_ref = colnorm2;
  }

  for (Index k = 0; k < p; ++k) {
    if (column_pivot) {
      Index jk = k;
      for (Index j = k + 1; j < p; ++j) {
        if (colnorm2[j] > colnorm2[jk]) jk = j;  // strict: ties keep smallest
      }
      if (jk != k) {
        w.col(k).swap(w.col(jk));
        v_store.col(k).swap(v_store.col(jk));
        std::swap(out.col_perm[static_cast<std::size_t>(k)],
                  out.col_perm[static_cast<std::size_t>(jk)]);
        std::swap(colnorm2[k], colnorm2[jk]);
        std::swap(colnorm2_ref[k], colnorm2_ref[jk]);
      }
    }

    const Index m = n - k;
    const double normx = w.col(k).tail(m).norm();
    if (normx == 0.0) {
      betas[k] = 0.0;
      w(k, k) = 0.0;
    } else {
      const double x0 = w(k, k);
      const double alpha = (x0 >= 0.0) ? -normx : normx;
      Vector v = w.col(k).tail(m);
      v[0] -= alpha;
      const double vtv = v.squaredNorm();
      const double beta = (vtv > 0.0) ? 2.0 / vtv : 0.0;
      if (k + 1 < p) {
        auto trailing = w.block(k, k + 1, m, p - k - 1);
        Eigen::RowVectorXd vt_a = v.transpose() * trailing;
        trailing.noalias() -= beta * v * vt_a;
      }
      w(k, k) = alpha;
      w.col(k).tail(m).tail(m - 1).setZero();
      v_store.col(k).tail(m) = v;
      betas[k] = beta;
    }

    if (column_pivot && k + 1 < p) {
      for (Index j = k + 1; j < p; ++j) {
        const double r = w(k, j);
        colnorm2[j] -= r * r;
        if (!(colnorm2[j] > kNormRecomputeTol * colnorm2_ref[j])) {
          colnorm2[j] = w.col(j).tail(n - k - 1).squaredNorm();
          colnorm2_ref[j] = colnorm2[j];
        }
      }
    }
  }

  out.r_factor = w.topRows(p).triangularView<Eigen::Upper>();
  out.r_diag_abs = out.r_factor.diagonal().cwiseAbs();

  // Back-accumulate the thin Q = H_0 ... H_{p-1} [I_p; 0].
  Matrix q = Matrix::Zero(n, p);
  q.topLeftCorner(p, p).setIdentity();
  for (Index k = p - 1; k >= 0; --k) {
    if (betas[k] == 0.0) continue;
    const Index m = n - k;
    auto block = q.block(k, k, m, p - k);
    const auto v = v_store.col(k).tail(m);
    Eigen::RowVectorXd vt_q = v.transpose() * block;
    block.noalias() -= betas[k] * v * vt_q;
  }
  out.q_factor = std::move(q);
  return out;
}

}  // namespace ics
