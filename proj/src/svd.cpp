#include "ics/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ics/qr.hpp"

namespace ics {

namespace {

constexpr int kMaxSweeps = 30;

// Orthogonalize the columns of w in place by cyclic Jacobi rotations,
// accumulating the rotation product in jacc. Returns false if the sweep
// cap is hit while rotations are still being applied.
bool hestenes_sweeps(Matrix& w, Matrix& jacc) {
  const Index p = w.cols();
  const double tol = 8.0 * std::sqrt(static_cast<double>(p)) * kEps;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (Index i = 0; i < p - 1; ++i) {
      for (Index j = i + 1; j < p; ++j) {
        const double aii = w.col(i).squaredNorm();
        const double ajj = w.col(j).squaredNorm();
        if (aii == 0.0 || ajj == 0.0) continue;
        const double aij = w.col(i).dot(w.col(j));
        if (std::abs(aij) <= tol * std::sqrt(aii) * std::sqrt(ajj)) continue;
        rotated = true;
        const double zeta = (ajj - aii) / (2.0 * aij);
        const double t =
            ((zeta >= 0.0) ? 1.0 : -1.0) /
            (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        Vector wi = w.col(i);
        w.col(i) = c * wi - s * w.col(j);
        w.col(j) = s * wi + c * w.col(j);
        Vector ji = jacc.col(i);
        jacc.col(i) = c * ji - s * jacc.col(j);
        jacc.col(j) = s * ji + c * jacc.col(j);
      }
    }
    if (!rotated) return true;
  }
  return false;
}

}  // namespace

ThinSvd thin_svd(const Eigen::Ref<const Matrix>& a) {
  const Index n = a.rows();
  const Index p = a.cols();
  if (n < p || p < 1) {
    throw ShapeError("thin_svd: need n >= p >= 1, got " + std::to_string(n) +
                     " x " + std::to_string(p));
  }
  require_finite(a, "thin_svd");

  // a * Pi = Q0 * R. Column pivoting leaves R row-scaled, so R^T is
  // column-scaled, which is where one-sided Jacobi keeps its relative
  // accuracy.
  PivotedQR qr = qr_pivoted(a, /*column_pivot=*/true, /*row_pivot=*/false);

  Matrix w = qr.r_factor.transpose();  // p x p, columns to orthogonalize
  Matrix jacc = Matrix::Identity(p, p);
  if (!hestenes_sweeps(w, jacc)) {
    throw ConvergenceError(
        "thin_svd: one-sided Jacobi did not converge within 30 sweeps");
  }

  // R^T * jacc = utilde * Sigma, hence R = jacc * Sigma * utilde^T and the
  // right singular vectors of the pivoted input are the normalized columns
  // of w; the left factor is Q0 * jacc.
  Vector sigma(p);
  for (Index k = 0; k < p; ++k) sigma[k] = w.col(k).norm();

  Permutation order = identity_permutation(p);
  std::stable_sort(order.begin(), order.end(),
                   [&sigma](Index i, Index j) { return sigma[i] > sigma[j]; });

  Matrix utilde = Matrix::Zero(p, p);
  Vector sigma_sorted(p);
  Matrix jacc_sorted(p, p);
  for (Index k = 0; k < p; ++k) {
    const Index src = order[static_cast<std::size_t>(k)];
    sigma_sorted[k] = sigma[src];
    jacc_sorted.col(k) = jacc.col(src);
    if (sigma[src] > 0.0) {
      utilde.col(k) = w.col(src) / sigma[src];
    }
  }

  // Complete columns for exactly zero singular values with canonical basis
  // vectors, Gram-Schmidt against what is already in place.
  for (Index k = 0; k < p; ++k) {
    if (sigma_sorted[k] > 0.0) continue;
    for (Index cand = 0; cand < p; ++cand) {
      Vector e = Vector::Zero(p);
      e[cand] = 1.0;
      for (Index m = 0; m < p; ++m) {
        if (m == k) continue;
        if (sigma_sorted[m] > 0.0 || m < k) {
          e -= utilde.col(m).dot(e) * utilde.col(m);
        }
      }
      const double nrm = e.norm();
      if (nrm > 0.5) {
        utilde.col(k) = e / nrm;
        break;
      }
    }
  }

  ThinSvd out;
  out.sigma = std::move(sigma_sorted);
  out.u.noalias() = qr.q_factor * jacc_sorted;
  out.v = Matrix::Zero(p, p);
  for (Index k = 0; k < p; ++k) {
    out.v.row(qr.col_perm[static_cast<std::size_t>(k)]) = utilde.row(k);
  }
  return out;
}

}  // namespace ics
