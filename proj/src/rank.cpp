#include "ics/rank.hpp"

#include <cmath>

namespace ics {

RankDecision numerical_rank(const Vector& r_diag_abs, double epsilon,
                            RankCriterion criterion) {
  const Index p = r_diag_abs.size();
  if (p < 1) throw ShapeError("numerical_rank: empty diagonal");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ShapeError("numerical_rank: epsilon must lie in (0, 1)");
  }
  require_finite(r_diag_abs, "numerical_rank");
  for (Index i = 0; i < p; ++i) {
    if (r_diag_abs[i] < 0.0) {
      throw ShapeError("numerical_rank: |R_ii| sequence has negative entry");
    }
    if (i > 0 && r_diag_abs[i] > r_diag_abs[i - 1] * (1.0 + 1e-12)) {
      throw NotSorted("numerical_rank: |R_ii| sequence is not non-increasing "
                      "at index " +
                      std::to_string(i));
    }
  }

  RankDecision out;
  out.epsilon = epsilon;
  out.criterion = criterion;
  out.r_diag_abs = r_diag_abs;
  out.q = p;
  for (Index i = 1; i < p; ++i) {
    const double ref = (criterion == RankCriterion::kSuccessive)
                           ? r_diag_abs[i - 1]
                           : r_diag_abs[0];
    if (r_diag_abs[i] < epsilon * ref) {
      out.q = i;
      break;
    }
  }
  return out;
}

namespace {

void check_reducible(const PivotedQR& qr, const RankDecision& rank,
                     Index n_obs) {
  const Index p = qr.cols();
  if (rank.q >= p) {
    throw ShapeError("reduce: rank.q = " + std::to_string(rank.q) +
                     " is not below p = " + std::to_string(p));
  }
  if (rank.q < 1) throw ShapeError("reduce: rank.q must be >= 1");
  if (n_obs != qr.rows()) {
    throw ShapeError("reduce: n_obs does not match the factorization");
  }
}

// Reindex columns (pivoted observation order) back to original order.
Matrix unpermute_columns(const Matrix& y, const Permutation& row_perm) {
  Matrix out(y.rows(), y.cols());
  for (Index i = 0; i < y.cols(); ++i) {
    out.col(row_perm[static_cast<std::size_t>(i)]) = y.col(i);
  }
  return out;
}

}  // namespace

Reduced urv_reduce(const PivotedQR& qr, const RankDecision& rank,
                   Index n_obs) {
  check_reducible(qr, rank, n_obs);
  const Index p = qr.cols();
  const Index q = rank.q;

  Matrix stacked(p, q);
  stacked.topRows(q) = qr.r_factor.topLeftCorner(q, q).transpose();
  stacked.bottomRows(p - q) = qr.r_factor.topRightCorner(q, p - q).transpose();

  PivotedQR second =
      qr_pivoted(stacked, /*column_pivot=*/true, /*row_pivot=*/false);

  // T * Pi3^T: send pivoted columns of T back to their original slots.
  Matrix t_unpiv(q, q);
  for (Index k = 0; k < q; ++k) {
    t_unpiv.col(second.col_perm[static_cast<std::size_t>(k)]) =
        second.r_factor.col(k);
  }

  const double scale = std::sqrt(static_cast<double>(n_obs - 1));
  Matrix y(q, n_obs);
  y.noalias() = scale * (t_unpiv * qr.q_factor.leftCols(q).transpose());

  Reduced out;
  out.x_reduced = unpermute_columns(y, qr.row_perm);
  out.basis = Matrix::Zero(p, q);
  for (Index k = 0; k < p; ++k) {
    out.basis.row(qr.col_perm[static_cast<std::size_t>(k)]) =
        second.q_factor.row(k);
  }
  return out;
}

Reduced truncate_reduce(const PivotedQR& qr, const RankDecision& rank,
                        Index n_obs) {
  check_reducible(qr, rank, n_obs);
  const Index p = qr.cols();
  const Index q = rank.q;

  const double scale = std::sqrt(static_cast<double>(n_obs - 1));
  Matrix y(q, n_obs);
  y.noalias() = scale * (qr.r_factor.topLeftCorner(q, q).transpose() *
                         qr.q_factor.leftCols(q).transpose());

  Reduced out;
  out.x_reduced = unpermute_columns(y, qr.row_perm);
  out.kept_vars.assign(qr.col_perm.begin(), qr.col_perm.begin() + q);
  out.basis = Matrix::Zero(p, q);
  for (Index j = 0; j < q; ++j) {
    out.basis(out.kept_vars[static_cast<std::size_t>(j)], j) = 1.0;
  }
  return out;
}

}  // namespace ics
