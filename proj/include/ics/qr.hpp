#ifndef ICS_QR_HPP
#define ICS_QR_HPP

#include "ics/matrix.hpp"

namespace ics {

/// Thin Householder QR factor bundle with pivot bookkeeping.
///
/// For an n x p input A (n >= p) the factors satisfy
///   A(row_perm[i], col_perm[k]) = (Q * R)(i, k),
/// i.e. Q and R factor the row/column permuted copy of A. Q has
/// orthonormal columns, R is upper triangular. With column pivoting the
/// diagonal of R dominates each trailing column (Businger-Golub), so
/// |R_11| >= |R_22| >= ... >= |R_pp|.
struct PivotedQR {
  Matrix q_factor;     ///< n x p, orthonormal columns
  Matrix r_factor;     ///< p x p, upper triangular
  Permutation col_perm;  ///< col_perm[k] = original column at pivot slot k
  Permutation row_perm;  ///< row_perm[i] = original row at slot i
  Vector r_diag_abs;   ///< |R_11| ... |R_pp|

  Index rows() const { return q_factor.rows(); }
  Index cols() const { return q_factor.cols(); }
};

/// Stable permutation ordering rows of `a` by non-increasing max-abs norm.
Permutation row_presort_linf(const Eigen::Ref<const Matrix>& a);

/// Householder QR of an n x p matrix, n >= p.
///
/// `column_pivot` enables Businger-Golub pivoting: at every elimination
/// step the remaining column of largest partial 2-norm is swapped in
/// (smallest index wins ties). Partial norms are downdated and recomputed
/// from scratch whenever the downdated value has lost half its digits.
/// `row_pivot` presorts rows by decreasing max-abs norm before elimination.
PivotedQR qr_pivoted(const Eigen::Ref<const Matrix>& a, bool column_pivot,
                     bool row_pivot);

}  // namespace ics

#endif  // ICS_QR_HPP
