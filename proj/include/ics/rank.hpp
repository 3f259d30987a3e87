#ifndef ICS_RANK_HPP
#define ICS_RANK_HPP

#include <utility>

#include "ics/matrix.hpp"
#include "ics/qr.hpp"

namespace ics {

/// How the trailing diagonal of R is compared during the rank scan.
enum class RankCriterion {
  kSuccessive,  ///< fire when |R_{q+1,q+1}| < eps * |R_qq|
  kLeading,     ///< fire when |R_{q+1,q+1}| < eps * |R_11|
};

/// Outcome of scanning |R_11| >= |R_22| >= ... for a numerical rank.
struct RankDecision {
  Index q = 0;             ///< detected numerical rank, 1 <= q <= p
  double epsilon = 0.0;    ///< relative tolerance used
  RankCriterion criterion = RankCriterion::kLeading;
  Vector r_diag_abs;       ///< the scanned sequence

  bool full_rank() const { return q == r_diag_abs.size(); }
};

/// Scans a non-increasing |R_ii| sequence for the first index where the
/// criterion fires; q = p when it never does. Inputs out of order beyond a
/// 1e-12 relative slack raise NotSorted.
RankDecision numerical_rank(const Vector& r_diag_abs, double epsilon,
                            RankCriterion criterion);

/// Data placed in the detected q-dimensional subspace.
struct Reduced {
  Matrix x_reduced;  ///< q x n, centered, observations in original order
  Matrix basis;      ///< p x q, maps reduced coordinates back to p-space
  Permutation kept_vars;  ///< truncation only: surviving original variables
};

/// URV-style reduction: a second column-pivoted QR of [R11^T; R12^T]
/// re-expresses the rank-q part of the data in an orthonormal basis
/// instead of discarding coordinates. `qr` must come from the centered,
/// 1/sqrt(n-1)-scaled data; requires rank.q < p.
Reduced urv_reduce(const PivotedQR& qr, const RankDecision& rank,
                   Index n_obs);

/// Truncation: keep the q pivot-selected coordinates,
/// x_reduced = sqrt(n-1) * R11^T * Q1^T. Requires rank.q < p.
Reduced truncate_reduce(const PivotedQR& qr, const RankDecision& rank,
                        Index n_obs);

}  // namespace ics

#endif  // ICS_RANK_HPP
