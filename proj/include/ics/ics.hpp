#ifndef ICS_ICS_HPP
#define ICS_ICS_HPP

#include <limits>

#include "ics/matrix.hpp"
#include "ics/rank.hpp"
#include "ics/scatter.hpp"

namespace ics {

enum class IcsAlgorithm { kEigen, kQr };

/// What to do when the rank scan fires on rank-deficient data.
enum class Reduction { kUrv, kTruncate, kNone };

enum class SignConvention { kMaxAbsPositive, kNone };

struct IcsOptions {
  WeightSpec weight = WeightSpec::power(1.0);  // cov-cov4 (FOBI) default
  bool row_pivot = true;
  double rank_epsilon = 1e-8;
  RankCriterion rank_criterion = RankCriterion::kLeading;
  Reduction reduction = Reduction::kUrv;
  SignConvention sign_convention = SignConvention::kMaxAbsPositive;

  void validate() const;
};

struct IcsDiagnostics {
  /// Estimate of kappa(cov): eigenvalue ratio on the EIGEN path,
  /// (|R_11|/|R_pp|)^2 on the QR path.
  double condition_estimate = 0.0;
  /// Smallest relative gap between consecutive sorted eigenvalues.
  double min_relative_gap = std::numeric_limits<double>::infinity();
  /// Set when min_relative_gap < 1e-6: individual coordinates inside the
  /// near-equal block are not identifiable, only their span.
  bool near_equal_eigenvalues = false;
  /// Rank the scan detected on the QR path (p when nothing fired).
  Index detected_rank = 0;
};

/// Joint-diagonalization output: B cov B^T = I, B cov_w B^T = Diag(eigenvalues).
struct IcsResult {
  Vector eigenvalues;  ///< non-increasing
  Matrix unmixing;     ///< B, p x p, original variable order
  Matrix scores;       ///< Z = B xc, p x n, original observation order
  IcsAlgorithm algorithm = IcsAlgorithm::kQr;
  Index rank_used = 0;    ///< dimension the analysis ran in
  Permutation col_perm;   ///< variable pivot order (identity for EIGEN)
  IcsDiagnostics diagnostics;
};

/// Classical implementation: spectral decomposition of the explicit
/// covariance, symmetric inverse square root, spectral decomposition of
/// M = cov^{-1/2} cov_w cov^{-1/2}. Kept deliberately on this fragile
/// route; it throws SingularCovariance on ill-conditioned input, which is
/// expected behavior, not a bug.
IcsResult ics_eigen(const CenteredData& cd, const IcsOptions& opts = {});

/// QR-based implementation: pivoted QR of xc^T / sqrt(n-1), leverage
/// scores, thin SVD of Diag(sqrt(w((n-1)q_i))) Q, and a triangular solve
/// for B. Eigenvalues and scores never touch R^{-1}, which is what makes
/// them stable under extreme scaling. The rank scan always runs; it is a
/// hard RankDeficient error only when opts.reduction == kNone.
IcsResult ics_qr(const CenteredData& cd, const IcsOptions& opts = {});

struct ReducedIcs {
  IcsResult result;
  RankDecision rank;
  Matrix basis;  ///< p x q, reduced coordinates back to original space
};

/// Centers, factorizes, scans for numerical rank; reduces dimension (URV
/// or truncation) when q < p and runs ics_qr on the q x n data. With full
/// rank this equals ics_qr on the centered data and basis = I.
ReducedIcs reduce_then_ics(const Eigen::Ref<const Matrix>& x,
                           const IcsOptions& opts = {});

/// Squared ICS distances from the first k invariant coordinates.
Vector ics_distances(const IcsResult& result, Index k);

/// Deterministic sign convention: a row whose max-abs entry (ties to the
/// lowest column) is negative gets negated in B and Z. Idempotent.
IcsResult fix_signs(IcsResult result);

}  // namespace ics

#endif  // ICS_ICS_HPP
