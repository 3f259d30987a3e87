#ifndef ICS_SCATTER_HPP
#define ICS_SCATTER_HPP

#include <string>

#include "ics/matrix.hpp"
#include "ics/qr.hpp"

namespace ics {

/// Column-observation data with its row means removed.
struct CenteredData {
  Matrix xc;        ///< p x n, rows sum to ~0
  Vector location;  ///< p, the removed row means

  Index n_obs() const { return xc.cols(); }
  Index p_vars() const { return xc.rows(); }
};

/// Centers p x n data (observations are columns). n >= 2.
CenteredData center(const Eigen::Ref<const Matrix>& x);

/// Wraps data that is centered by construction (e.g. rank-reduced output);
/// location is recorded as zero.
CenteredData precentered(Matrix xc);

/// Weight function w applied to squared Mahalanobis distances in cov_w.
/// The power family w(d) = d^alpha covers cov4 (alpha = 1, FOBI) and
/// covAxis (alpha = -1, PAA). Negative alpha blows up at d = 0, so those
/// weights carry a zero-distance policy: refuse (default) or clamp.
struct WeightSpec {
  enum class Kind { kPower, kConstant };
  enum class ZeroPolicy { kError, kClamp };

  Kind kind = Kind::kPower;
  double alpha = 1.0;
  ZeroPolicy zero_policy = ZeroPolicy::kError;
  double clamp_floor = 0.0;

  static WeightSpec constant();
  static WeightSpec power(double alpha);
  static WeightSpec power_clamped(double alpha, double floor);

  /// Elementwise weights for given squared distances. For alpha < 0 with
  /// the ERROR policy, distances at or below n*eps*mean(d2) raise
  /// ZeroDistance listing the offending observations.
  Vector evaluate(const Vector& d2) const;

  std::string name() const;
};

/// Empirical covariance (1/(n-1)) * xc * xc^T, stored exactly symmetric.
Matrix covariance(const CenteredData& cd);

/// Statistical leverage scores q_i = ||Q(i,:)||^2 reindexed to original
/// observation order. For the QR of X_c^T / sqrt(n-1), (n-1) q_i is the
/// squared Mahalanobis distance of observation i.
Vector leverage_scores(const PivotedQR& qr);

/// Squared Mahalanobis distances through the explicit covariance matrix
/// and its spectral decomposition. This is the classical, fragile route:
/// it throws SingularCovariance as soon as cov is not numerically positive
/// definite (all eigenvalues > p * eps * lambda_max).
Vector mahalanobis_sq_explicit(const CenteredData& cd);

/// One-step M-scatter (1/n) * xc * Diag(w(d2_i)) * xc^T. Note the 1/n
/// prefactor against covariance's 1/(n-1); constant weight therefore gives
/// ((n-1)/n) * cov, not cov.
Matrix cov_w(const CenteredData& cd, const Vector& d2, const WeightSpec& w);

}  // namespace ics

#endif  // ICS_SCATTER_HPP
