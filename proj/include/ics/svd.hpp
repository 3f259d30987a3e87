#ifndef ICS_SVD_HPP
#define ICS_SVD_HPP

#include "ics/matrix.hpp"

namespace ics {

/// Economy-size SVD a = u * Diag(sigma) * v^T of an n x p matrix, n >= p.
struct ThinSvd {
  Matrix u;      ///< n x p, orthonormal columns
  Vector sigma;  ///< p singular values, non-increasing, >= 0
  Matrix v;      ///< p x p orthogonal
};

/// Thin SVD via column-pivoted QR followed by one-sided Jacobi
/// orthogonalization of the triangular factor. The pivoted QR step makes
/// the sweep phase cheap (p x p) and preserves the high relative accuracy
/// of small singular values on diagonally graded inputs. Throws
/// ConvergenceError if the sweeps have not settled after 30 passes.
ThinSvd thin_svd(const Eigen::Ref<const Matrix>& a);

}  // namespace ics

#endif  // ICS_SVD_HPP
