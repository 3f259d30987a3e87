#ifndef ICS_TRIANGULAR_HPP
#define ICS_TRIANGULAR_HPP

#include "ics/matrix.hpp"

namespace ics {

/// Back substitution: returns X with r * X = rhs for upper triangular r.
/// Never forms r^{-1}; callers wanting (r^{-1} M)^T transpose the result.
/// Throws SingularTriangular (with the offending index) on a zero diagonal.
Matrix solve_upper_triangular_transposed(const Eigen::Ref<const Matrix>& r,
                                         const Eigen::Ref<const Matrix>& rhs);

}  // namespace ics

#endif  // ICS_TRIANGULAR_HPP
