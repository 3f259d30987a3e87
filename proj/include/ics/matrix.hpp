#ifndef ICS_MATRIX_HPP
#define ICS_MATRIX_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "ics/errors.hpp"

namespace ics {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;
using Permutation = std::vector<Index>;

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

/// Throws NonFiniteInput unless every entry of `a` is finite.
inline void require_finite(const Eigen::Ref<const Matrix>& a,
                           const char* what) {
  if (!a.allFinite()) {
    throw NonFiniteInput(std::string(what) +
                         ": matrix contains NaN or Inf entries");
  }
}

inline void require_finite(const Eigen::Ref<const Vector>& v,
                           const char* what) {
  if (!v.allFinite()) {
    throw NonFiniteInput(std::string(what) +
                         ": vector contains NaN or Inf entries");
  }
}

/// Identity permutation of length n.
inline Permutation identity_permutation(Index n) {
  Permutation p(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  return p;
}

/// Inverse of a permutation given as an index vector.
inline Permutation invert_permutation(const Permutation& p) {
  Permutation inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    inv[static_cast<std::size_t>(p[i])] = static_cast<Index>(i);
  }
  return inv;
}

}  // namespace ics

#endif  // ICS_MATRIX_HPP
