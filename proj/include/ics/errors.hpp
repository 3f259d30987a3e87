#ifndef ICS_ERRORS_HPP
#define ICS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ics {

/// Root of the library's exception taxonomy.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Wrong dimensions, empty input, invalid argument combinations.
class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& msg) : Error(msg) {}
};

/// NaN or Inf encountered where finite entries are required.
class NonFiniteInput : public Error {
 public:
  explicit NonFiniteInput(const std::string& msg) : Error(msg) {}
};

/// Input violates a required monotone ordering.
class NotSorted : public Error {
 public:
  explicit NotSorted(const std::string& msg) : Error(msg) {}
};

/// Base for failures that are data-dependent numerical phenomena rather
/// than usage mistakes. CLI maps these to exit code 2.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& msg) : Error(msg) {}
};

/// Iterative kernel did not converge within its documented cap.
class ConvergenceError : public NumericalError {
 public:
  explicit ConvergenceError(const std::string& msg) : NumericalError(msg) {}
};

/// Zero diagonal hit during a triangular solve.
class SingularTriangular : public NumericalError {
 public:
  SingularTriangular(const std::string& msg, std::ptrdiff_t index)
      : NumericalError(msg), index(index) {}
  std::ptrdiff_t index;  ///< first offending diagonal position (0-based)
};

/// Explicit covariance is not numerically positive definite.
class SingularCovariance : public NumericalError {
 public:
  SingularCovariance(const std::string& msg, double min_eigenvalue,
                     double rcond)
      : NumericalError(msg),
        min_eigenvalue(min_eigenvalue),
        rcond(rcond) {}
  double min_eigenvalue;
  double rcond;  ///< reciprocal condition estimate lambda_min / lambda_max
};

/// Negative-power weight hit (numerically) zero Mahalanobis distances.
class ZeroDistance : public NumericalError {
 public:
  ZeroDistance(const std::string& msg, std::vector<std::ptrdiff_t> indices)
      : NumericalError(msg), indices(std::move(indices)) {}
  std::vector<std::ptrdiff_t> indices;  ///< offending observations (0-based)
};

/// Rank scan fired while the caller demanded full rank.
class RankDeficient : public NumericalError {
 public:
  RankDeficient(const std::string& msg, std::ptrdiff_t detected_rank,
                std::ptrdiff_t full_dim)
      : NumericalError(msg), detected_rank(detected_rank), full_dim(full_dim) {}
  std::ptrdiff_t detected_rank;
  std::ptrdiff_t full_dim;
};

/// All observations coincide; no scatter structure at all.
class DegenerateData : public NumericalError {
 public:
  explicit DegenerateData(const std::string& msg) : NumericalError(msg) {}
};

/// Requested condition number cannot be reached by diagonal rescaling.
class UnreachableCondition : public NumericalError {
 public:
  explicit UnreachableCondition(const std::string& msg)
      : NumericalError(msg) {}
};

}  // namespace ics

#endif  // ICS_ERRORS_HPP
