#include "ics/triangular.hpp"

namespace ics {

Matrix solve_upper_triangular_transposed(const Eigen::Ref<const Matrix>& r,
                                         const Eigen::Ref<const Matrix>& rhs) {
  const Index p = r.rows();
  if (r.cols() != p) {
    throw ShapeError("solve_upper_triangular_transposed: r must be square");
  }
  if (rhs.rows() != p) {
    throw ShapeError(
        "solve_upper_triangular_transposed: rhs rows must match r");
  }
  for (Index i = 0; i < p; ++i) {
    if (r(i, i) == 0.0) {
      throw SingularTriangular(
          "triangular solve: zero diagonal at index " + std::to_string(i) +
              " (system is exactly singular)",
          i);
    }
  }
  Matrix x = rhs;
  for (Index i = p - 1; i >= 0; --i) {
    if (i + 1 < p) {
      x.row(i).noalias() -= r.row(i).segment(i + 1, p - i - 1) *
                            x.bottomRows(p - i - 1);
    }
    x.row(i) /= r(i, i);
  }
  return x;
}

}  // namespace ics
