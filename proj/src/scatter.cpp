#include "ics/scatter.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

namespace ics {

CenteredData center(const Eigen::Ref<const Matrix>& x) {
  if (x.cols() < 2 || x.rows() < 1) {
    throw ShapeError("center: need at least 2 observations, got " +
                     std::to_string(x.cols()));
  }
  require_finite(x, "center");
  CenteredData cd;
  cd.location = x.rowwise().mean();
  cd.xc = x.colwise() - cd.location;
  return cd;
}

CenteredData precentered(Matrix xc) {
  if (xc.cols() < 2 || xc.rows() < 1) {
    throw ShapeError("precentered: need at least 2 observations");
  }
  require_finite(xc, "precentered");
  CenteredData cd;
  cd.location = Vector::Zero(xc.rows());
  cd.xc = std::move(xc);
  return cd;
}

WeightSpec WeightSpec::constant() {
  WeightSpec w;
  w.kind = Kind::kConstant;
  return w;
}

WeightSpec WeightSpec::power(double alpha) {
  WeightSpec w;
  w.kind = Kind::kPower;
  w.alpha = alpha;
  return w;
}

WeightSpec WeightSpec::power_clamped(double alpha, double floor) {
  if (!(floor > 0.0)) {
    throw ShapeError("WeightSpec: clamp floor must be positive");
  }
  WeightSpec w;
  w.kind = Kind::kPower;
  w.alpha = alpha;
  w.zero_policy = ZeroPolicy::kClamp;
  w.clamp_floor = floor;
  return w;
}

Vector WeightSpec::evaluate(const Vector& d2) const {
  require_finite(d2, "WeightSpec::evaluate");
  const Index n = d2.size();
  for (Index i = 0; i < n; ++i) {
    if (d2[i] < 0.0) {
      throw ShapeError("WeightSpec::evaluate: negative squared distance");
    }
  }
  if (kind == Kind::kConstant || alpha == 0.0) return Vector::Ones(n);

  Vector d = d2;
  if (alpha < 0.0) {
    if (zero_policy == ZeroPolicy::kError) {
      const double floor = static_cast<double>(n) * kEps * d2.mean();
      std::vector<std::ptrdiff_t> bad;
      for (Index i = 0; i < n; ++i) {
        if (d2[i] <= floor) bad.push_back(i);
      }
      if (!bad.empty()) {
        std::ostringstream msg;
        msg << "cov_w weight d^" << alpha << ": " << bad.size()
            << " observation(s) at numerically zero Mahalanobis distance"
               " (first index "
            << bad.front() << ")";
        throw ZeroDistance(msg.str(), std::move(bad));
      }
    } else {
      d = d.cwiseMax(clamp_floor);
    }
  }
  return d.array().pow(alpha).matrix();
}

std::string WeightSpec::name() const {
  if (kind == Kind::kConstant) return "constant";
  if (alpha == 1.0) return "cov4";
  if (alpha == -1.0) return "covaxis";
  std::ostringstream s;
  s << "alpha=" << alpha;
  return s.str();
}

Matrix covariance(const CenteredData& cd) {
  const Index n = cd.n_obs();
  Matrix s = (cd.xc * cd.xc.transpose()) / static_cast<double>(n - 1);
  return 0.5 * (s + s.transpose());
}

Vector leverage_scores(const PivotedQR& qr) {
  const Index n = qr.rows();
  Vector lev(n);
  for (Index i = 0; i < n; ++i) {
    lev[qr.row_perm[static_cast<std::size_t>(i)]] =
        qr.q_factor.row(i).squaredNorm();
  }
  return lev;
}

Vector mahalanobis_sq_explicit(const CenteredData& cd) {
  const Index p = cd.p_vars();
  const Matrix cov = covariance(cd);
  Eigen::SelfAdjointEigenSolver<Matrix> es(cov);
  const Vector& lambda = es.eigenvalues();  // ascending
  const double lambda_max = lambda[p - 1];
  const double lambda_min = lambda[0];
  const double threshold = static_cast<double>(p) * kEps * lambda_max;
  if (!(lambda_max > 0.0) || lambda_min <= threshold) {
    const double rcond =
        (lambda_max > 0.0) ? lambda_min / lambda_max : 0.0;
    std::ostringstream msg;
    msg << "covariance is computationally singular: reciprocal condition "
           "number = "
        << rcond << " (smallest eigenvalue " << lambda_min << ")";
    throw SingularCovariance(msg.str(), lambda_min, rcond);
  }
  // D^2(x_i) = || D1^{-1/2} U1^T xc_i ||^2
  Matrix whitened =
      lambda.cwiseSqrt().cwiseInverse().asDiagonal() *
      (es.eigenvectors().transpose() * cd.xc);
  return whitened.colwise().squaredNorm().transpose();
}

Matrix cov_w(const CenteredData& cd, const Vector& d2, const WeightSpec& w) {
  if (d2.size() != cd.n_obs()) {
    throw ShapeError("cov_w: d2 length must equal the observation count");
  }
  const Vector wts = w.evaluate(d2);
  Matrix s = (cd.xc * wts.asDiagonal() * cd.xc.transpose()) /
             static_cast<double>(cd.n_obs());
  return 0.5 * (s + s.transpose());
}

}  // namespace ics
