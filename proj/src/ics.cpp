#include "ics/ics.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "ics/svd.hpp"
#include "ics/triangular.hpp"

namespace ics {

void IcsOptions::validate() const {
  if (!(rank_epsilon > 0.0 && rank_epsilon < 1.0)) {
    throw ShapeError("IcsOptions: rank_epsilon must lie in (0, 1)");
  }
}

namespace {

struct CovSpectral {
  Vector lambda;  // ascending
  Matrix u;
};

// Spectral decomposition of the explicit covariance, rejected unless
// numerically positive definite.
CovSpectral cov_spectral_checked(const Matrix& cov) {
  const Index p = cov.rows();
  Eigen::SelfAdjointEigenSolver<Matrix> es(cov);
  const Vector& lambda = es.eigenvalues();
  const double lambda_max = lambda[p - 1];
  const double lambda_min = lambda[0];
  const double threshold = static_cast<double>(p) * kEps * lambda_max;
  if (!(lambda_max > 0.0) || lambda_min <= threshold) {
    const double rcond = (lambda_max > 0.0) ? lambda_min / lambda_max : 0.0;
    std::ostringstream msg;
    msg << "covariance is computationally singular: reciprocal condition "
           "number = "
        << rcond << " (smallest eigenvalue " << lambda_min << ")";
    throw SingularCovariance(msg.str(), lambda_min, rcond);
  }
  return {lambda, es.eigenvectors()};
}

void fill_gap_diagnostics(IcsResult& res) {
  const Index p = res.eigenvalues.size();
  double min_gap = std::numeric_limits<double>::infinity();
  for (Index i = 0; i + 1 < p; ++i) {
    const double hi = std::abs(res.eigenvalues[i]);
    const double lo = std::abs(res.eigenvalues[i + 1]);
    const double scale = std::max(hi, lo);
    if (scale == 0.0) {
      min_gap = 0.0;
      continue;
    }
    min_gap =
        std::min(min_gap, (res.eigenvalues[i] - res.eigenvalues[i + 1]) / scale);
  }
  res.diagnostics.min_relative_gap = min_gap;
  res.diagnostics.near_equal_eigenvalues = (p > 1 && min_gap < 1e-6);
}

}  // namespace

IcsResult ics_eigen(const CenteredData& cd, const IcsOptions& opts) {
  opts.validate();
  const Index p = cd.p_vars();
  const Index n = cd.n_obs();

  const Matrix cov = covariance(cd);
  const CovSpectral spec = cov_spectral_checked(cov);

  Matrix inv_sqrt = spec.u *
                    spec.lambda.cwiseSqrt().cwiseInverse().asDiagonal() *
                    spec.u.transpose();

  // Mahalanobis distances through the same fragile decomposition.
  Matrix whitened = spec.lambda.cwiseSqrt().cwiseInverse().asDiagonal() *
                    (spec.u.transpose() * cd.xc);
  Vector d2 = whitened.colwise().squaredNorm().transpose();

  const Matrix covw = cov_w(cd, d2, opts.weight);
  Matrix m = inv_sqrt * covw * inv_sqrt;
  m = 0.5 * (m + m.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Matrix> es2(m);

  IcsResult res;
  res.algorithm = IcsAlgorithm::kEigen;
  res.rank_used = p;
  res.col_perm = identity_permutation(p);
  res.eigenvalues = es2.eigenvalues().reverse();
  Matrix u2 = es2.eigenvectors().rowwise().reverse();
  res.unmixing.noalias() = u2.transpose() * inv_sqrt;
  res.scores.noalias() = res.unmixing * cd.xc;
  res.diagnostics.condition_estimate = spec.lambda[p - 1] / spec.lambda[0];
  res.diagnostics.detected_rank = p;
  fill_gap_diagnostics(res);

  (void)n;
  if (opts.sign_convention == SignConvention::kMaxAbsPositive) {
    res = fix_signs(std::move(res));
  }
  return res;
}

IcsResult ics_qr(const CenteredData& cd, const IcsOptions& opts) {
  opts.validate();
  const Index p = cd.p_vars();
  const Index n = cd.n_obs();
  if (n <= p) {
    throw ShapeError("ics_qr: requires n > p, got n = " + std::to_string(n) +
                     ", p = " + std::to_string(p));
  }

  const double scale = std::sqrt(static_cast<double>(n - 1));
  Matrix a = cd.xc.transpose() / scale;
  PivotedQR qr = qr_pivoted(a, /*column_pivot=*/true, opts.row_pivot);

  const RankDecision rd =
      numerical_rank(qr.r_diag_abs, opts.rank_epsilon, opts.rank_criterion);
  if (!rd.full_rank() && opts.reduction == Reduction::kNone) {
    std::ostringstream msg;
    msg << "ics_qr: numerical rank " << rd.q << " < p = " << p
        << " (|R_qq| sequence fell below tolerance " << rd.epsilon
        << " and no reduction was allowed)";
    throw RankDeficient(msg.str(), rd.q, p);
  }

  // Leverage scores in pivoted row order drive the weights; the original
  // observation order only matters for reporting Z and errors.
  Vector lev_orig = leverage_scores(qr);
  Vector d2 = static_cast<double>(n - 1) * lev_orig;
  Vector wts_orig = opts.weight.evaluate(d2);
  Vector wts_piv(n);
  for (Index i = 0; i < n; ++i) {
    wts_piv[i] = wts_orig[qr.row_perm[static_cast<std::size_t>(i)]];
  }

  Matrix wq = wts_piv.cwiseSqrt().asDiagonal() * qr.q_factor;
  ThinSvd svd = thin_svd(wq);

  IcsResult res;
  res.algorithm = IcsAlgorithm::kQr;
  res.rank_used = p;
  res.col_perm = qr.col_perm;
  res.eigenvalues =
      (static_cast<double>(n - 1) / static_cast<double>(n)) *
      svd.sigma.array().square().matrix();

  // B = (R^{-1} U~2)^T, columns mapped back through the variable pivot.
  Matrix b_piv = solve_upper_triangular_transposed(qr.r_factor, svd.v)
                     .transpose();
  res.unmixing.resize(p, p);
  for (Index k = 0; k < p; ++k) {
    res.unmixing.col(qr.col_perm[static_cast<std::size_t>(k)]) = b_piv.col(k);
  }

  // Z^T = sqrt(n-1) Q U~2, rows mapped back through the row pivot.
  Matrix zt = scale * (qr.q_factor * svd.v);
  res.scores.resize(p, n);
  for (Index i = 0; i < n; ++i) {
    res.scores.col(qr.row_perm[static_cast<std::size_t>(i)]) =
        zt.row(i).transpose();
  }

  const double r00 = qr.r_diag_abs[0];
  const double rpp = qr.r_diag_abs[p - 1];
  res.diagnostics.condition_estimate =
      (rpp > 0.0) ? (r00 / rpp) * (r00 / rpp)
                  : std::numeric_limits<double>::infinity();
  res.diagnostics.detected_rank = rd.q;
  fill_gap_diagnostics(res);

  if (opts.sign_convention == SignConvention::kMaxAbsPositive) {
    res = fix_signs(std::move(res));
  }
  return res;
}

ReducedIcs reduce_then_ics(const Eigen::Ref<const Matrix>& x,
                           const IcsOptions& opts) {
  opts.validate();
  CenteredData cd = center(x);
  const Index p = cd.p_vars();
  const Index n = cd.n_obs();
  if (n < p) {
    throw ShapeError("reduce_then_ics: requires n >= p");
  }

  const double scale = std::sqrt(static_cast<double>(n - 1));
  Matrix a = cd.xc.transpose() / scale;
  PivotedQR qr = qr_pivoted(a, /*column_pivot=*/true, opts.row_pivot);

  const double degenerate_floor = 64.0 * static_cast<double>(n) * kEps *
                                  x.cwiseAbs().maxCoeff() / scale;
  if (qr.r_diag_abs[0] <= degenerate_floor) {
    throw DegenerateData(
        "reduce_then_ics: all observations coincide (centered data at "
        "rounding level)");
  }

  const RankDecision rd =
      numerical_rank(qr.r_diag_abs, opts.rank_epsilon, opts.rank_criterion);

  ReducedIcs out;
  out.rank = rd;
  if (rd.full_rank()) {
    out.result = ics_qr(cd, opts);
    out.basis = Matrix::Identity(p, p);
    return out;
  }
  if (opts.reduction == Reduction::kNone) {
    std::ostringstream msg;
    msg << "reduce_then_ics: numerical rank " << rd.q << " < p = " << p
        << " and reduction is disabled";
    throw RankDeficient(msg.str(), rd.q, p);
  }

  Reduced red = (opts.reduction == Reduction::kUrv)
                    ? urv_reduce(qr, rd, n)
                    : truncate_reduce(qr, rd, n);
  out.result = ics_qr(precentered(std::move(red.x_reduced)), opts);
  out.basis = std::move(red.basis);
  return out;
}

Vector ics_distances(const IcsResult& result, Index k) {
  const Index p = result.scores.rows();
  if (k < 1 || k > p) {
    throw ShapeError("ics_distances: k must lie in [1, " + std::to_string(p) +
                     "], got " + std::to_string(k));
  }
  return result.scores.topRows(k).colwise().squaredNorm().transpose();
}

IcsResult fix_signs(IcsResult result) {
  const Index p = result.unmixing.rows();
  for (Index j = 0; j < p; ++j) {
    Index best = 0;
    double best_abs = std::abs(result.unmixing(j, 0));
    for (Index c = 1; c < result.unmixing.cols(); ++c) {
      const double a = std::abs(result.unmixing(j, c));
      if (a > best_abs) {
        best_abs = a;
        best = c;
      }
    }
    if (result.unmixing(j, best) < 0.0) {
      result.unmixing.row(j) = -result.unmixing.row(j);
      result.scores.row(j) = -result.scores.row(j);
    }
  }
  return result;
}

}  // namespace ics
