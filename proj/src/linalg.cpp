#include "lagcoh/linalg.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace lagcoh::linalg {

namespace {

// In-place complex Cholesky, lower triangle. Returns false when a pivot is
// not strictly positive.
bool cholesky_lower(MatrixXcd& a) {
  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    double pivot = a(k, k).real();
    for (Eigen::Index j = 0; j < k; ++j) pivot -= std::norm(a(k, j));
    if (!(pivot > 0.0)) return false;
    const double lkk = std::sqrt(pivot);
    a(k, k) = lkk;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      cdouble s = a(i, k);
      for (Eigen::Index j = 0; j < k; ++j) s -= a(i, j) * std::conj(a(k, j));
      a(i, k) = s / lkk;
    }
  }
  return true;
}

}  // namespace

std::optional<double> logdet_hermitian(const MatrixXcd& a) {
  MatrixXcd l = a;
  if (!cholesky_lower(l)) return std::nullopt;
  double logdet = 0.0;
  for (Eigen::Index k = 0; k < l.rows(); ++k) logdet += std::log(l(k, k).real());
  return 2.0 * logdet;
}

std::optional<double> logdet_symmetric(const MatrixXd& a) {
  return logdet_hermitian(a.cast<cdouble>());
}

double rcond_hermitian(const MatrixXcd& a) {
  if (a.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(a, Eigen::EigenvaluesOnly);
  const VectorXd ev = es.eigenvalues();
  const double emax = ev.cwiseAbs().maxCoeff();
  if (emax == 0.0) return 0.0;
  const double emin = ev.minCoeff();
  return emin <= 0.0 ? 0.0 : emin / emax;
}

double rcond_symmetric(const MatrixXd& a) {
  return rcond_hermitian(a.cast<cdouble>());
}

void require_well_conditioned(const MatrixXcd& a, const std::string& context) {
  const double rc = rcond_hermitian(a);
  if (rc < kRcondThreshold) {
    std::ostringstream msg;
    msg << context << ": matrix numerically singular (rcond estimate " << rc
        << " below " << kRcondThreshold << ")";
    throw SingularMatrixError(msg.str(), rc);
  }
}

MatrixXcd hermitian_solve(const MatrixXcd& a, const MatrixXcd& b,
                          const std::string& context) {
  require_well_conditioned(a, context);
  MatrixXcd l = a;
  if (!cholesky_lower(l)) {
    throw SingularMatrixError(context + ": Cholesky factorization failed", 0.0);
  }
  // Forward/back substitution with L L^*.
  MatrixXcd x = b;
  const Eigen::Index n = l.rows();
  for (Eigen::Index col = 0; col < x.cols(); ++col) {
    for (Eigen::Index i = 0; i < n; ++i) {
      cdouble s = x(i, col);
      for (Eigen::Index j = 0; j < i; ++j) s -= l(i, j) * x(j, col);
      x(i, col) = s / l(i, i);
    }
    for (Eigen::Index i = n - 1; i >= 0; --i) {
      cdouble s = x(i, col);
      for (Eigen::Index j = i + 1; j < n; ++j) s -= std::conj(l(j, i)) * x(j, col);
      x(i, col) = s / l(i, i);
    }
  }
  return x;
}

MatrixXcd apply_ridge(const MatrixXcd& a, double ridge) {
  const double mean_diag = a.diagonal().real().mean();
  return a + ridge * mean_diag * MatrixXcd::Identity(a.rows(), a.cols());
}

double clamp_checked(double x, double lo, double hi, const std::string& context) {
  if (x >= lo && x <= hi) return x;
  if (x < lo && lo - x <= kClampTolerance) return lo;
  if (x > hi && x - hi <= kClampTolerance) return hi;
  std::ostringstream msg;
  msg << context << ": value " << x << " outside [" << lo << ", " << hi
      << "] beyond clamp tolerance " << kClampTolerance;
  throw NumericError(msg.str());
}

}  // namespace lagcoh::linalg
