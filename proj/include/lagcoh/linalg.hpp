#pragma once

#include <optional>

#include "lagcoh/types.hpp"

namespace lagcoh::linalg {

// Reciprocal condition estimates below this threshold are treated as
// singular; no automatic regularization is applied.
inline constexpr double kRcondThreshold = 1e-12;

// Computed values may overshoot their guaranteed range by at most this much
// before the overshoot is treated as a numerical failure.
inline constexpr double kClampTolerance = 1e-9;

// log|A| for Hermitian positive definite A via complex Cholesky, accumulated
// in log space. Returns nullopt when a pivot is not strictly positive, i.e.
// A is singular or indefinite to working precision.
std::optional<double> logdet_hermitian(const MatrixXcd& a);

// log|A| for real symmetric positive definite A.
std::optional<double> logdet_symmetric(const MatrixXd& a);

// lambda_min / lambda_max of a Hermitian matrix (0 when lambda_max is 0).
double rcond_hermitian(const MatrixXcd& a);
double rcond_symmetric(const MatrixXd& a);

// Solves A X = B for Hermitian positive definite A. Throws
// SingularMatrixError when A fails the rcond policy or the factorization
// breaks down.
MatrixXcd hermitian_solve(const MatrixXcd& a, const MatrixXcd& b,
                          const std::string& context);

// A + ridge * mean(diag(A)) * I.
MatrixXcd apply_ridge(const MatrixXcd& a, double ridge);

// Throws SingularMatrixError when rcond_hermitian(a) < kRcondThreshold.
void require_well_conditioned(const MatrixXcd& a, const std::string& context);

// Clamp x into [lo, hi] under the overshoot policy: within kClampTolerance
// the value is clamped, beyond it a NumericError is thrown.
double clamp_checked(double x, double lo, double hi, const std::string& context);

}  // namespace lagcoh::linalg
