#pragma once

#include "lagcoh/types.hpp"

namespace lagcoh {

// S_YY - S_YX S_XX^{-1} S_XY, the conditional variance of Y given X.
// Throws SingularMatrixError when s_xx fails the rcond policy.
MatrixXcd conditional_covariance(const MatrixXcd& s_yy, const MatrixXcd& s_yx,
                                 const MatrixXcd& s_xx,
                                 const MeasureOptions& opts = {});

// General (multivariate) squared coherence:
//   rho_G^2 = 1 - |S_YY/X| / |S_YY|
// computed through log-determinants of the Hermitian blocks. A singular
// conditional covariance means perfect linear prediction and yields 1.
MeasureResult general_coherence(const CrossSpectrum& cs,
                                const MeasureOptions& opts = {});

// Ordinary squared coherence |s_xy|^2 / (s_xx s_yy) for p = q = 1.
MeasureResult classical_coherence(const CrossSpectrum& cs);

}  // namespace lagcoh
