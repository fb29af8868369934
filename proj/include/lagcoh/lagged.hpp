#pragma once

#include "lagcoh/spectral.hpp"
#include "lagcoh/types.hpp"

namespace lagcoh {

// Joint Hermitian covariance with block layout [[S_YY, S_YX], [S_XY, S_XX]]
// (Y block first).
struct JointCovariance {
  MatrixXcd s_zz;
  std::size_t q = 0;  // leading (Y) block dimension
  std::size_t p = 0;  // trailing (X) block dimension
  std::size_t frequency_bin = 0;
};

JointCovariance joint_covariance(const CrossSpectrum& cs);

// Zero-lag removed general coherence:
//   rho_GL^2 = 1 - |S_ZZ| / |Re(S_ZZ)|
// with both determinants through log-space factorizations. A vanishing
// imaginary part makes |S_ZZ| = |Re(S_ZZ)| identically, so the measure is 0
// regardless of invertibility; otherwise a singular Re(S_ZZ) is an error and
// a singular S_ZZ yields 1.
MeasureResult general_lagged_coherence(const JointCovariance& jc,
                                       const MeasureOptions& opts = {});

// Signed univariate form: Im(s_yx) / sqrt(s_yy s_xx - Re(s_yx)^2), in [-1, 1].
MeasureResult lagged_coherence_univariate_signed(double s_xx, double s_yy,
                                                 cdouble s_yx,
                                                 std::size_t frequency_bin = 0);

// Zero-lag removed general phase synchronization: the lagged coherence root
// of the normalized joint covariance.
MeasureResult general_lagged_phase_sync(const SpectralSet& spectra_x,
                                        const SpectralSet& spectra_y,
                                        std::size_t omega,
                                        NormalizationKind kind,
                                        const MeasureOptions& opts = {});

// Univariate closed form sqrt(Im^2 / (1 - Re^2)) of the normalized covariance.
MeasureResult lagged_phase_sync_univariate(const SpectralSet& spectra_x,
                                           const SpectralSet& spectra_y,
                                           std::size_t omega,
                                           const MeasureOptions& opts = {});

// Im(s_yx) / sqrt(s_yy s_xx), in [-1, 1].
MeasureResult imaginary_coherency(double s_xx, double s_yy, cdouble s_yx,
                                  std::size_t frequency_bin = 0);

// PLI = |(1/N_R) sum_j sign(Im(y_jw conj(x_jw)))|, with sign(0) := 0.
MeasureResult phase_lag_index(const SpectralSet& spectra_x,
                              const SpectralSet& spectra_y, std::size_t omega);

namespace detail {
// Shared determinant-ratio core 1 - |S| / |Re(S)|; returns the squared
// lagged value in [0, 1].
double lagged_determinant_ratio(const MatrixXcd& s_zz, const MeasureOptions& opts,
                                const std::string& context);
}  // namespace detail

}  // namespace lagcoh
