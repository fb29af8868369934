#include "lagcoh/lagged.hpp"

#include <cmath>
#include <sstream>

#include "lagcoh/linalg.hpp"
#include "lagcoh/phase_sync.hpp"

namespace lagcoh {

JointCovariance joint_covariance(const CrossSpectrum& cs) {
  const std::size_t p = cs.p();
  const std::size_t q = cs.q();
  JointCovariance jc;
  jc.q = q;
  jc.p = p;
  jc.frequency_bin = cs.frequency_bin;
  jc.s_zz.resize(q + p, q + p);
  jc.s_zz.topLeftCorner(q, q) = cs.s_yy;
  jc.s_zz.topRightCorner(q, p) = cs.s_yx();
  jc.s_zz.bottomLeftCorner(p, q) = cs.s_xy;
  jc.s_zz.bottomRightCorner(p, p) = cs.s_xx;
  return jc;
}

namespace detail {

double lagged_determinant_ratio(const MatrixXcd& s_zz,
                                const MeasureOptions& opts,
                                const std::string& context) {
  MatrixXcd s = s_zz;
  if (opts.ridge) s = linalg::apply_ridge(s, *opts.ridge);

  // Im(S) == 0 makes |S| = |Re(S)| identically, independent of
  // invertibility; report exactly 0 rather than forming a 0/0 ratio.
  const double scale = s.cwiseAbs().maxCoeff();
  const double im_norm = s.imag().cwiseAbs().maxCoeff();
  if (scale == 0.0 || im_norm <= 1e-14 * scale) return 0.0;

  const MatrixXd re = 0.5 * (s.real() + s.real().transpose());
  const auto logdet_re = linalg::logdet_symmetric(re);
  if (!logdet_re) {
    throw SingularMatrixError(
        context + ": Re(S_ZZ) singular; the determinant ratio is undefined",
        linalg::rcond_symmetric(re));
  }
  const double rc = linalg::rcond_symmetric(re);
  if (rc < linalg::kRcondThreshold) {
    throw SingularMatrixError(context + ": Re(S_ZZ) numerically singular", rc);
  }

  const auto logdet_c = linalg::logdet_hermitian(s);
  if (!logdet_c) return 1.0;  // |S_ZZ| = 0 with Re(S_ZZ) invertible

  const double value = 1.0 - std::exp(*logdet_c - *logdet_re);
  return linalg::clamp_checked(value, 0.0, 1.0, context);
}

}  // namespace detail

MeasureResult general_lagged_coherence(const JointCovariance& jc,
                                       const MeasureOptions& opts) {
  const double value = detail::lagged_determinant_ratio(
      jc.s_zz, opts, "general_lagged_coherence");
  return MeasureResult{MeasureId::lagged_coherence_general, jc.frequency_bin,
                       value, /*squared=*/true, std::nullopt};
}

MeasureResult lagged_coherence_univariate_signed(double s_xx, double s_yy,
                                                 cdouble s_yx,
                                                 std::size_t frequency_bin) {
  const double re = s_yx.real();
  const double denom_sq = s_yy * s_xx - re * re;
  if (!(denom_sq > 0.0)) {
    std::ostringstream msg;
    msg << "lagged_coherence_univariate: degenerate covariance, "
        << "s_yy*s_xx - Re(s_yx)^2 = " << denom_sq << " <= 0";
    throw DegenerateInputError(msg.str());
  }
  const double value = linalg::clamp_checked(
      s_yx.imag() / std::sqrt(denom_sq), -1.0, 1.0,
      "lagged_coherence_univariate");
  return MeasureResult{MeasureId::lagged_coherence_univariate, frequency_bin,
                       value, /*squared=*/false, std::nullopt};
}

MeasureResult general_lagged_phase_sync(const SpectralSet& spectra_x,
                                        const SpectralSet& spectra_y,
                                        std::size_t omega,
                                        NormalizationKind kind,
                                        const MeasureOptions& opts) {
  const auto [nx, ny] =
      detail::normalized_pair(spectra_x, spectra_y, omega, kind, opts);
  CrossSpectrum cs;
  cs.s_xx = detail::covariance(nx);
  cs.s_yy = detail::covariance(ny);
  cs.s_xy = detail::covariance(nx, ny);
  cs.frequency_bin = omega;
  cs.n_segments_used = nx.n_segments;
  const JointCovariance jc = joint_covariance(cs);
  const double squared = detail::lagged_determinant_ratio(
      jc.s_zz, opts, "general_lagged_phase_sync");
  return MeasureResult{MeasureId::lagged_ps_general, omega, std::sqrt(squared),
                       /*squared=*/false, kind};
}

MeasureResult lagged_phase_sync_univariate(const SpectralSet& spectra_x,
                                           const SpectralSet& spectra_y,
                                           std::size_t omega,
                                           const MeasureOptions& opts) {
  if (spectra_x.n_channels != 1 || spectra_y.n_channels != 1) {
    throw DimensionError("lagged_phase_sync_univariate requires p = q = 1");
  }
  // Normalization kind is irrelevant for p = 1.
  const auto [sx, sy] = detail::normalized_pair(
      spectra_x, spectra_y, omega, NormalizationKind::variable_wise, opts);
  const cdouble s = detail::mean_cdot_conj(sx, 0, sy, 0);
  const double denom_sq = 1.0 - s.real() * s.real();
  if (!(denom_sq > 0.0)) {
    throw DegenerateInputError(
        "lagged_phase_sync_univariate: |Re| of normalized covariance is 1");
  }
  const double value = linalg::clamp_checked(
      std::sqrt(s.imag() * s.imag() / denom_sq), 0.0, 1.0,
      "lagged_phase_sync_univariate");
  return MeasureResult{MeasureId::lagged_ps_univariate, omega, value,
                       /*squared=*/false, std::nullopt};
}

MeasureResult imaginary_coherency(double s_xx, double s_yy, cdouble s_yx,
                                  std::size_t frequency_bin) {
  if (!(s_xx > 0.0) || !(s_yy > 0.0)) {
    throw DegenerateInputError("imaginary_coherency: zero variance");
  }
  const double value = linalg::clamp_checked(
      s_yx.imag() / std::sqrt(s_yy * s_xx), -1.0, 1.0, "imaginary_coherency");
  return MeasureResult{MeasureId::imag_coherency, frequency_bin, value,
                       /*squared=*/false, std::nullopt};
}

MeasureResult phase_lag_index(const SpectralSet& spectra_x,
                              const SpectralSet& spectra_y,
                              std::size_t omega) {
  if (spectra_x.n_channels != 1 || spectra_y.n_channels != 1) {
    throw DimensionError("phase_lag_index requires univariate series");
  }
  if (spectra_x.n_segments != spectra_y.n_segments) {
    throw DimensionError("segment count mismatch between X and Y");
  }
  const detail::BinSlice sx = detail::slice_bin(spectra_x, omega);
  const detail::BinSlice sy = detail::slice_bin(spectra_y, omega);
  double acc = 0.0;
  for (std::size_t j = 0; j < sx.n_segments; ++j) {
    // Im(y conj(x)) = Im(y)*Re(x) - Re(y)*Im(x)
    const double im = sy.im[0][j] * sx.re[0][j] - sy.re[0][j] * sx.im[0][j];
    acc += im > 0.0 ? 1.0 : (im < 0.0 ? -1.0 : 0.0);
  }
  const double value = std::abs(acc) / static_cast<double>(sx.n_segments);
  return MeasureResult{MeasureId::pli, omega, value, /*squared=*/false,
                       std::nullopt};
}

}  // namespace lagcoh
