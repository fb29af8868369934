#include "lagcoh/coherence.hpp"

#include <cmath>
#include <sstream>

#include "lagcoh/linalg.hpp"

namespace lagcoh {

MatrixXcd conditional_covariance(const MatrixXcd& s_yy, const MatrixXcd& s_yx,
                                 const MatrixXcd& s_xx,
                                 const MeasureOptions& opts) {
  MatrixXcd xx = s_xx;
  if (opts.ridge) xx = linalg::apply_ridge(xx, *opts.ridge);
  const MatrixXcd solved =
      linalg::hermitian_solve(xx, s_yx.adjoint(), "conditional_covariance: S_XX");
  MatrixXcd cond = s_yy - s_yx * solved;
  // Symmetrize; the subtraction loses exact Hermitian structure.
  cond = 0.5 * (cond + cond.adjoint()).eval();
  return cond;
}

namespace {

void require_enough_segments(const CrossSpectrum& cs) {
  const std::size_t needed = cs.p() + cs.q();
  if (cs.n_segments_used > 0 && cs.n_segments_used < needed) {
    std::ostringstream msg;
    msg << "covariance is rank-deficient by construction: " << cs.n_segments_used
        << " segments for p+q=" << needed
        << " channels; record more segments (N_R >= p+q)";
    throw DimensionError(msg.str());
  }
}

}  // namespace

MeasureResult general_coherence(const CrossSpectrum& cs,
                                const MeasureOptions& opts) {
  require_enough_segments(cs);
  MatrixXcd s_yy = cs.s_yy;
  MatrixXcd s_xx = cs.s_xx;
  if (opts.ridge) {
    s_yy = linalg::apply_ridge(s_yy, *opts.ridge);
    s_xx = linalg::apply_ridge(s_xx, *opts.ridge);
  }
  linalg::require_well_conditioned(s_yy, "general_coherence: S_YY");
  const auto logdet_yy = linalg::logdet_hermitian(s_yy);
  if (!logdet_yy) {
    throw SingularMatrixError("general_coherence: S_YY not positive definite",
                              0.0);
  }

  const MatrixXcd cond = conditional_covariance(s_yy, cs.s_yx(), s_xx, opts);
  const auto logdet_cond = linalg::logdet_hermitian(cond);

  double value;
  if (!logdet_cond) {
    // Conditional variance vanished: perfect linear prediction.
    value = 1.0;
  } else {
    value = 1.0 - std::exp(*logdet_cond - *logdet_yy);
    value = linalg::clamp_checked(value, 0.0, 1.0, "general_coherence");
  }
  return MeasureResult{MeasureId::coherence_general, cs.frequency_bin, value,
                       /*squared=*/true, std::nullopt};
}

MeasureResult classical_coherence(const CrossSpectrum& cs) {
  if (cs.p() != 1 || cs.q() != 1) {
    throw DimensionError("classical_coherence requires univariate series");
  }
  const double s_xx = cs.s_xx(0, 0).real();
  const double s_yy = cs.s_yy(0, 0).real();
  if (s_xx <= 0.0 || s_yy <= 0.0) {
    throw DegenerateInputError("classical_coherence: zero variance");
  }
  const double value = linalg::clamp_checked(
      std::norm(cs.s_xy(0, 0)) / (s_xx * s_yy), 0.0, 1.0, "classical_coherence");
  return MeasureResult{MeasureId::coherence_classical, cs.frequency_bin, value,
                       /*squared=*/true, std::nullopt};
}

}  // namespace lagcoh
