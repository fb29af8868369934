#include <cmath>

#include <doctest.h>

#include "lagcoh/lagged.hpp"
#include "lagcoh/phase_sync.hpp"
#include "test_util.hpp"

using namespace lagcoh;
using testutil::make_rng;

namespace {

JointCovariance make_joint(const MatrixXcd& s_zz, std::size_t q, std::size_t p) {
  JointCovariance jc;
  jc.s_zz = s_zz;
  jc.q = q;
  jc.p = p;
  return jc;
}

// Correlated univariate pair with a lag-like phase relation plus noise.
std::pair<SpectralSet, SpectralSet> correlated_pair(std::mt19937_64& rng,
                                                    std::size_t nr,
                                                    cdouble coupling) {
  SpectralSet sx = testutil::random_spectra(rng, nr, 1, 1);
  SpectralSet sy = testutil::random_spectra(rng, nr, 1, 1);
  for (std::size_t j = 0; j < nr; ++j)
    sy.at(j, 0, 0) = coupling * sx.at(j, 0, 0) + 0.3 * sy.at(j, 0, 0);
  return {sx, sy};
}

}  // namespace

TEST_CASE("joint_covariance places the Y block first") {
  auto rng = make_rng(501);
  const SpectralSet sx = testutil::random_spectra(rng, 9, 1, 2);
  const SpectralSet sy = testutil::random_spectra(rng, 9, 1, 3);
  const CrossSpectrum cs = cross_spectrum(sx, sy, 0);
  const JointCovariance jc = joint_covariance(cs);
  CHECK(jc.q == 3);
  CHECK(jc.p == 2);
  REQUIRE(jc.s_zz.rows() == 5);
  CHECK((jc.s_zz.topLeftCorner(3, 3) - cs.s_yy).cwiseAbs().maxCoeff() == 0.0);
  CHECK((jc.s_zz.bottomRightCorner(2, 2) - cs.s_xx).cwiseAbs().maxCoeff() ==
        0.0);
  CHECK((jc.s_zz.bottomLeftCorner(2, 3) - cs.s_xy).cwiseAbs().maxCoeff() ==
        0.0);
  CHECK((jc.s_zz.topRightCorner(3, 2) - cs.s_yx()).cwiseAbs().maxCoeff() ==
        0.0);
  CHECK((jc.s_zz - jc.s_zz.adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("a real joint covariance gives exactly zero lagged coherence, even "
          "when it is singular") {
  auto rng = make_rng(502);
  MatrixXcd real_hpd = testutil::random_hpd(rng, 4);
  real_hpd = real_hpd.real().cast<cdouble>();
  CHECK(general_lagged_coherence(make_joint(real_hpd, 2, 2)).value == 0.0);

  // rank-deficient real matrix: the 0/0 determinant ratio is resolved by the
  // vanishing imaginary part, not by invertibility
  MatrixXcd singular_real = MatrixXcd::Ones(4, 4);
  CHECK(general_lagged_coherence(make_joint(singular_real, 2, 2)).value == 0.0);
}

TEST_CASE("univariate covariance with s_yx = 0.5i gives lagged coherence 0.25") {
  MatrixXcd s(2, 2);
  s << 1.0, cdouble(0.0, 0.5), cdouble(0.0, -0.5), 1.0;
  const MeasureResult r = general_lagged_coherence(make_joint(s, 1, 1));
  CHECK(r.measure_id == MeasureId::lagged_coherence_general);
  CHECK(r.squared);
  CHECK(r.value == doctest::Approx(0.25).epsilon(1e-14));

  const MeasureResult u =
      lagged_coherence_univariate_signed(1.0, 1.0, cdouble(0.0, 0.5));
  CHECK(u.value == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("a singular joint covariance with invertible real part gives "
          "lagged coherence 1") {
  MatrixXcd s(2, 2);
  s << 1.0, cdouble(0.0, 1.0), cdouble(0.0, -1.0), 1.0;  // rank 1
  CHECK(general_lagged_coherence(make_joint(s, 1, 1)).value == 1.0);
}

TEST_CASE("singular real part with non-negligible imaginary part is an error") {
  MatrixXcd s(2, 2);
  s << 1.0, cdouble(1.0, 0.5), cdouble(1.0, -0.5), 1.0;  // Re(s) rank 1
  CHECK_THROWS_AS(general_lagged_coherence(make_joint(s, 1, 1)),
                  SingularMatrixError);
}

TEST_CASE("determinant-ratio and closed-form univariate lagged coherence "
          "agree on random covariances") {
  auto rng = make_rng(503);
  for (int trial = 0; trial < 200; ++trial) {
    const MatrixXcd s = testutil::random_hpd(rng, 2);
    const double general = general_lagged_coherence(make_joint(s, 1, 1)).value;
    const MeasureResult signed_r = lagged_coherence_univariate_signed(
        s(1, 1).real(), s(0, 0).real(), s(0, 1));
    CHECK(signed_r.measure_id == MeasureId::lagged_coherence_univariate);
    CHECK(std::fabs(signed_r.value) <= 1.0);
    CHECK(general ==
          doctest::Approx(signed_r.value * signed_r.value).epsilon(1e-12));

    // third form: Im^2 / (s_xx s_yy - Re^2) evaluated literally
    const double sxx = s(1, 1).real(), syy = s(0, 0).real();
    const cdouble syx = s(0, 1);
    const double literal = syx.imag() * syx.imag() /
                           (sxx * syy - syx.real() * syx.real());
    CHECK(general == doctest::Approx(literal).epsilon(1e-12));
  }
}

TEST_CASE("lagged coherence lies in [0, 1] on random joint covariances") {
  auto rng = make_rng(504);
  for (int trial = 0; trial < 100; ++trial) {
    const int p = 1 + static_cast<int>(testutil::uniform(rng, 0.0, 3.0));
    const int q = 1 + static_cast<int>(testutil::uniform(rng, 0.0, 3.0));
    const MatrixXcd s = testutil::random_hpd(rng, p + q);
    const double v = general_lagged_coherence(
                         make_joint(s, static_cast<std::size_t>(q),
                                    static_cast<std::size_t>(p)))
                         .value;
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("univariate closed form rejects a non-positive denominator") {
  CHECK_THROWS_AS(lagged_coherence_univariate_signed(1.0, 1.0, cdouble(1.0, 0.0)),
                  DegenerateInputError);
}

TEST_CASE("lagged coherence is invariant under invertible REAL per-set "
          "transforms but not fixed under complex ones") {
  auto rng = make_rng(505);
  for (int trial = 0; trial < 50; ++trial) {
    const int p = 2, q = 2;
    MatrixXcd s = testutil::random_hpd(rng, p + q);
    const double base =
        general_lagged_coherence(make_joint(s, q, p)).value;

    const MatrixXd ty = testutil::random_real_invertible(rng, q);
    const MatrixXd tx = testutil::random_real_invertible(rng, p);
    MatrixXcd b = MatrixXcd::Zero(p + q, p + q);
    b.topLeftCorner(q, q) = ty.cast<cdouble>();
    b.bottomRightCorner(p, p) = tx.cast<cdouble>();
    const MatrixXcd st = b * s * b.adjoint();
    CHECK(general_lagged_coherence(make_joint(st, q, p)).value ==
          doctest::Approx(base).epsilon(1e-9));
  }
}

TEST_CASE("general and univariate lagged phase sync agree for p = q = 1") {
  auto rng = make_rng(506);
  for (int trial = 0; trial < 50; ++trial) {
    auto [sx, sy] = correlated_pair(rng, 16, cdouble(0.4, 0.8));
    const MeasureResult uni = lagged_phase_sync_univariate(sx, sy, 0);
    CHECK(uni.measure_id == MeasureId::lagged_ps_univariate);
    CHECK_FALSE(uni.squared);
    for (auto kind :
         {NormalizationKind::variable_wise, NormalizationKind::vector_wise}) {
      const MeasureResult gen = general_lagged_phase_sync(sx, sy, 0, kind);
      CHECK(gen.measure_id == MeasureId::lagged_ps_general);
      CHECK(gen.value == doctest::Approx(uni.value).epsilon(1e-12));
    }

    // third form: determinant ratio of the normalized joint covariance,
    // assembled by hand
    const SpectralSet nx = normalize(sx, NormalizationKind::variable_wise);
    const SpectralSet ny = normalize(sy, NormalizationKind::variable_wise);
    const JointCovariance jc = joint_covariance(cross_spectrum(nx, ny, 0));
    const double want = std::sqrt(general_lagged_coherence(jc).value);
    CHECK(uni.value == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("lagged phase sync univariate rejects |Re| = 1 of the normalized "
          "covariance") {
  // identical phases in every segment: normalized covariance is exactly 1
  SpectralSet sx, sy;
  sx.n_segments = sy.n_segments = 4;
  sx.n_freqs = sy.n_freqs = 1;
  sx.n_channels = sy.n_channels = 1;
  sx.mean_removed = sy.mean_removed = true;
  sx.coeffs.assign(4, cdouble(2.0, 0.0));
  sy.coeffs.assign(4, cdouble(3.0, 0.0));
  CHECK_THROWS_AS(lagged_phase_sync_univariate(sx, sy, 0),
                  DegenerateInputError);
}

TEST_CASE("imaginary coherency matches its definition and is bounded by the "
          "signed lagged coherence in magnitude") {
  CHECK(imaginary_coherency(1.0, 1.0, cdouble(0.3, 0.5)).value ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(imaginary_coherency(4.0, 1.0, cdouble(0.0, 1.0)).value ==
        doctest::Approx(0.5).epsilon(1e-14));

  auto rng = make_rng(507);
  for (int trial = 0; trial < 100; ++trial) {
    const MatrixXcd s = testutil::random_hpd(rng, 2);
    const double sxx = s(1, 1).real(), syy = s(0, 0).real();
    const cdouble syx = s(0, 1);
    const double ic = imaginary_coherency(sxx, syy, syx).value;
    const double lc = lagged_coherence_univariate_signed(sxx, syy, syx).value;
    CHECK(std::fabs(ic) <= std::fabs(lc) + 1e-14);
    CHECK(std::fabs(ic) <= 1.0);
  }
}

TEST_CASE("phase lag index counts imaginary-part signs with sign(0) = 0") {
  SpectralSet sx, sy;
  sx.n_segments = sy.n_segments = 4;
  sx.n_freqs = sy.n_freqs = 1;
  sx.n_channels = sy.n_channels = 1;
  sx.mean_removed = sy.mean_removed = true;
  sx.coeffs.assign(4, cdouble(1.0, 0.0));
  // Im(y conj(x)) signs: +, +, -, +  ->  |(1 + 1 - 1 + 1) / 4| = 0.5
  sy.coeffs = {cdouble(1.0, 1.0), cdouble(2.0, 3.0), cdouble(1.0, -1.0),
               cdouble(0.0, 1.0)};
  MeasureResult r = phase_lag_index(sx, sy, 0);
  CHECK(r.measure_id == MeasureId::pli);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-15));

  // purely real relation: every sign is 0, PLI is exactly 0
  SpectralSet real_y = sx;
  for (auto& v : real_y.coeffs) v *= 2.0;
  CHECK(phase_lag_index(sx, real_y, 0).value == 0.0);

  // consistent lag direction: every sign is +1, PLI is exactly 1
  SpectralSet pos_y = sx;
  for (auto& v : pos_y.coeffs) v *= cdouble(1.0, 0.5);
  CHECK(phase_lag_index(sx, pos_y, 0).value == 1.0);
}
