#include <cmath>

#include <doctest.h>

#include "lagcoh/linalg.hpp"
#include "test_util.hpp"

using namespace lagcoh;
using testutil::make_rng;
using testutil::random_hpd;

TEST_CASE("logdet_hermitian matches eigenvalue oracle on random HPD matrices") {
  auto rng = make_rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(testutil::uniform(rng, 0.0, 6.0));
    const MatrixXcd a = random_hpd(rng, n);
    const auto got = linalg::logdet_hermitian(a);
    REQUIRE(got.has_value());
    const double want = testutil::logdet_eigen_oracle(a);
    CHECK(*got == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("logdet of identity and of a diagonal matrix") {
  CHECK(*linalg::logdet_hermitian(MatrixXcd::Identity(4, 4)) ==
        doctest::Approx(0.0).epsilon(1e-15));

  MatrixXcd d = MatrixXcd::Zero(3, 3);
  d(0, 0) = 2.0;
  d(1, 1) = 3.0;
  d(2, 2) = 5.0;
  CHECK(*linalg::logdet_hermitian(d) ==
        doctest::Approx(std::log(30.0)).epsilon(1e-14));
}

TEST_CASE("logdet_hermitian reports failure on singular and indefinite input") {
  MatrixXcd s = MatrixXcd::Ones(2, 2);  // rank 1
  CHECK_FALSE(linalg::logdet_hermitian(s).has_value());

  MatrixXcd ind = MatrixXcd::Identity(2, 2);
  ind(1, 1) = -1.0;
  CHECK_FALSE(linalg::logdet_hermitian(ind).has_value());
}

TEST_CASE("logdet stays finite where naive determinant over/underflows") {
  const int n = 400;
  MatrixXcd d = 1e-3 * MatrixXcd::Identity(n, n);
  const auto got = linalg::logdet_hermitian(d);  // det = 1e-1200, underflows
  REQUIRE(got.has_value());
  CHECK(*got == doctest::Approx(n * std::log(1e-3)).epsilon(1e-12));
}

TEST_CASE("logdet_symmetric matches LU oracle") {
  auto rng = make_rng(102);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(testutil::uniform(rng, 0.0, 5.0));
    MatrixXd w(n, 2 * n + 2);
    for (int i = 0; i < w.rows(); ++i)
      for (int j = 0; j < w.cols(); ++j) w(i, j) = testutil::gauss(rng);
    MatrixXd a = w * w.transpose() / w.cols() + 0.1 * MatrixXd::Identity(n, n);
    const auto got = linalg::logdet_symmetric(a);
    REQUIRE(got.has_value());
    const double want = std::log(a.fullPivLu().determinant());
    CHECK(*got == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("rcond of identity is 1 and of a rank-deficient matrix is 0") {
  CHECK(linalg::rcond_hermitian(MatrixXcd::Identity(3, 3)) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(linalg::rcond_hermitian(MatrixXcd::Ones(3, 3)) <= 1e-15);
  MatrixXd ones = MatrixXd::Ones(3, 3);
  CHECK(linalg::rcond_symmetric(ones) <= 1e-15);
}

TEST_CASE("require_well_conditioned throws with the rcond estimate attached") {
  MatrixXcd d = MatrixXcd::Identity(2, 2);
  d(1, 1) = 1e-15;
  try {
    linalg::require_well_conditioned(d, "unit-test");
    FAIL("expected SingularMatrixError");
  } catch (const SingularMatrixError& e) {
    CHECK(e.rcond_estimate < linalg::kRcondThreshold);
    CHECK(std::string(e.what()).find("unit-test") != std::string::npos);
  }
  CHECK_NOTHROW(
      linalg::require_well_conditioned(MatrixXcd::Identity(2, 2), "ok"));
}

TEST_CASE("hermitian_solve matches Eigen solve on random systems") {
  auto rng = make_rng(103);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(testutil::uniform(rng, 0.0, 5.0));
    const int m = 1 + static_cast<int>(testutil::uniform(rng, 0.0, 3.0));
    const MatrixXcd a = random_hpd(rng, n);
    MatrixXcd b(n, m);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) b(i, j) = testutil::cgauss(rng);
    const MatrixXcd x = linalg::hermitian_solve(a, b, "test");
    const MatrixXcd want = a.ldlt().solve(b);
    CHECK((x - want).cwiseAbs().maxCoeff() <= 1e-9 * b.cwiseAbs().maxCoeff());
    CHECK((a * x - b).cwiseAbs().maxCoeff() <=
          1e-9 * std::max(1.0, b.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("hermitian_solve rejects singular systems") {
  MatrixXcd a = MatrixXcd::Ones(2, 2);
  MatrixXcd b = MatrixXcd::Identity(2, 2);
  CHECK_THROWS_AS(linalg::hermitian_solve(a, b, "test"), SingularMatrixError);
}

TEST_CASE("apply_ridge shifts the diagonal by ridge * mean(diag)") {
  MatrixXcd a = MatrixXcd::Zero(2, 2);
  a(0, 0) = 2.0;
  a(1, 1) = 4.0;
  a(0, 1) = cdouble(0.5, 0.25);
  a(1, 0) = std::conj(a(0, 1));
  const MatrixXcd r = linalg::apply_ridge(a, 0.1);
  CHECK(r(0, 0).real() == doctest::Approx(2.0 + 0.1 * 3.0).epsilon(1e-15));
  CHECK(r(1, 1).real() == doctest::Approx(4.0 + 0.1 * 3.0).epsilon(1e-15));
  CHECK(r(0, 1) == a(0, 1));
}

TEST_CASE("clamp_checked clamps small overshoot and rejects large overshoot") {
  CHECK(linalg::clamp_checked(0.5, 0.0, 1.0, "t") == 0.5);
  CHECK(linalg::clamp_checked(1.0 + 1e-12, 0.0, 1.0, "t") == 1.0);
  CHECK(linalg::clamp_checked(-1e-12, 0.0, 1.0, "t") == 0.0);
  CHECK_THROWS_AS(linalg::clamp_checked(1.1, 0.0, 1.0, "t"), NumericError);
  CHECK_THROWS_AS(linalg::clamp_checked(-0.1, 0.0, 1.0, "t"), NumericError);
}
