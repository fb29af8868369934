#pragma once

#include <complex>
#include <random>

#include <Eigen/Dense>

#include "lagcoh/types.hpp"

namespace testutil {

using lagcoh::cdouble;
using lagcoh::MatrixXcd;
using lagcoh::MatrixXd;
using lagcoh::SegmentedSeries;
using lagcoh::SpectralSet;

inline std::mt19937_64 make_rng(std::uint64_t seed) {
  return std::mt19937_64{seed};
}

inline double uniform(std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double gauss(std::mt19937_64& rng) {
  return std::normal_distribution<double>(0.0, 1.0)(rng);
}

inline cdouble cgauss(std::mt19937_64& rng) {
  return {gauss(rng), gauss(rng)};
}

// Hermitian positive definite matrix W W^* / k + ridge * I, well conditioned.
inline MatrixXcd random_hpd(std::mt19937_64& rng, int n, double ridge = 0.1) {
  MatrixXcd w(n, 2 * n + 2);
  for (int i = 0; i < w.rows(); ++i) {
    for (int j = 0; j < w.cols(); ++j) w(i, j) = cgauss(rng);
  }
  MatrixXcd s = w * w.adjoint() / static_cast<double>(w.cols());
  s += ridge * MatrixXcd::Identity(n, n);
  return 0.5 * (s + s.adjoint()).eval();
}

// Random complex matrix with singular values bounded away from 0.
inline MatrixXcd random_invertible(std::mt19937_64& rng, int n) {
  while (true) {
    MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a(i, j) = cgauss(rng);
    }
    Eigen::JacobiSVD<MatrixXcd> svd(a);
    const auto& sv = svd.singularValues();
    if (sv(n - 1) > 0.2 * sv(0)) return a;
  }
}

inline MatrixXd random_real_invertible(std::mt19937_64& rng, int n) {
  while (true) {
    MatrixXd a(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
    }
    Eigen::JacobiSVD<MatrixXd> svd(a);
    const auto& sv = svd.singularValues();
    if (sv(n - 1) > 0.2 * sv(0)) return a;
  }
}

// Random real segmented series with N(0,1) samples.
inline SegmentedSeries random_series(std::mt19937_64& rng, std::size_t n_seg,
                                     std::size_t n_samp, std::size_t n_chan) {
  SegmentedSeries s = SegmentedSeries::zeros(n_seg, n_samp, n_chan);
  for (auto& v : s.data) v = gauss(rng);
  return s;
}

// Single-bin spectral set with arbitrary complex coefficients per segment.
inline SpectralSet random_spectra(std::mt19937_64& rng, std::size_t n_seg,
                                  std::size_t n_freqs, std::size_t n_chan,
                                  bool mean_removed = true) {
  SpectralSet s;
  s.n_segments = n_seg;
  s.n_freqs = n_freqs;
  s.n_channels = n_chan;
  s.mean_removed = mean_removed;
  s.coeffs.resize(n_seg * n_freqs * n_chan);
  for (auto& v : s.coeffs) v = cgauss(rng);
  return s;
}

// logdet through eigenvalues; independent of the Cholesky path under test.
inline double logdet_eigen_oracle(const MatrixXcd& a) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().array().log().sum();
}

}  // namespace testutil
