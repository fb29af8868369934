#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lagcoh {

using cdouble = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// ---------------------------------------------------------------------------
// Errors

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionError : Error {
  using Error::Error;
};

// Reciprocal condition estimate fell below the singularity threshold.
struct SingularMatrixError : Error {
  double rcond_estimate;
  SingularMatrixError(const std::string& what, double rcond)
      : Error(what), rcond_estimate(rcond) {}
};

// Zero-modulus coefficient (or zero-norm vector) hit during normalization.
struct DegenerateInputError : Error {
  using Error::Error;
};

// A computed value fell outside its mathematically guaranteed range by more
// than the clamp tolerance; indicates a logic or conditioning failure.
struct NumericError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Time-domain data

// Real multichannel recording cut into equal-length segments.
// Storage is row-major (segment, time, channel).
struct SegmentedSeries {
  std::vector<double> data;
  std::size_t n_segments = 0;
  std::size_t n_samples = 0;
  std::size_t n_channels = 0;
  std::optional<double> sample_rate_hz;  // metadata only

  double& at(std::size_t j, std::size_t t, std::size_t c) {
    return data[(j * n_samples + t) * n_channels + c];
  }
  double at(std::size_t j, std::size_t t, std::size_t c) const {
    return data[(j * n_samples + t) * n_channels + c];
  }

  static SegmentedSeries zeros(std::size_t n_segments, std::size_t n_samples,
                               std::size_t n_channels) {
    SegmentedSeries s;
    s.n_segments = n_segments;
    s.n_samples = n_samples;
    s.n_channels = n_channels;
    s.data.assign(n_segments * n_samples * n_channels, 0.0);
    return s;
  }

  // Throws DimensionError / NumericError on shape or finiteness violations.
  void validate() const;
};

// ---------------------------------------------------------------------------
// Frequency-domain data

// Per-segment DFT coefficients; all n_samples bins are retained.
// Storage is row-major (segment, frequency, channel).
struct SpectralSet {
  std::vector<cdouble> coeffs;
  std::size_t n_segments = 0;
  std::size_t n_freqs = 0;
  std::size_t n_channels = 0;
  bool mean_removed = false;

  cdouble& at(std::size_t j, std::size_t w, std::size_t c) {
    return coeffs[(j * n_freqs + w) * n_channels + c];
  }
  cdouble at(std::size_t j, std::size_t w, std::size_t c) const {
    return coeffs[(j * n_freqs + w) * n_channels + c];
  }
};

// Hermitian covariance blocks at one frequency bin.
// s_xy(a, b) = (1/N_R) sum_j x_a conj(y_b); s_yx is implicitly s_xy^*.
struct CrossSpectrum {
  MatrixXcd s_xx;  // p x p, Hermitian
  MatrixXcd s_yy;  // q x q, Hermitian
  MatrixXcd s_xy;  // p x q
  std::size_t frequency_bin = 0;
  std::size_t n_segments_used = 0;

  MatrixXcd s_yx() const { return s_xy.adjoint(); }
  std::size_t p() const { return static_cast<std::size_t>(s_xx.rows()); }
  std::size_t q() const { return static_cast<std::size_t>(s_yy.rows()); }
};

// ---------------------------------------------------------------------------
// Measures

enum class MeasureId {
  coherence_general,
  coherence_classical,
  ps_general,
  ps_classical,
  lagged_coherence_general,
  lagged_coherence_univariate,
  lagged_ps_general,
  lagged_ps_univariate,
  imag_coherency,
  pli,
};

enum class NormalizationKind { vector_wise, variable_wise };

std::string to_string(MeasureId id);
MeasureId measure_id_from_string(const std::string& name);
std::string to_string(NormalizationKind kind);
NormalizationKind normalization_from_string(const std::string& name);

// True for measures whose definition involves amplitude normalization.
bool measure_uses_normalization(MeasureId id);
// True for measures defined only for univariate (p = q = 1) inputs.
bool measure_requires_univariate(MeasureId id);

struct MeasureResult {
  MeasureId measure_id;
  std::size_t frequency_bin = 0;
  double value = 0.0;
  bool squared = false;
  std::optional<NormalizationKind> normalization;
};

// Options threaded through the measure evaluators.
struct MeasureOptions {
  // When set, adds ridge * mean(diag) * I to covariance blocks before
  // inversion/determinants. Off by default; see SingularMatrixError.
  std::optional<double> ridge;
  // When true, segments with zero-modulus coefficients at the requested bin
  // are dropped from normalized estimates instead of raising.
  bool drop_degenerate_segments = false;
};

// ---------------------------------------------------------------------------
// Permutation testing

struct PermutationReport {
  MeasureId measure_id;
  std::size_t frequency_bin = 0;
  double observed = 0.0;
  std::vector<double> null_samples;
  double p_value = 1.0;
  std::size_t n_permutations = 0;
  std::uint64_t seed = 0;
};

}  // namespace lagcoh
