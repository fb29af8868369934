#pragma once

#include "lagcoh/types.hpp"

namespace lagcoh {

// Unnormalized forward DFT of every segment and channel; all n_samples bins
// are retained. Throws NumericError on non-finite input, with the offending
// segment/channel identified.
SpectralSet dft_segments(const SegmentedSeries& series);

// Subtracts, per frequency and channel, the across-segment mean of the DFT
// coefficients. Requires n_segments >= 2.
SpectralSet remove_ensemble_mean(const SpectralSet& spectra);

// Hermitian covariance blocks at one frequency bin:
//   s_xx = (1/N_R) sum_j X_jw X_jw^*, s_yy and s_xy analogous.
// Both inputs must be mean-removed unless allow_uncentered is set.
CrossSpectrum cross_spectrum(const SpectralSet& spectra_x,
                             const SpectralSet& spectra_y, std::size_t omega,
                             bool allow_uncentered = false);

namespace detail {

// Coefficients of one frequency bin in split-complex, segment-contiguous
// layout: re[c] and im[c] are length-n_segments arrays for channel c. This is
// the layout the covariance kernels consume; measures that permute or drop
// segments operate on slices.
struct BinSlice {
  std::vector<std::vector<double>> re;  // [channel][segment]
  std::vector<std::vector<double>> im;
  std::size_t n_segments = 0;
  std::size_t n_channels = 0;
};

BinSlice slice_bin(const SpectralSet& spectra, std::size_t omega);
BinSlice permute_segments(const BinSlice& slice,
                          const std::vector<std::size_t>& order);
BinSlice select_segments(const BinSlice& slice,
                         const std::vector<std::size_t>& keep);

// (1/n) sum_j a_j conj(b_j) over two channels of two slices.
cdouble mean_cdot_conj(const BinSlice& a, std::size_t ca, const BinSlice& b,
                       std::size_t cb);

// Hermitian covariance block of one slice (diagonal forced real by
// construction of the kernel).
MatrixXcd covariance(const BinSlice& a);
// Cross block s_ab(i, k) = (1/n) sum_j a_i conj(b_k).
MatrixXcd covariance(const BinSlice& a, const BinSlice& b);

}  // namespace detail

}  // namespace lagcoh
