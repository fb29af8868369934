#pragma once

#include "lagcoh/spectral.hpp"
#include "lagcoh/types.hpp"

namespace lagcoh {

// Amplitude-discarding normalization of every coefficient vector:
//   vector_wise   — scale each X_jw to unit Euclidean norm,
//   variable_wise — scale each component to unit modulus.
// Zero-norm vectors / zero-modulus components raise DegenerateInputError
// identifying (segment, bin[, channel]).
SpectralSet normalize(const SpectralSet& spectra, NormalizationKind kind);

// PS = |(1/N_R) sum_j x_jw/|x_jw| * conj(y_jw/|y_jw|)| for p = q = 1.
MeasureResult classical_phase_sync(const SpectralSet& spectra_x,
                                   const SpectralSet& spectra_y,
                                   std::size_t omega,
                                   const MeasureOptions& opts = {});

// General phase synchronization: the (unsquared) general coherence of the
// normalized coefficient sets.
MeasureResult general_phase_sync(const SpectralSet& spectra_x,
                                 const SpectralSet& spectra_y,
                                 std::size_t omega, NormalizationKind kind,
                                 const MeasureOptions& opts = {});

namespace detail {

// Normalizes one bin slice in place. With drop_degenerate set, segments with
// a zero norm/modulus are removed and their indices reported; otherwise they
// raise DegenerateInputError.
BinSlice normalize_slice(const BinSlice& slice, NormalizationKind kind,
                         std::size_t omega, bool drop_degenerate,
                         std::vector<std::size_t>* dropped = nullptr);

// Degenerate-segment indices shared by a pair of slices (union over both).
std::vector<std::size_t> degenerate_segments(const BinSlice& x,
                                             const BinSlice& y,
                                             NormalizationKind kind);

// Normalized slices for a pair at one bin, honoring the degenerate-segment
// policy; dropped segments are removed from BOTH series to keep the pairing.
std::pair<BinSlice, BinSlice> normalized_pair(const SpectralSet& spectra_x,
                                              const SpectralSet& spectra_y,
                                              std::size_t omega,
                                              NormalizationKind kind,
                                              const MeasureOptions& opts);

}  // namespace detail

}  // namespace lagcoh
