#pragma once

#include "lagcoh/spectral.hpp"
#include "lagcoh/types.hpp"

namespace lagcoh {

// One measure to evaluate, with the normalization kind used by the
// phase-synchronization family (ignored by the others).
struct MeasureSpec {
  MeasureId id;
  NormalizationKind normalization = NormalizationKind::variable_wise;
};

// Dispatches to the named measure at one frequency bin.
MeasureResult evaluate_measure(const MeasureSpec& spec,
                               const SpectralSet& spectra_x,
                               const SpectralSet& spectra_y, std::size_t omega,
                               const MeasureOptions& opts = {});

namespace detail {
// Same dispatch over pre-extracted bin slices; used by the permutation test,
// which reshuffles X's segment axis many times at a fixed bin.
MeasureResult evaluate_measure_slices(const MeasureSpec& spec,
                                      const BinSlice& slice_x,
                                      const BinSlice& slice_y,
                                      std::size_t omega,
                                      const MeasureOptions& opts = {});
}  // namespace detail

}  // namespace lagcoh
