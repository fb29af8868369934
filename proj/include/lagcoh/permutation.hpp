#pragma once

#include "lagcoh/evaluate.hpp"
#include "lagcoh/types.hpp"

namespace lagcoh {

// Randomization test of zero connectivity: the observed measure is compared
// against null samples obtained by shuffling the segment index of X only
// (all channels jointly; Y pairing fixed). Permutations are drawn uniformly
// with replacement, identity allowed; the add-one p-value
//   p = (1 + #{null >= observed}) / (1 + N_perm)
// keeps p in [1/(1+N_perm), 1]. Deterministic given the seed.
PermutationReport permutation_test(const SpectralSet& spectra_x,
                                   const SpectralSet& spectra_y,
                                   std::size_t omega, const MeasureSpec& spec,
                                   std::size_t n_perm, std::uint64_t seed,
                                   const MeasureOptions& opts = {});

// Maps permutation_test over bins with independent substreams derived from
// the master seed.
std::vector<PermutationReport> multi_frequency_test(
    const SpectralSet& spectra_x, const SpectralSet& spectra_y,
    const std::vector<std::size_t>& bins, const MeasureSpec& spec,
    std::size_t n_perm, std::uint64_t seed, const MeasureOptions& opts = {});

namespace detail {
// Substream seed used for bin w by multi_frequency_test.
std::uint64_t derive_bin_seed(std::uint64_t master_seed, std::size_t omega);
}  // namespace detail

}  // namespace lagcoh
