#include "lagcoh/permutation.hpp"

#include <numeric>
#include <sstream>

#include "lagcoh/simulate.hpp"
#include "lagcoh/spectral.hpp"

namespace lagcoh {

namespace detail {

std::uint64_t derive_bin_seed(std::uint64_t master_seed, std::size_t omega) {
  Rng rng(master_seed ^ 0x6c62272e07bb0142ULL);
  return rng.fork(static_cast<std::uint64_t>(omega) + 1).next_u64();
}

namespace {

// Fisher-Yates with an unbiased bounded draw, independent of std::shuffle
// internals so permutation sequences are stable for a given seed.
void shuffle_indices(std::vector<std::size_t>& idx, Rng& rng) {
  for (std::size_t i = idx.size(); i > 1; --i) {
    const std::uint64_t bound = i;
    std::uint64_t v;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    do {
      v = rng.next_u64();
    } while (v >= limit);
    std::swap(idx[i - 1], idx[v % bound]);
  }
}

}  // namespace
}  // namespace detail

PermutationReport permutation_test(const SpectralSet& spectra_x,
                                   const SpectralSet& spectra_y,
                                   std::size_t omega, const MeasureSpec& spec,
                                   std::size_t n_perm, std::uint64_t seed,
                                   const MeasureOptions& opts) {
  if (n_perm < 19) {
    throw ConfigError(
        "permutation_test needs n_perm >= 19 for p <= 0.05 resolution");
  }
  if (spectra_x.n_segments != spectra_y.n_segments) {
    throw DimensionError("segment count mismatch between X and Y");
  }

  const detail::BinSlice sx = detail::slice_bin(spectra_x, omega);
  const detail::BinSlice sy = detail::slice_bin(spectra_y, omega);

  PermutationReport report;
  report.measure_id = spec.id;
  report.frequency_bin = omega;
  report.n_permutations = n_perm;
  report.seed = seed;
  report.observed =
      detail::evaluate_measure_slices(spec, sx, sy, omega, opts).value;

  detail::Rng rng(seed);
  std::vector<std::size_t> order(sx.n_segments);
  report.null_samples.reserve(n_perm);
  std::size_t n_ge = 0;
  for (std::size_t k = 0; k < n_perm; ++k) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    detail::shuffle_indices(order, rng);
    const detail::BinSlice permuted = detail::permute_segments(sx, order);
    double value;
    try {
      value = detail::evaluate_measure_slices(spec, permuted, sy, omega, opts)
                  .value;
    } catch (const Error& e) {
      std::ostringstream msg;
      msg << "measure evaluation failed on permutation " << k << ": "
          << e.what();
      throw NumericError(msg.str());
    }
    report.null_samples.push_back(value);
    if (value >= report.observed) ++n_ge;
  }
  report.p_value = static_cast<double>(1 + n_ge) /
                   static_cast<double>(1 + n_perm);
  return report;
}

std::vector<PermutationReport> multi_frequency_test(
    const SpectralSet& spectra_x, const SpectralSet& spectra_y,
    const std::vector<std::size_t>& bins, const MeasureSpec& spec,
    std::size_t n_perm, std::uint64_t seed, const MeasureOptions& opts) {
  std::vector<PermutationReport> reports;
  reports.reserve(bins.size());
  for (const std::size_t w : bins) {
    reports.push_back(permutation_test(spectra_x, spectra_y, w, spec, n_perm,
                                       detail::derive_bin_seed(seed, w), opts));
  }
  return reports;
}

}  // namespace lagcoh
