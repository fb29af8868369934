#pragma once

#include "lagcoh/types.hpp"

namespace lagcoh {

// Real series whose per-segment spectra are supported only on {w, N_T - w}.
struct FilteredSeries {
  SegmentedSeries data;
  std::size_t frequency_bin = 0;
};

// Ideal DFT-domain single-bin filter: forward DFT, zero every bin except
// w and N_T - w, inverse DFT. The imaginary residue of the inverse transform
// must stay below 1e-8 relative or an internal error is raised.
FilteredSeries filter_single_frequency(const SegmentedSeries& series,
                                       std::size_t omega);

// A_w = (1/(N_T N_R)) sum_j sum_t z z^T over the filtered samples.
MatrixXd time_domain_covariance(const FilteredSeries& fs);

struct ParsevalReport {
  MatrixXd lhs;  // Re(S_ZZw) from the spectral path
  MatrixXd rhs;  // (N_T^2 / 2) * A_w from the filter path
  double max_abs_rel_error = 0.0;
  bool pass = false;
  std::size_t frequency_bin = 0;
};

// Checks Re(S_ZZw) = (N_T^2 / 2) A_w through the two independent paths.
// Runs uncentered by default (the time-domain covariance has no mean-removal
// step); `centered` applies ensemble centering to BOTH paths. Edge bins
// (w = 0 and N_T/2 for even N_T) carry a different constant and are rejected
// unless allow_edge_bins is set.
ParsevalReport verify_parseval_identity(const SegmentedSeries& series,
                                        std::size_t omega,
                                        bool centered = false,
                                        bool allow_edge_bins = false);

}  // namespace lagcoh
