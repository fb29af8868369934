#include "lagcoh/phase_sync.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lagcoh/coherence.hpp"
#include "lagcoh/linalg.hpp"

namespace lagcoh {

namespace {

[[noreturn]] void throw_degenerate(std::size_t j, std::size_t w,
                                   std::optional<std::size_t> channel) {
  std::ostringstream msg;
  msg << "degenerate zero-modulus coefficient at segment " << j << ", bin " << w;
  if (channel) msg << ", channel " << *channel;
  throw DegenerateInputError(msg.str());
}

}  // namespace

SpectralSet normalize(const SpectralSet& spectra, NormalizationKind kind) {
  SpectralSet out = spectra;
  for (std::size_t j = 0; j < spectra.n_segments; ++j) {
    for (std::size_t w = 0; w < spectra.n_freqs; ++w) {
      if (kind == NormalizationKind::vector_wise) {
        double norm_sq = 0.0;
        for (std::size_t c = 0; c < spectra.n_channels; ++c) {
          norm_sq += std::norm(spectra.at(j, w, c));
        }
        if (norm_sq <= 0.0) throw_degenerate(j, w, std::nullopt);
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (std::size_t c = 0; c < spectra.n_channels; ++c) {
          out.at(j, w, c) *= inv;
        }
      } else {
        for (std::size_t c = 0; c < spectra.n_channels; ++c) {
          const double mod = std::abs(spectra.at(j, w, c));
          if (mod <= 0.0) throw_degenerate(j, w, c);
          out.at(j, w, c) /= mod;
        }
      }
    }
  }
  return out;
}

namespace detail {

std::vector<std::size_t> degenerate_segments(const BinSlice& x,
                                             const BinSlice& y,
                                             NormalizationKind kind) {
  std::vector<std::size_t> bad;
  auto slice_degenerate = [&](const BinSlice& s, std::size_t j) {
    if (kind == NormalizationKind::vector_wise) {
      double norm_sq = 0.0;
      for (std::size_t c = 0; c < s.n_channels; ++c) {
        norm_sq += s.re[c][j] * s.re[c][j] + s.im[c][j] * s.im[c][j];
      }
      return norm_sq <= 0.0;
    }
    for (std::size_t c = 0; c < s.n_channels; ++c) {
      if (s.re[c][j] == 0.0 && s.im[c][j] == 0.0) return true;
    }
    return false;
  };
  for (std::size_t j = 0; j < x.n_segments; ++j) {
    if (slice_degenerate(x, j) || slice_degenerate(y, j)) bad.push_back(j);
  }
  return bad;
}

BinSlice normalize_slice(const BinSlice& slice, NormalizationKind kind,
                         std::size_t omega, bool drop_degenerate,
                         std::vector<std::size_t>* dropped) {
  BinSlice out = slice;
  std::vector<std::size_t> keep;
  std::vector<std::size_t> bad;
  for (std::size_t j = 0; j < slice.n_segments; ++j) {
    bool degenerate = false;
    if (kind == NormalizationKind::vector_wise) {
      double norm_sq = 0.0;
      for (std::size_t c = 0; c < slice.n_channels; ++c) {
        norm_sq += slice.re[c][j] * slice.re[c][j] +
                   slice.im[c][j] * slice.im[c][j];
      }
      if (norm_sq <= 0.0) {
        degenerate = true;
      } else {
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (std::size_t c = 0; c < slice.n_channels; ++c) {
          out.re[c][j] *= inv;
          out.im[c][j] *= inv;
        }
      }
    } else {
      for (std::size_t c = 0; c < slice.n_channels; ++c) {
        const double mod = std::hypot(slice.re[c][j], slice.im[c][j]);
        if (mod <= 0.0) {
          degenerate = true;
          if (!drop_degenerate) throw_degenerate(j, omega, c);
          break;
        }
        out.re[c][j] /= mod;
        out.im[c][j] /= mod;
      }
    }
    if (degenerate) {
      if (!drop_degenerate) throw_degenerate(j, omega, std::nullopt);
      bad.push_back(j);
    } else {
      keep.push_back(j);
    }
  }
  if (dropped) *dropped = bad;
  if (!bad.empty()) return select_segments(out, keep);
  return out;
}

std::pair<BinSlice, BinSlice> normalized_pair(const SpectralSet& spectra_x,
                                              const SpectralSet& spectra_y,
                                              std::size_t omega,
                                              NormalizationKind kind,
                                              const MeasureOptions& opts) {
  if (spectra_x.n_segments != spectra_y.n_segments) {
    throw DimensionError("segment count mismatch between X and Y");
  }
  detail::BinSlice sx = detail::slice_bin(spectra_x, omega);
  detail::BinSlice sy = detail::slice_bin(spectra_y, omega);
  if (opts.drop_degenerate_segments) {
    const auto bad = detail::degenerate_segments(sx, sy, kind);
    if (!bad.empty()) {
      std::vector<std::size_t> keep;
      for (std::size_t j = 0; j < sx.n_segments; ++j) {
        if (!std::binary_search(bad.begin(), bad.end(), j)) keep.push_back(j);
      }
      if (keep.empty()) {
        throw DegenerateInputError(
            "all segments degenerate at requested bin; nothing to estimate");
      }
      sx = detail::select_segments(sx, keep);
      sy = detail::select_segments(sy, keep);
    }
  }
  return {normalize_slice(sx, kind, omega, false),
          normalize_slice(sy, kind, omega, false)};
}

}  // namespace detail

MeasureResult classical_phase_sync(const SpectralSet& spectra_x,
                                   const SpectralSet& spectra_y,
                                   std::size_t omega,
                                   const MeasureOptions& opts) {
  if (spectra_x.n_channels != 1 || spectra_y.n_channels != 1) {
    throw DimensionError("classical_phase_sync requires univariate series");
  }
  // For p = 1 the two normalization kinds coincide.
  const auto [nx, ny] = detail::normalized_pair(
      spectra_x, spectra_y, omega, NormalizationKind::variable_wise, opts);
  const cdouble s = detail::mean_cdot_conj(nx, 0, ny, 0);
  const double value =
      linalg::clamp_checked(std::abs(s), 0.0, 1.0, "classical_phase_sync");
  return MeasureResult{MeasureId::ps_classical, omega, value,
                       /*squared=*/false, std::nullopt};
}

MeasureResult general_phase_sync(const SpectralSet& spectra_x,
                                 const SpectralSet& spectra_y,
                                 std::size_t omega, NormalizationKind kind,
                                 const MeasureOptions& opts) {
  const auto [nx, ny] =
      detail::normalized_pair(spectra_x, spectra_y, omega, kind, opts);
  CrossSpectrum cs;
  cs.s_xx = detail::covariance(nx);
  cs.s_yy = detail::covariance(ny);
  cs.s_xy = detail::covariance(nx, ny);
  cs.frequency_bin = omega;
  cs.n_segments_used = nx.n_segments;
  const MeasureResult rho = general_coherence(cs, opts);
  return MeasureResult{MeasureId::ps_general, omega, std::sqrt(rho.value),
                       /*squared=*/false, kind};
}

}  // namespace lagcoh
