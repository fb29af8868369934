#include "lagcoh/evaluate.hpp"

#include <array>
#include <utility>

#include "lagcoh/coherence.hpp"
#include "lagcoh/lagged.hpp"
#include "lagcoh/phase_sync.hpp"

namespace lagcoh {

namespace {

constexpr std::array<std::pair<MeasureId, const char*>, 10> kMeasureNames{{
    {MeasureId::coherence_general, "coherence_general"},
    {MeasureId::coherence_classical, "coherence_classical"},
    {MeasureId::ps_general, "ps_general"},
    {MeasureId::ps_classical, "ps_classical"},
    {MeasureId::lagged_coherence_general, "lagged_coherence_general"},
    {MeasureId::lagged_coherence_univariate, "lagged_coherence_univariate"},
    {MeasureId::lagged_ps_general, "lagged_ps_general"},
    {MeasureId::lagged_ps_univariate, "lagged_ps_univariate"},
    {MeasureId::imag_coherency, "imag_coherency"},
    {MeasureId::pli, "pli"},
}};

// Single-bin SpectralSet wrapping one slice, for the set-based measures.
SpectralSet set_from_slice(const detail::BinSlice& slice) {
  SpectralSet s;
  s.n_segments = slice.n_segments;
  s.n_freqs = 1;
  s.n_channels = slice.n_channels;
  s.mean_removed = true;
  s.coeffs.resize(s.n_segments * s.n_channels);
  for (std::size_t j = 0; j < s.n_segments; ++j) {
    for (std::size_t c = 0; c < s.n_channels; ++c) {
      s.at(j, 0, c) = {slice.re[c][j], slice.im[c][j]};
    }
  }
  return s;
}

void require_univariate(const detail::BinSlice& x, const detail::BinSlice& y,
                        MeasureId id) {
  if (x.n_channels != 1 || y.n_channels != 1) {
    throw DimensionError(to_string(id) + " requires univariate series (p = q = 1)");
  }
}

}  // namespace

std::string to_string(MeasureId id) {
  for (const auto& [mid, name] : kMeasureNames) {
    if (mid == id) return name;
  }
  return "unknown";
}

MeasureId measure_id_from_string(const std::string& name) {
  for (const auto& [mid, mname] : kMeasureNames) {
    if (name == mname) return mid;
  }
  throw ConfigError("unknown measure id: " + name);
}

std::string to_string(NormalizationKind kind) {
  return kind == NormalizationKind::vector_wise ? "vector_wise" : "variable_wise";
}

NormalizationKind normalization_from_string(const std::string& name) {
  if (name == "vector_wise" || name == "vector") {
    return NormalizationKind::vector_wise;
  }
  if (name == "variable_wise" || name == "variable") {
    return NormalizationKind::variable_wise;
  }
  throw ConfigError("unknown normalization kind: " + name);
}

bool measure_uses_normalization(MeasureId id) {
  switch (id) {
    case MeasureId::ps_general:
    case MeasureId::ps_classical:
    case MeasureId::lagged_ps_general:
    case MeasureId::lagged_ps_univariate:
      return true;
    default:
      return false;
  }
}

bool measure_requires_univariate(MeasureId id) {
  switch (id) {
    case MeasureId::coherence_classical:
    case MeasureId::ps_classical:
    case MeasureId::lagged_coherence_univariate:
    case MeasureId::lagged_ps_univariate:
    case MeasureId::imag_coherency:
    case MeasureId::pli:
      return true;
    default:
      return false;
  }
}

namespace detail {

MeasureResult evaluate_measure_slices(const MeasureSpec& spec,
                                      const BinSlice& slice_x,
                                      const BinSlice& slice_y,
                                      std::size_t omega,
                                      const MeasureOptions& opts) {
  auto make_cross = [&]() {
    CrossSpectrum cs;
    cs.s_xx = covariance(slice_x);
    cs.s_yy = covariance(slice_y);
    cs.s_xy = covariance(slice_x, slice_y);
    cs.frequency_bin = omega;
    cs.n_segments_used = slice_x.n_segments;
    return cs;
  };

  MeasureResult result;
  switch (spec.id) {
    case MeasureId::coherence_general:
      result = general_coherence(make_cross(), opts);
      break;
    case MeasureId::coherence_classical:
      require_univariate(slice_x, slice_y, spec.id);
      result = classical_coherence(make_cross());
      break;
    case MeasureId::ps_general:
      result = general_phase_sync(set_from_slice(slice_x),
                                  set_from_slice(slice_y), 0,
                                  spec.normalization, opts);
      break;
    case MeasureId::ps_classical:
      require_univariate(slice_x, slice_y, spec.id);
      result = classical_phase_sync(set_from_slice(slice_x),
                                    set_from_slice(slice_y), 0, opts);
      break;
    case MeasureId::lagged_coherence_general:
      result = general_lagged_coherence(joint_covariance(make_cross()), opts);
      break;
    case MeasureId::lagged_coherence_univariate: {
      require_univariate(slice_x, slice_y, spec.id);
      const CrossSpectrum cs = make_cross();
      result = lagged_coherence_univariate_signed(
          cs.s_xx(0, 0).real(), cs.s_yy(0, 0).real(), std::conj(cs.s_xy(0, 0)),
          omega);
      break;
    }
    case MeasureId::lagged_ps_general:
      result = general_lagged_phase_sync(set_from_slice(slice_x),
                                         set_from_slice(slice_y), 0,
                                         spec.normalization, opts);
      break;
    case MeasureId::lagged_ps_univariate:
      require_univariate(slice_x, slice_y, spec.id);
      result = lagged_phase_sync_univariate(set_from_slice(slice_x),
                                            set_from_slice(slice_y), 0, opts);
      break;
    case MeasureId::imag_coherency: {
      require_univariate(slice_x, slice_y, spec.id);
      const CrossSpectrum cs = make_cross();
      result = imaginary_coherency(cs.s_xx(0, 0).real(), cs.s_yy(0, 0).real(),
                                   std::conj(cs.s_xy(0, 0)), omega);
      break;
    }
    case MeasureId::pli:
      require_univariate(slice_x, slice_y, spec.id);
      result = phase_lag_index(set_from_slice(slice_x), set_from_slice(slice_y), 0);
      break;
  }
  result.frequency_bin = omega;
  return result;
}

}  // namespace detail

MeasureResult evaluate_measure(const MeasureSpec& spec,
                               const SpectralSet& spectra_x,
                               const SpectralSet& spectra_y, std::size_t omega,
                               const MeasureOptions& opts) {
  const detail::BinSlice sx = detail::slice_bin(spectra_x, omega);
  const detail::BinSlice sy = detail::slice_bin(spectra_y, omega);
  return detail::evaluate_measure_slices(spec, sx, sy, omega, opts);
}

}  // namespace lagcoh
