#include "lagcoh/spectral.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "lagcoh/kernels.hpp"

namespace lagcoh {

void SegmentedSeries::validate() const {
  if (n_samples < 2 || n_segments < 1 || n_channels < 1) {
    std::ostringstream msg;
    msg << "SegmentedSeries requires N_T >= 2, N_R >= 1, p >= 1; got N_T="
        << n_samples << " N_R=" << n_segments << " p=" << n_channels;
    throw DimensionError(msg.str());
  }
  if (data.size() != n_segments * n_samples * n_channels) {
    throw DimensionError("SegmentedSeries data length does not match shape");
  }
  for (std::size_t j = 0; j < n_segments; ++j) {
    for (std::size_t t = 0; t < n_samples; ++t) {
      for (std::size_t c = 0; c < n_channels; ++c) {
        if (!std::isfinite(at(j, t, c))) {
          std::ostringstream msg;
          msg << "non-finite sample at segment " << j << ", t " << t
              << ", channel " << c;
          throw NumericError(msg.str());
        }
      }
    }
  }
}

SpectralSet dft_segments(const SegmentedSeries& series) {
  series.validate();
  const std::size_t nt = series.n_samples;
  const std::size_t nr = series.n_segments;
  const std::size_t nc = series.n_channels;

  // Basis tables per bin: cos(2*pi*w*t/N_T) and sin(2*pi*w*t/N_T).
  std::vector<std::vector<double>> cos_tab(nt, std::vector<double>(nt));
  std::vector<std::vector<double>> sin_tab(nt, std::vector<double>(nt));
  for (std::size_t w = 0; w < nt; ++w) {
    for (std::size_t t = 0; t < nt; ++t) {
      const double arg =
          2.0 * std::numbers::pi * static_cast<double>(w * t % nt) /
          static_cast<double>(nt);
      cos_tab[w][t] = std::cos(arg);
      sin_tab[w][t] = std::sin(arg);
    }
  }

  SpectralSet out;
  out.n_segments = nr;
  out.n_freqs = nt;
  out.n_channels = nc;
  out.coeffs.resize(nr * nt * nc);

  std::vector<double> samples(nt);
  for (std::size_t j = 0; j < nr; ++j) {
    for (std::size_t c = 0; c < nc; ++c) {
      for (std::size_t t = 0; t < nt; ++t) samples[t] = series.at(j, t, c);
      for (std::size_t w = 0; w < nt; ++w) {
        const double re = kernels::dot(samples.data(), cos_tab[w].data(), nt);
        const double im = -kernels::dot(samples.data(), sin_tab[w].data(), nt);
        out.at(j, w, c) = {re, im};
      }
    }
  }
  return out;
}

SpectralSet remove_ensemble_mean(const SpectralSet& spectra) {
  if (spectra.n_segments < 2) {
    throw DimensionError(
        "remove_ensemble_mean requires at least 2 segments (mean removal "
        "would zero a single segment)");
  }
  SpectralSet out = spectra;
  const double inv_nr = 1.0 / static_cast<double>(spectra.n_segments);
  for (std::size_t w = 0; w < spectra.n_freqs; ++w) {
    for (std::size_t c = 0; c < spectra.n_channels; ++c) {
      cdouble mean = 0.0;
      for (std::size_t j = 0; j < spectra.n_segments; ++j) {
        mean += spectra.at(j, w, c);
      }
      mean *= inv_nr;
      for (std::size_t j = 0; j < spectra.n_segments; ++j) {
        out.at(j, w, c) -= mean;
      }
    }
  }
  out.mean_removed = true;
  return out;
}

namespace detail {

BinSlice slice_bin(const SpectralSet& spectra, std::size_t omega) {
  if (omega >= spectra.n_freqs) {
    std::ostringstream msg;
    msg << "frequency bin " << omega << " out of range [0, " << spectra.n_freqs
        << ")";
    throw DimensionError(msg.str());
  }
  BinSlice s;
  s.n_segments = spectra.n_segments;
  s.n_channels = spectra.n_channels;
  s.re.assign(s.n_channels, std::vector<double>(s.n_segments));
  s.im.assign(s.n_channels, std::vector<double>(s.n_segments));
  for (std::size_t c = 0; c < s.n_channels; ++c) {
    for (std::size_t j = 0; j < s.n_segments; ++j) {
      const cdouble z = spectra.at(j, omega, c);
      s.re[c][j] = z.real();
      s.im[c][j] = z.imag();
    }
  }
  return s;
}

BinSlice permute_segments(const BinSlice& slice,
                          const std::vector<std::size_t>& order) {
  BinSlice out = slice;
  for (std::size_t c = 0; c < slice.n_channels; ++c) {
    for (std::size_t j = 0; j < slice.n_segments; ++j) {
      out.re[c][j] = slice.re[c][order[j]];
      out.im[c][j] = slice.im[c][order[j]];
    }
  }
  return out;
}

BinSlice select_segments(const BinSlice& slice,
                         const std::vector<std::size_t>& keep) {
  BinSlice out;
  out.n_segments = keep.size();
  out.n_channels = slice.n_channels;
  out.re.assign(out.n_channels, std::vector<double>(out.n_segments));
  out.im.assign(out.n_channels, std::vector<double>(out.n_segments));
  for (std::size_t c = 0; c < slice.n_channels; ++c) {
    for (std::size_t k = 0; k < keep.size(); ++k) {
      out.re[c][k] = slice.re[c][keep[k]];
      out.im[c][k] = slice.im[c][keep[k]];
    }
  }
  return out;
}

cdouble mean_cdot_conj(const BinSlice& a, std::size_t ca, const BinSlice& b,
                       std::size_t cb) {
  const std::size_t n = a.n_segments;
  const cdouble s = kernels::cdot_conj(a.re[ca].data(), a.im[ca].data(),
                                       b.re[cb].data(), b.im[cb].data(), n);
  return s / static_cast<double>(n);
}

MatrixXcd covariance(const BinSlice& a) {
  const std::size_t p = a.n_channels;
  MatrixXcd s(p, p);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t k = i; k < p; ++k) {
      const cdouble v = mean_cdot_conj(a, i, a, k);
      s(i, k) = v;
      s(k, i) = std::conj(v);
    }
    s(i, i) = cdouble(s(i, i).real(), 0.0);
  }
  return s;
}

MatrixXcd covariance(const BinSlice& a, const BinSlice& b) {
  MatrixXcd s(a.n_channels, b.n_channels);
  for (std::size_t i = 0; i < a.n_channels; ++i) {
    for (std::size_t k = 0; k < b.n_channels; ++k) {
      s(i, k) = mean_cdot_conj(a, i, b, k);
    }
  }
  return s;
}

}  // namespace detail

CrossSpectrum cross_spectrum(const SpectralSet& spectra_x,
                             const SpectralSet& spectra_y, std::size_t omega,
                             bool allow_uncentered) {
  if (spectra_x.n_segments != spectra_y.n_segments) {
    std::ostringstream msg;
    msg << "segment count mismatch: X has " << spectra_x.n_segments
        << ", Y has " << spectra_y.n_segments;
    throw DimensionError(msg.str());
  }
  if (!allow_uncentered && (!spectra_x.mean_removed || !spectra_y.mean_removed)) {
    throw ConfigError(
        "cross_spectrum requires mean-removed spectra (or an explicit "
        "uncentered waiver)");
  }
  const detail::BinSlice sx = detail::slice_bin(spectra_x, omega);
  const detail::BinSlice sy = detail::slice_bin(spectra_y, omega);

  CrossSpectrum cs;
  cs.s_xx = detail::covariance(sx);
  cs.s_yy = detail::covariance(sy);
  cs.s_xy = detail::covariance(sx, sy);
  cs.frequency_bin = omega;
  cs.n_segments_used = spectra_x.n_segments;
  return cs;
}

}  // namespace lagcoh
