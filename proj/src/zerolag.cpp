#include "lagcoh/zerolag.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "lagcoh/spectral.hpp"

namespace lagcoh {

FilteredSeries filter_single_frequency(const SegmentedSeries& series,
                                       std::size_t omega) {
  series.validate();
  const std::size_t nt = series.n_samples;
  if (omega >= nt) {
    std::ostringstream msg;
    msg << "filter bin " << omega << " out of range [0, " << nt << ")";
    throw DimensionError(msg.str());
  }
  const SpectralSet spectra = dft_segments(series);
  const std::size_t mirror = omega == 0 ? 0 : nt - omega;

  FilteredSeries out;
  out.frequency_bin = omega;
  out.data = SegmentedSeries::zeros(series.n_segments, nt, series.n_channels);
  out.data.sample_rate_hz = series.sample_rate_hz;

  double max_abs = 0.0;
  double max_imag = 0.0;
  for (std::size_t j = 0; j < series.n_segments; ++j) {
    for (std::size_t c = 0; c < series.n_channels; ++c) {
      const cdouble xw = spectra.at(j, omega, c);
      const cdouble xm = spectra.at(j, mirror, c);
      for (std::size_t t = 0; t < nt; ++t) {
        const double arg = 2.0 * std::numbers::pi *
                           static_cast<double>(omega * t % nt) /
                           static_cast<double>(nt);
        cdouble z = xw * cdouble{std::cos(arg), std::sin(arg)};
        if (mirror != omega) {
          z += xm * cdouble{std::cos(arg), -std::sin(arg)};
        }
        z /= static_cast<double>(nt);
        out.data.at(j, t, c) = z.real();
        max_abs = std::max(max_abs, std::abs(z.real()));
        max_imag = std::max(max_imag, std::abs(z.imag()));
      }
    }
  }
  // Judge the inverse-transform residue against the input scale: at a bin
  // where the signal has no power the output itself is numerically zero and
  // a residue relative to it would be meaningless.
  double max_input = 0.0;
  for (const double v : series.data) {
    max_input = std::max(max_input, std::abs(v));
  }
  const double scale = std::max(max_abs, max_input);
  if (scale > 0.0 && max_imag > 1e-8 * scale) {
    std::ostringstream msg;
    msg << "filter_single_frequency: imaginary residue " << max_imag
        << " exceeds 1e-8 relative to " << max_abs;
    throw NumericError(msg.str());
  }
  return out;
}

MatrixXd time_domain_covariance(const FilteredSeries& fs) {
  const SegmentedSeries& s = fs.data;
  const std::size_t r = s.n_channels;
  MatrixXd a = MatrixXd::Zero(r, r);
  for (std::size_t j = 0; j < s.n_segments; ++j) {
    for (std::size_t t = 0; t < s.n_samples; ++t) {
      for (std::size_t ci = 0; ci < r; ++ci) {
        for (std::size_t ck = ci; ck < r; ++ck) {
          a(ci, ck) += s.at(j, t, ci) * s.at(j, t, ck);
        }
      }
    }
  }
  a /= static_cast<double>(s.n_samples * s.n_segments);
  // fill lower triangle symmetrically
  for (std::size_t ci = 0; ci < r; ++ci) {
    for (std::size_t ck = 0; ck < ci; ++ck) a(ci, ck) = a(ck, ci);
  }
  return a;
}

ParsevalReport verify_parseval_identity(const SegmentedSeries& series,
                                        std::size_t omega, bool centered,
                                        bool allow_edge_bins) {
  series.validate();
  const std::size_t nt = series.n_samples;
  if (omega < 1 || omega >= nt) {
    throw DimensionError("verify_parseval_identity requires 1 <= w <= N_T - 1");
  }
  const bool edge = (nt % 2 == 0 && omega == nt / 2);
  if (edge && !allow_edge_bins) {
    throw ConfigError(
        "verify_parseval_identity: bin N_T/2 has no conjugate partner and a "
        "different constant; pass allow_edge_bins to inspect it anyway");
  }

  // Ensemble centering in the time domain centers every DFT bin, keeping the
  // two computation paths on the same pipeline.
  SegmentedSeries input = series;
  if (centered) {
    if (series.n_segments < 2) {
      throw DimensionError("centered Parseval check needs >= 2 segments");
    }
    for (std::size_t t = 0; t < nt; ++t) {
      for (std::size_t c = 0; c < series.n_channels; ++c) {
        double mean = 0.0;
        for (std::size_t j = 0; j < series.n_segments; ++j) {
          mean += series.at(j, t, c);
        }
        mean /= static_cast<double>(series.n_segments);
        for (std::size_t j = 0; j < series.n_segments; ++j) {
          input.at(j, t, c) -= mean;
        }
      }
    }
  }

  const SpectralSet spectra = dft_segments(input);
  const CrossSpectrum cs =
      cross_spectrum(spectra, spectra, omega, /*allow_uncentered=*/true);

  ParsevalReport report;
  report.frequency_bin = omega;
  report.lhs = cs.s_xx.real();
  const FilteredSeries fs = filter_single_frequency(input, omega);
  const double constant = static_cast<double>(nt) * static_cast<double>(nt) / 2.0;
  report.rhs = constant * time_domain_covariance(fs);

  const double scale = std::max(report.lhs.cwiseAbs().maxCoeff(),
                                report.rhs.cwiseAbs().maxCoeff());
  report.max_abs_rel_error =
      scale == 0.0
          ? 0.0
          : (report.lhs - report.rhs).cwiseAbs().maxCoeff() / scale;
  report.pass = report.max_abs_rel_error <= 1e-9;
  return report;
}

}  // namespace lagcoh
