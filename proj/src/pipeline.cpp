#include "lagcoh/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "lagcoh/permutation.hpp"
#include "lagcoh/spectral.hpp"

namespace lagcoh {

using nlohmann::json;

namespace {

SegmentedSeries subtract_segment_means(const SegmentedSeries& series) {
  SegmentedSeries out = series;
  for (std::size_t j = 0; j < series.n_segments; ++j) {
    for (std::size_t c = 0; c < series.n_channels; ++c) {
      double mean = 0.0;
      for (std::size_t t = 0; t < series.n_samples; ++t) {
        mean += series.at(j, t, c);
      }
      mean /= static_cast<double>(series.n_samples);
      for (std::size_t t = 0; t < series.n_samples; ++t) {
        out.at(j, t, c) -= mean;
      }
    }
  }
  return out;
}

SpectralSet prepare_one(const RunConfig& config, const SegmentedSeries& series) {
  const bool per_segment = config.centering == Centering::per_segment ||
                           config.centering == Centering::both;
  const bool ensemble = config.centering == Centering::ensemble ||
                        config.centering == Centering::both;
  SpectralSet spectra =
      dft_segments(per_segment ? subtract_segment_means(series) : series);
  if (ensemble) spectra = remove_ensemble_mean(spectra);
  return spectra;
}

// Derives an independent permutation master seed per measure so reports do
// not share permutation sequences across measures.
std::uint64_t measure_seed(std::uint64_t base, MeasureId id) {
  return base + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(id) + 1);
}

}  // namespace

std::pair<SpectralSet, SpectralSet> prepare_spectra(const RunConfig& config,
                                                    const SegmentedSeries& x,
                                                    const SegmentedSeries& y) {
  return {prepare_one(config, x), prepare_one(config, y)};
}

AnalysisOutput run_analysis(const RunConfig& config, const SegmentedSeries& x,
                            const SegmentedSeries& y) {
  x.validate();
  y.validate();
  if (x.n_segments != y.n_segments || x.n_samples != y.n_samples) {
    throw DimensionError("X and Y must share N_R and N_T");
  }
  validate_config(config, x.n_channels, y.n_channels);

  AnalysisOutput output;
  output.sample_rate_hz = x.sample_rate_hz;
  output.n_samples = x.n_samples;

  std::vector<std::size_t> bins;
  if (config.frequency_bins) {
    bins = *config.frequency_bins;
    for (const std::size_t w : bins) {
      if (w >= x.n_samples) {
        std::ostringstream msg;
        msg << "requested bin " << w << " out of range [0, " << x.n_samples
            << ")";
        throw ConfigError(msg.str());
      }
    }
  } else {
    for (std::size_t w = 0; w <= x.n_samples / 2; ++w) bins.push_back(w);
  }
  std::sort(bins.begin(), bins.end());
  bins.erase(std::unique(bins.begin(), bins.end()), bins.end());
  if (bins.empty() || config.measures.empty()) return output;

  const auto [sx, sy] = prepare_spectra(config, x, y);

  MeasureOptions opts;
  opts.ridge = config.ridge;

  std::vector<MeasureId> measures = config.measures;
  std::sort(measures.begin(), measures.end());
  measures.erase(std::unique(measures.begin(), measures.end()), measures.end());

  for (const std::size_t w : bins) {
    for (const MeasureId id : measures) {
      const MeasureSpec spec{id, config.normalization};
      try {
        output.results.push_back(evaluate_measure(spec, sx, sy, w, opts));
        if (config.n_permutations) {
          output.reports.push_back(permutation_test(
              sx, sy, w, spec, *config.n_permutations,
              detail::derive_bin_seed(measure_seed(config.seed.value_or(0), id),
                                      w),
              opts));
        }
      } catch (const Error& e) {
        std::ostringstream msg;
        msg << "bin " << w << ", measure " << to_string(id) << ": " << e.what();
        throw Error(msg.str());
      }
    }
  }
  return output;
}

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, static_cast<std::size_t>(ptr - buf));
}

namespace {

const PermutationReport* find_report(const AnalysisOutput& output,
                                     const MeasureResult& r) {
  for (const auto& rep : output.reports) {
    if (rep.measure_id == r.measure_id && rep.frequency_bin == r.frequency_bin) {
      return &rep;
    }
  }
  return nullptr;
}

std::optional<double> bin_to_hz(const AnalysisOutput& output, std::size_t bin) {
  if (!output.sample_rate_hz || output.n_samples == 0) return std::nullopt;
  return *output.sample_rate_hz * static_cast<double>(bin) /
         static_cast<double>(output.n_samples);
}

}  // namespace

void emit_results(const AnalysisOutput& output, OutputFormat format,
                  std::ostream& out) {
  if (format == OutputFormat::csv) {
    out << "frequency_bin,frequency_hz,measure_id,value,squared,normalization,"
           "p_value\n";
    for (const auto& r : output.results) {
      out << r.frequency_bin << ',';
      if (const auto hz = bin_to_hz(output, r.frequency_bin)) {
        out << format_double(*hz);
      }
      out << ',' << to_string(r.measure_id) << ',' << format_double(r.value)
          << ',' << (r.squared ? "true" : "false") << ',';
      if (r.normalization) out << to_string(*r.normalization);
      out << ',';
      if (const auto* rep = find_report(output, r)) {
        out << format_double(rep->p_value);
      }
      out << '\n';
    }
    return;
  }

  json rows = json::array();
  for (const auto& r : output.results) {
    json row;
    row["frequency_bin"] = r.frequency_bin;
    if (const auto hz = bin_to_hz(output, r.frequency_bin)) {
      row["frequency_hz"] = *hz;
    } else {
      row["frequency_hz"] = nullptr;
    }
    row["measure_id"] = to_string(r.measure_id);
    row["value"] = r.value;
    row["squared"] = r.squared;
    row["normalization"] =
        r.normalization ? json(to_string(*r.normalization)) : json(nullptr);
    if (const auto* rep = find_report(output, r)) {
      row["p_value"] = rep->p_value;
      row["n_permutations"] = rep->n_permutations;
    } else {
      row["p_value"] = nullptr;
    }
    rows.push_back(row);
  }
  out << rows.dump(2) << '\n';
}

}  // namespace lagcoh
