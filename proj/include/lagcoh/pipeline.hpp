#pragma once

#include <iosfwd>

#include "lagcoh/run_config.hpp"
#include "lagcoh/types.hpp"

namespace lagcoh {

struct AnalysisOutput {
  std::vector<MeasureResult> results;
  std::vector<PermutationReport> reports;  // empty unless permutations requested
  std::optional<double> sample_rate_hz;
  std::size_t n_samples = 0;  // for bin -> Hz conversion
};

// Full pipeline: center -> DFT -> per-bin cross-spectra -> requested
// measures -> optional permutation tests. Results ordered by
// (frequency_bin, measure_id). Module errors are rethrown with
// (bin, measure) context.
AnalysisOutput run_analysis(const RunConfig& config, const SegmentedSeries& x,
                            const SegmentedSeries& y);

// Spectra exactly as run_analysis prepares them (centering applied).
std::pair<SpectralSet, SpectralSet> prepare_spectra(const RunConfig& config,
                                                    const SegmentedSeries& x,
                                                    const SegmentedSeries& y);

// CSV columns: frequency_bin, frequency_hz, measure_id, value, squared,
// normalization, p_value (empty without a test). JSON mirrors the schema.
// Numbers use shortest round-trip formatting.
void emit_results(const AnalysisOutput& output, OutputFormat format,
                  std::ostream& out);

// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

}  // namespace lagcoh
