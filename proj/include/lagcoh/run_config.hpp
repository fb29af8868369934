#pragma once

#include <map>

#include "lagcoh/evaluate.hpp"
#include "lagcoh/types.hpp"

namespace lagcoh {

enum class Centering { ensemble, per_segment, both, none };

std::string to_string(Centering centering);
Centering centering_from_string(const std::string& name);

enum class OutputFormat { csv, json };

std::string to_string(OutputFormat format);
OutputFormat output_format_from_string(const std::string& name);

struct RunConfig {
  std::vector<MeasureId> measures;
  NormalizationKind normalization = NormalizationKind::variable_wise;
  // nullopt means "all": bins 0 .. floor(N_T/2) (upper bins are redundant by
  // conjugate symmetry for real input).
  std::optional<std::vector<std::size_t>> frequency_bins;
  Centering centering = Centering::both;
  std::optional<std::size_t> n_permutations;
  std::optional<std::uint64_t> seed;
  std::optional<double> ridge;
  OutputFormat output_format = OutputFormat::csv;
};

// Flat key-value config document: one `key = value` per line, '#' comments.
std::map<std::string, std::string> parse_flat_config(const std::string& path);

// Applies recognized keys from a flat config onto a RunConfig.
void apply_config_entries(RunConfig& config,
                          const std::map<std::string, std::string>& entries);

// Comma-separated measure list ("coherence_general,pli").
std::vector<MeasureId> parse_measure_list(const std::string& csv);

// Comma-separated bin list, or "all".
std::optional<std::vector<std::size_t>> parse_bin_list(const std::string& text);

// Checks measure/channel-count compatibility before any computation.
void validate_config(const RunConfig& config, std::size_t n_channels_x,
                     std::size_t n_channels_y);

}  // namespace lagcoh
