#include "lagcoh/run_config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace lagcoh {

std::string to_string(Centering centering) {
  switch (centering) {
    case Centering::ensemble: return "ensemble";
    case Centering::per_segment: return "per_segment";
    case Centering::both: return "both";
    case Centering::none: return "none";
  }
  return "unknown";
}

Centering centering_from_string(const std::string& name) {
  if (name == "ensemble") return Centering::ensemble;
  if (name == "per_segment") return Centering::per_segment;
  if (name == "both") return Centering::both;
  if (name == "none") return Centering::none;
  throw ConfigError("unknown centering mode: " + name);
}

std::string to_string(OutputFormat format) {
  return format == OutputFormat::csv ? "csv" : "json";
}

OutputFormat output_format_from_string(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw ConfigError("unknown output format: " + name);
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

template <typename T>
T parse_number(const std::string& tok, const std::string& what) {
  T v{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ConfigError("cannot parse " + what + " from '" + tok + "'");
  }
  return v;
}

}  // namespace

std::map<std::string, std::string> parse_flat_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::map<std::string, std::string> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::ostringstream msg;
      msg << "config line " << line_no << " in " << path
          << " is not 'key = value'";
      throw ConfigError(msg.str());
    }
    entries[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return entries;
}

std::vector<MeasureId> parse_measure_list(const std::string& csv) {
  std::vector<MeasureId> out;
  for (const auto& name : split_csv(csv)) {
    out.push_back(measure_id_from_string(name));
  }
  if (out.empty()) throw ConfigError("empty measure list");
  return out;
}

std::optional<std::vector<std::size_t>> parse_bin_list(const std::string& text) {
  if (trim(text) == "all") return std::nullopt;
  std::vector<std::size_t> bins;
  for (const auto& tok : split_csv(text)) {
    bins.push_back(parse_number<std::size_t>(tok, "frequency bin"));
  }
  return bins;
}

void apply_config_entries(RunConfig& config,
                          const std::map<std::string, std::string>& entries) {
  for (const auto& [key, value] : entries) {
    if (key == "measures") {
      config.measures = parse_measure_list(value);
    } else if (key == "normalization") {
      config.normalization = normalization_from_string(value);
    } else if (key == "bins") {
      config.frequency_bins = parse_bin_list(value);
    } else if (key == "centering") {
      config.centering = centering_from_string(value);
    } else if (key == "permutations") {
      config.n_permutations = parse_number<std::size_t>(value, "permutations");
    } else if (key == "seed") {
      config.seed = parse_number<std::uint64_t>(value, "seed");
    } else if (key == "ridge") {
      config.ridge = parse_number<double>(value, "ridge");
    } else if (key == "format") {
      config.output_format = output_format_from_string(value);
    } else {
      throw ConfigError("unknown config key: " + key);
    }
  }
}

void validate_config(const RunConfig& config, std::size_t n_channels_x,
                     std::size_t n_channels_y) {
  for (const MeasureId id : config.measures) {
    if (measure_requires_univariate(id) &&
        (n_channels_x != 1 || n_channels_y != 1)) {
      std::ostringstream msg;
      msg << "measure " << to_string(id) << " requires p = q = 1 but dataset "
          << "has p = " << n_channels_x << ", q = " << n_channels_y;
      throw ConfigError(msg.str());
    }
  }
  if (config.ridge && *config.ridge < 0.0) {
    throw ConfigError("ridge must be >= 0");
  }
  if (config.n_permutations && *config.n_permutations < 19) {
    throw ConfigError("permutations must be >= 19");
  }
}

}  // namespace lagcoh
