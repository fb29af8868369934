// Command-line surface for the connectivity pipeline:
//   simulate        generate datasets from scenario configs
//   analyze         compute connectivity measures (optionally with
//                   permutation p-values) from a dataset
//   verify-parseval run the single-frequency filter / covariance
//                   cross-check on a dataset
//   test            permutation test for one measure
// All errors go to stderr with the machine-parsable prefix "lagcoh-error:".

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lagcoh/dataset_io.hpp"
#include "lagcoh/permutation.hpp"
#include "lagcoh/pipeline.hpp"
#include "lagcoh/simulate.hpp"
#include "lagcoh/zerolag.hpp"

namespace {

using namespace lagcoh;

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw IoError("cannot open output file: " + path);
  return file;
}

template <typename T>
T require_key(const std::map<std::string, std::string>& entries,
              const std::string& key) {
  const auto it = entries.find(key);
  if (it == entries.end()) throw ConfigError("scenario missing key: " + key);
  std::stringstream ss(it->second);
  T v{};
  ss >> v;
  if (ss.fail()) throw ConfigError("cannot parse scenario key: " + key);
  return v;
}

template <typename T>
T optional_key(const std::map<std::string, std::string>& entries,
               const std::string& key, T fallback) {
  return entries.count(key) ? require_key<T>(entries, key) : fallback;
}

MatrixXd parse_matrix(const std::string& text, std::size_t rows,
                      std::size_t cols, const std::string& key) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::stringstream vs(tok);
    double v;
    vs >> v;
    if (vs.fail()) throw ConfigError("non-numeric entry in " + key);
    values.push_back(v);
  }
  if (values.size() != rows * cols) {
    std::ostringstream msg;
    msg << key << " needs " << rows * cols << " row-major entries, got "
        << values.size();
    throw ConfigError(msg.str());
  }
  MatrixXd m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = values[i * cols + k];
  }
  return m;
}

SourceSpec parse_source(const std::map<std::string, std::string>& entries) {
  SourceSpec spec;
  spec.kind = source_kind_from_string(
      optional_key<std::string>(entries, "source_kind", "sinusoid_with_jitter"));
  spec.frequency_bin = optional_key<std::size_t>(entries, "source_bin", 1);
  spec.damping = optional_key<double>(entries, "damping", 0.95);
  spec.amplitude = optional_key<double>(entries, "amplitude", 1.0);
  return spec;
}

int cmd_simulate(const std::string& scenario_path, const std::string& output,
                 std::string header_path) {
  const auto entries = parse_flat_config(scenario_path);
  const std::string kind = require_key<std::string>(entries, "kind");

  SegmentedSeries x, y;
  if (kind == "blurring") {
    BlurringScenario sc;
    const auto p = require_key<std::size_t>(entries, "p");
    const auto q = require_key<std::size_t>(entries, "q");
    const auto r = require_key<std::size_t>(entries, "r");
    sc.mixing_c = parse_matrix(require_key<std::string>(entries, "mixing_c"), p,
                               r, "mixing_c");
    sc.mixing_d = parse_matrix(require_key<std::string>(entries, "mixing_d"), q,
                               r, "mixing_d");
    sc.source = parse_source(entries);
    sc.noise_std_x = optional_key<double>(entries, "noise_std_x", 0.0);
    sc.noise_std_y = optional_key<double>(entries, "noise_std_y", 0.0);
    sc.n_segments = require_key<std::size_t>(entries, "n_segments");
    sc.n_samples = require_key<std::size_t>(entries, "n_samples");
    sc.seed = optional_key<std::uint64_t>(entries, "seed", 0);
    std::tie(x, y) = generate_blurring(sc);
  } else if (kind == "lagged") {
    LaggedCouplingScenario sc;
    sc.lag_samples = optional_key<std::size_t>(entries, "lag_samples", 0);
    sc.coupling_gain = optional_key<double>(entries, "coupling_gain", 1.0);
    sc.source = parse_source(entries);
    sc.noise_std = optional_key<double>(entries, "noise_std", 0.0);
    sc.n_segments = require_key<std::size_t>(entries, "n_segments");
    sc.n_samples = require_key<std::size_t>(entries, "n_samples");
    sc.seed = optional_key<std::uint64_t>(entries, "seed", 0);
    std::tie(x, y) = generate_lagged(sc);
  } else {
    throw ConfigError("scenario kind must be 'blurring' or 'lagged'");
  }

  DatasetHeader header;
  header.n_segments = x.n_segments;
  header.n_samples = x.n_samples;
  header.n_channels_x = x.n_channels;
  header.n_channels_y = y.n_channels;
  header.layout = layout_from_string(
      optional_key<std::string>(entries, "layout", "binary_f64le"));
  if (entries.count("sample_rate_hz")) {
    header.sample_rate_hz = require_key<double>(entries, "sample_rate_hz");
    x.sample_rate_hz = header.sample_rate_hz;
    y.sample_rate_hz = header.sample_rate_hz;
  }

  if (header_path.empty()) header_path = output + ".json";
  save_dataset(output, header, x, y);
  write_header(header_path, header);
  return 0;
}

struct CommonDataArgs {
  std::string input;
  std::string header;
};

std::pair<SegmentedSeries, SegmentedSeries> load_from_args(
    const CommonDataArgs& args) {
  const DatasetHeader header = read_header(
      args.header.empty() ? args.input + ".json" : args.header);
  return load_dataset(args.input, header);
}

int cmd_analyze(const CommonDataArgs& data, const RunConfig& config,
                const std::string& output_path) {
  const auto [x, y] = load_from_args(data);
  const AnalysisOutput output = run_analysis(config, x, y);
  std::ofstream file;
  emit_results(output, config.output_format, open_output(output_path, file));
  return 0;
}

int cmd_verify_parseval(const CommonDataArgs& data, const std::string& bins_text,
                        bool centered, const std::string& series_role,
                        OutputFormat format, const std::string& output_path) {
  const auto [x, y] = load_from_args(data);
  const SegmentedSeries& series = series_role == "y" ? y : x;

  std::vector<std::size_t> bins;
  if (const auto parsed = parse_bin_list(bins_text)) {
    bins = *parsed;
  } else {
    // all interior bins (excluding DC and, for even N_T, the Nyquist bin)
    for (std::size_t w = 1; w < series.n_samples; ++w) {
      if (series.n_samples % 2 == 0 && w == series.n_samples / 2) continue;
      bins.push_back(w);
    }
  }

  std::ofstream file;
  std::ostream& out = open_output(output_path, file);
  bool all_pass = true;
  if (format == OutputFormat::csv) {
    out << "frequency_bin,max_abs_rel_error,pass\n";
    for (const std::size_t w : bins) {
      const ParsevalReport report = verify_parseval_identity(series, w, centered);
      all_pass = all_pass && report.pass;
      out << w << ',' << format_double(report.max_abs_rel_error) << ','
          << (report.pass ? "true" : "false") << '\n';
    }
  } else {
    nlohmann::json rows = nlohmann::json::array();
    for (const std::size_t w : bins) {
      const ParsevalReport report = verify_parseval_identity(series, w, centered);
      all_pass = all_pass && report.pass;
      rows.push_back({{"frequency_bin", w},
                      {"max_abs_rel_error", report.max_abs_rel_error},
                      {"pass", report.pass}});
    }
    out << rows.dump(2) << '\n';
  }
  if (!all_pass) {
    throw NumericError("Parseval identity check failed on at least one bin");
  }
  return 0;
}

int cmd_test(const CommonDataArgs& data, const RunConfig& config,
             const std::string& measure_name, const std::string& output_path) {
  const auto [x, y] = load_from_args(data);
  RunConfig cfg = config;
  cfg.measures = {measure_id_from_string(measure_name)};
  if (!cfg.n_permutations) {
    throw ConfigError("the test subcommand requires --permutations");
  }
  validate_config(cfg, x.n_channels, y.n_channels);

  const auto [sx, sy] = prepare_spectra(cfg, x, y);
  std::vector<std::size_t> bins;
  if (cfg.frequency_bins) {
    bins = *cfg.frequency_bins;
  } else {
    for (std::size_t w = 0; w <= x.n_samples / 2; ++w) bins.push_back(w);
  }

  MeasureOptions opts;
  opts.ridge = cfg.ridge;
  const MeasureSpec spec{cfg.measures[0], cfg.normalization};
  const auto reports = multi_frequency_test(sx, sy, bins, spec,
                                            *cfg.n_permutations,
                                            cfg.seed.value_or(0), opts);

  std::ofstream file;
  std::ostream& out = open_output(output_path, file);
  if (cfg.output_format == OutputFormat::csv) {
    out << "frequency_bin,measure_id,observed,p_value,n_permutations\n";
    for (const auto& r : reports) {
      out << r.frequency_bin << ',' << to_string(r.measure_id) << ','
          << format_double(r.observed) << ',' << format_double(r.p_value) << ','
          << r.n_permutations << '\n';
    }
  } else {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : reports) {
      rows.push_back({{"frequency_bin", r.frequency_bin},
                      {"measure_id", to_string(r.measure_id)},
                      {"observed", r.observed},
                      {"p_value", r.p_value},
                      {"n_permutations", r.n_permutations},
                      {"null_samples", r.null_samples},
                      {"seed", r.seed}});
    }
    out << rows.dump(2) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherence and phase-synchronization measures between pairs of "
               "multivariate time series, with zero-lag-removed variants"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Generate a dataset from a scenario");
  std::string sim_scenario, sim_output, sim_header;
  sim->add_option("--scenario", sim_scenario, "Scenario config file")->required();
  sim->add_option("--output", sim_output, "Payload output path")->required();
  sim->add_option("--header", sim_header,
                  "Header sidecar path (default: <output>.json)");

  // shared dataset/config options
  CommonDataArgs data;
  RunConfig config;
  std::string measures_text = "coherence_general";
  std::string normalization_text = "variable";
  std::string bins_text = "all";
  std::string centering_text = "both";
  std::string format_text = "csv";
  std::string config_path, output_path;
  std::size_t permutations = 0;
  std::uint64_t seed = 0;
  double ridge = -1.0;

  auto add_data_opts = [&](CLI::App* cmd) {
    cmd->add_option("--input", data.input, "Dataset payload path")->required();
    cmd->add_option("--header", data.header,
                    "Header sidecar path (default: <input>.json)");
    cmd->add_option("--format", format_text, "Output format: csv|json");
    cmd->add_option("--output", output_path, "Result path (default: stdout)");
  };
  auto add_analysis_opts = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "Flat key=value config file");
    cmd->add_option("--normalization", normalization_text,
                    "Normalization: vector|variable");
    cmd->add_option("--bins", bins_text, "Frequency bins: 'all' or comma list");
    cmd->add_option("--centering", centering_text,
                    "Centering: ensemble|per_segment|both|none");
    cmd->add_option("--permutations", permutations, "Permutation count");
    cmd->add_option("--seed", seed, "Permutation seed");
    cmd->add_option("--ridge", ridge, "Optional ridge factor (off by default)");
  };

  auto* analyze = app.add_subcommand("analyze", "Compute connectivity measures");
  add_data_opts(analyze);
  add_analysis_opts(analyze);
  analyze->add_option("--measures", measures_text, "Comma-separated measures");

  auto* verify = app.add_subcommand(
      "verify-parseval", "Single-frequency filter / covariance cross-check");
  add_data_opts(verify);
  bool verify_centered = false;
  std::string verify_series = "x";
  verify->add_option("--bins", bins_text,
                     "Bins to check: 'all' (interior) or comma list");
  verify->add_flag("--centered", verify_centered,
                   "Run the check on ensemble-centered data");
  verify->add_option("--series", verify_series, "Which series to check: x|y");

  auto* test = app.add_subcommand("test", "Permutation test for one measure");
  add_data_opts(test);
  add_analysis_opts(test);
  std::string test_measure = "coherence_general";
  test->add_option("--measure", test_measure, "Measure to test");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(sim_scenario, sim_output, sim_header);

    CLI::App* active = app.get_subcommands().front();
    const auto given = [&](const std::string& name) {
      const CLI::Option* opt = active->get_option_no_throw(name);
      return opt != nullptr && opt->count() > 0;
    };
    if (!config_path.empty()) {
      lagcoh::apply_config_entries(config, lagcoh::parse_flat_config(config_path));
    }
    // Command-line flags override the config file.
    if (given("--normalization")) {
      config.normalization = lagcoh::normalization_from_string(normalization_text);
    }
    if (given("--bins")) {
      config.frequency_bins = lagcoh::parse_bin_list(bins_text);
    }
    if (given("--centering")) {
      config.centering = lagcoh::centering_from_string(centering_text);
    }
    if (given("--format")) {
      config.output_format = lagcoh::output_format_from_string(format_text);
    }
    if (given("--permutations")) config.n_permutations = permutations;
    if (given("--seed")) config.seed = seed;
    if (given("--ridge")) config.ridge = ridge;

    if (analyze->parsed()) {
      if (analyze->count("--measures") || config.measures.empty()) {
        config.measures = lagcoh::parse_measure_list(measures_text);
      }
      return cmd_analyze(data, config, output_path);
    }
    if (verify->parsed()) {
      return cmd_verify_parseval(data, bins_text, verify_centered, verify_series,
                                 config.output_format, output_path);
    }
    if (test->parsed()) {
      return cmd_test(data, config, test_measure, output_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "lagcoh-error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
