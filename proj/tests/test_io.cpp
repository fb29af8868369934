#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "lagcoh/dataset_io.hpp"
#include "lagcoh/pipeline.hpp"
#include "lagcoh/run_config.hpp"
#include "lagcoh/simulate.hpp"
#include "test_util.hpp"

using namespace lagcoh;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           fs::path("lagcoh-test-" + std::to_string(::getpid()) + "-" +
                    std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

DatasetHeader header_for(const SegmentedSeries& x, const SegmentedSeries& y,
                         DatasetLayout layout) {
  DatasetHeader h;
  h.n_segments = x.n_segments;
  h.n_samples = x.n_samples;
  h.n_channels_x = x.n_channels;
  h.n_channels_y = y.n_channels;
  h.layout = layout;
  return h;
}

std::pair<SegmentedSeries, SegmentedSeries> small_dataset(std::uint64_t seed) {
  auto rng = testutil::make_rng(seed);
  return {testutil::random_series(rng, 3, 8, 2),
          testutil::random_series(rng, 3, 8, 1)};
}

}  // namespace

TEST_CASE("binary datasets round-trip bit-exactly") {
  TempDir dir;
  auto [x, y] = small_dataset(801);
  const DatasetHeader h = header_for(x, y, DatasetLayout::binary_f64le);
  const std::string payload = dir.file("data.bin");
  save_dataset(payload, h, x, y);
  auto [rx, ry] = load_dataset(payload, h);
  CHECK(rx.data == x.data);
  CHECK(ry.data == y.data);
  CHECK(rx.n_channels == 2);
  CHECK(ry.n_channels == 1);
}

TEST_CASE("csv datasets round-trip through shortest round-trip formatting") {
  TempDir dir;
  auto [x, y] = small_dataset(802);
  const DatasetHeader h = header_for(x, y, DatasetLayout::csv_long);
  const std::string payload = dir.file("data.csv");
  save_dataset(payload, h, x, y);
  auto [rx, ry] = load_dataset(payload, h);
  CHECK(rx.data == x.data);
  CHECK(ry.data == y.data);
}

TEST_CASE("headers round-trip through JSON including optional fields") {
  TempDir dir;
  DatasetHeader h;
  h.n_segments = 5;
  h.n_samples = 16;
  h.n_channels_x = 2;
  h.n_channels_y = 3;
  h.sample_rate_hz = 250.0;
  h.layout = DatasetLayout::csv_long;
  h.channel_names_x = {"Fz", "Cz"};
  const std::string path = dir.file("header.json");
  write_header(path, h);
  const DatasetHeader r = read_header(path);
  CHECK(r.n_segments == 5);
  CHECK(r.n_samples == 16);
  CHECK(r.n_channels_x == 2);
  CHECK(r.n_channels_y == 3);
  REQUIRE(r.sample_rate_hz.has_value());
  CHECK(*r.sample_rate_hz == 250.0);
  CHECK(r.layout == DatasetLayout::csv_long);
  CHECK(r.channel_names_x == h.channel_names_x);
}

TEST_CASE("header validation rejects zero counts and bad rates") {
  TempDir dir;
  const std::string path = dir.file("bad.json");
  std::ofstream(path) << R"({"n_segments":0,"n_samples":4,)"
                      << R"("n_channels_x":1,"n_channels_y":1,)"
                      << R"("layout":"binary_f64le"})";
  CHECK_THROWS_AS(read_header(path), IoError);
  std::ofstream(path) << "{ not json";
  CHECK_THROWS_AS(read_header(path), IoError);
  CHECK_THROWS_AS(read_header(dir.file("missing.json")), IoError);
}

TEST_CASE("truncated and oversized binary payloads are reported with byte "
          "counts") {
  TempDir dir;
  auto [x, y] = small_dataset(803);
  const DatasetHeader h = header_for(x, y, DatasetLayout::binary_f64le);
  const std::string payload = dir.file("data.bin");
  save_dataset(payload, h, x, y);

  DatasetHeader bigger = h;
  bigger.n_segments = 4;  // declares more data than the file holds
  try {
    load_dataset(payload, bigger);
    FAIL("expected IoError");
  } catch (const IoError& e) {
    const std::string what = e.what();
    CHECK(what.find("expected") != std::string::npos);
    CHECK(what.find("found") != std::string::npos);
  }

  DatasetHeader smaller = h;
  smaller.n_segments = 2;
  CHECK_THROWS_AS(load_dataset(payload, smaller), IoError);
}

TEST_CASE("non-finite binary values are rejected with their byte offset") {
  TempDir dir;
  auto [x, y] = small_dataset(804);
  x.at(1, 2, 0) = std::numeric_limits<double>::quiet_NaN();
  const DatasetHeader h = header_for(x, y, DatasetLayout::binary_f64le);
  const std::string payload = dir.file("data.bin");
  // save_dataset validates, so write the raw bytes directly
  std::ofstream out(payload, std::ios::binary);
  out.write(reinterpret_cast<const char*>(x.data.data()),
            static_cast<std::streamsize>(x.data.size() * sizeof(double)));
  out.write(reinterpret_cast<const char*>(y.data.data()),
            static_cast<std::streamsize>(y.data.size() * sizeof(double)));
  out.close();
  try {
    load_dataset(payload, h);
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("byte offset") != std::string::npos);
  }
}

TEST_CASE("csv parse errors cite the offending line") {
  TempDir dir;
  const std::string payload = dir.file("data.csv");
  DatasetHeader h;
  h.n_segments = 1;
  h.n_samples = 2;
  h.n_channels_x = 1;
  h.n_channels_y = 1;
  h.layout = DatasetLayout::csv_long;

  std::ofstream(payload) << "segment,t,channel_role,channel_index,value\n"
                            "0,0,x,0,1.5\n"
                            "0,1,x,0,oops\n"
                            "0,0,y,0,2.0\n"
                            "0,1,y,0,3.0\n";
  try {
    load_dataset(payload, h);
    FAIL("expected IoError");
  } catch (const IoError& e) {
    const std::string what = e.what();
    CHECK(what.find("line 3") != std::string::npos);
    CHECK(what.find("oops") != std::string::npos);
  }

  std::ofstream(payload) << "segment,t,channel_role,channel_index,value\n"
                            "0,0,z,0,1.5\n";
  CHECK_THROWS_AS(load_dataset(payload, h), IoError);

  std::ofstream(payload) << "segment,t,channel_role,channel_index,value\n"
                            "0,5,x,0,1.5\n";  // t out of range
  CHECK_THROWS_AS(load_dataset(payload, h), IoError);

  // header present but too few rows: counts are named
  std::ofstream(payload) << "segment,t,channel_role,channel_index,value\n"
                            "0,0,x,0,1.5\n";
  try {
    load_dataset(payload, h);
    FAIL("expected IoError");
  } catch (const IoError& e) {
    const std::string what = e.what();
    CHECK(what.find("4") != std::string::npos);  // expected rows
    CHECK(what.find("1") != std::string::npos);  // found rows
  }
}

TEST_CASE("flat config files parse with comments and fail with line numbers") {
  TempDir dir;
  const std::string path = dir.file("run.conf");
  std::ofstream(path) << "# analysis settings\n"
                         "measures = coherence_general, pli\n"
                         "bins = 2,4\n"
                         "\n"
                         "permutations = 99\n"
                         "seed = 7\n"
                         "centering = ensemble\n"
                         "format = json\n";
  const auto entries = parse_flat_config(path);
  RunConfig cfg;
  apply_config_entries(cfg, entries);
  REQUIRE(cfg.measures.size() == 2);
  CHECK(cfg.measures[0] == MeasureId::coherence_general);
  CHECK(cfg.measures[1] == MeasureId::pli);
  REQUIRE(cfg.frequency_bins.has_value());
  CHECK(*cfg.frequency_bins == std::vector<std::size_t>{2, 4});
  CHECK(cfg.n_permutations == 99);
  CHECK(cfg.seed == 7);
  CHECK(cfg.centering == Centering::ensemble);
  CHECK(cfg.output_format == OutputFormat::json);

  std::ofstream(path) << "measures = pli\nthis line has no equals\n";
  CHECK_THROWS_AS(parse_flat_config(path), ConfigError);

  RunConfig bad;
  CHECK_THROWS_AS(apply_config_entries(bad, {{"nope", "1"}}), ConfigError);
}

TEST_CASE("parse helpers cover 'all', lists, and rejects") {
  CHECK_FALSE(parse_bin_list("all").has_value());
  CHECK(*parse_bin_list("0, 3 ,7") == std::vector<std::size_t>{0, 3, 7});
  CHECK_THROWS_AS(parse_bin_list("1,x"), ConfigError);
  CHECK_THROWS_AS(parse_measure_list(""), ConfigError);
  CHECK_THROWS_AS(parse_measure_list("coherence_general,bogus"), ConfigError);
  CHECK_THROWS_AS(measure_id_from_string("bogus"), ConfigError);
  for (const char* name :
       {"coherence_general", "coherence_classical", "ps_general",
        "ps_classical", "lagged_coherence_general",
        "lagged_coherence_univariate", "lagged_ps_general",
        "lagged_ps_univariate", "imag_coherency", "pli"}) {
    CHECK(to_string(measure_id_from_string(name)) == name);
  }
}

TEST_CASE("validate_config rejects univariate measures on multichannel data "
          "before any computation") {
  RunConfig cfg;
  cfg.measures = {MeasureId::pli};
  CHECK_THROWS_AS(validate_config(cfg, 2, 1), ConfigError);
  CHECK_NOTHROW(validate_config(cfg, 1, 1));
  cfg.measures = {MeasureId::coherence_general};
  CHECK_NOTHROW(validate_config(cfg, 2, 3));
  cfg.ridge = -1.0;
  CHECK_THROWS_AS(validate_config(cfg, 1, 1), ConfigError);
}

TEST_CASE("run_analysis finds the coupling at the source bin and is "
          "deterministic") {
  LaggedCouplingScenario sc;
  sc.lag_samples = 4;
  sc.source.frequency_bin = 4;
  sc.noise_std = 0.3;
  sc.n_segments = 32;
  sc.n_samples = 64;
  sc.seed = 21;
  auto [x, y] = generate_lagged(sc);

  RunConfig cfg;
  cfg.measures = {MeasureId::coherence_general,
                  MeasureId::lagged_coherence_general};
  const AnalysisOutput out = run_analysis(cfg, x, y);
  // default bins: 0 .. N_T/2 inclusive, two measures each
  CHECK(out.results.size() == 2 * (64 / 2 + 1));
  CHECK(out.n_samples == 64);

  double best = -1.0;
  std::size_t best_bin = 0;
  for (const auto& r : out.results) {
    if (r.measure_id == MeasureId::coherence_general && r.value > best) {
      best = r.value;
      best_bin = r.frequency_bin;
    }
  }
  CHECK(best_bin == 4);
  CHECK(best > 0.8);

  const AnalysisOutput again = run_analysis(cfg, x, y);
  REQUIRE(again.results.size() == out.results.size());
  for (std::size_t i = 0; i < out.results.size(); ++i)
    CHECK(again.results[i].value == out.results[i].value);
}

TEST_CASE("run_analysis with permutations is reproducible for a fixed seed") {
  auto rng = testutil::make_rng(805);
  const SegmentedSeries x = testutil::random_series(rng, 16, 16, 1);
  const SegmentedSeries y = testutil::random_series(rng, 16, 16, 1);
  RunConfig cfg;
  cfg.measures = {MeasureId::pli};
  cfg.frequency_bins = std::vector<std::size_t>{2, 3};
  cfg.n_permutations = 49;
  cfg.seed = 99;
  const AnalysisOutput a = run_analysis(cfg, x, y);
  const AnalysisOutput b = run_analysis(cfg, x, y);
  REQUIRE(a.reports.size() == 2);
  for (std::size_t i = 0; i < a.reports.size(); ++i) {
    CHECK(a.reports[i].p_value == b.reports[i].p_value);
    CHECK(a.reports[i].null_samples == b.reports[i].null_samples);
    CHECK(a.reports[i].p_value >= 1.0 / 50.0);
  }
}

TEST_CASE("empty bin list produces empty output") {
  auto rng = testutil::make_rng(806);
  const SegmentedSeries x = testutil::random_series(rng, 8, 8, 1);
  const SegmentedSeries y = testutil::random_series(rng, 8, 8, 1);
  RunConfig cfg;
  cfg.measures = {MeasureId::coherence_general};
  cfg.frequency_bins = std::vector<std::size_t>{};
  CHECK(run_analysis(cfg, x, y).results.empty());
}

TEST_CASE("emit_results writes matching CSV and JSON representations") {
  auto rng = testutil::make_rng(807);
  const SegmentedSeries x = testutil::random_series(rng, 12, 16, 1);
  const SegmentedSeries y = testutil::random_series(rng, 12, 16, 1);
  RunConfig cfg;
  cfg.measures = {MeasureId::coherence_general, MeasureId::ps_general};
  cfg.frequency_bins = std::vector<std::size_t>{1, 2};
  const AnalysisOutput out = run_analysis(cfg, x, y);

  std::ostringstream csv;
  emit_results(out, OutputFormat::csv, csv);
  std::istringstream lines(csv.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line ==
        "frequency_bin,frequency_hz,measure_id,value,squared,normalization,"
        "p_value");
  std::size_t n_lines = 0;
  while (std::getline(lines, line))
    if (!line.empty()) ++n_lines;
  CHECK(n_lines == out.results.size());

  std::ostringstream js;
  emit_results(out, OutputFormat::json, js);
  const auto parsed = nlohmann::json::parse(js.str());
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == out.results.size());
  for (std::size_t i = 0; i < out.results.size(); ++i) {
    CHECK(parsed[i]["measure_id"].get<std::string>() ==
          to_string(out.results[i].measure_id));
    CHECK(parsed[i]["value"].get<double>() == out.results[i].value);
    CHECK(parsed[i]["frequency_bin"].get<std::size_t>() ==
          out.results[i].frequency_bin);
  }
}

TEST_CASE("format_double round-trips exactly") {
  auto rng = testutil::make_rng(808);
  for (int i = 0; i < 200; ++i) {
    const double v = testutil::gauss(rng) * std::pow(10.0, i % 17 - 8);
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(1.0) == "1");
}
