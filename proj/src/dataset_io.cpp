#include "lagcoh/dataset_io.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lagcoh {

using nlohmann::json;

std::string to_string(DatasetLayout layout) {
  return layout == DatasetLayout::csv_long ? "csv_long" : "binary_f64le";
}

DatasetLayout layout_from_string(const std::string& name) {
  if (name == "csv_long") return DatasetLayout::csv_long;
  if (name == "binary_f64le") return DatasetLayout::binary_f64le;
  throw ConfigError("unknown dataset layout: " + name);
}

DatasetHeader read_header(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open header file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError("malformed header JSON in " + path + ": " + e.what());
  }
  DatasetHeader h;
  try {
    h.n_segments = j.at("n_segments").get<std::size_t>();
    h.n_samples = j.at("n_samples").get<std::size_t>();
    h.n_channels_x = j.at("n_channels_x").get<std::size_t>();
    h.n_channels_y = j.at("n_channels_y").get<std::size_t>();
    h.layout = layout_from_string(j.at("layout").get<std::string>());
    if (j.contains("sample_rate_hz") && !j["sample_rate_hz"].is_null()) {
      h.sample_rate_hz = j["sample_rate_hz"].get<double>();
    }
    if (j.contains("channel_names_x")) {
      h.channel_names_x = j["channel_names_x"].get<std::vector<std::string>>();
    }
    if (j.contains("channel_names_y")) {
      h.channel_names_y = j["channel_names_y"].get<std::vector<std::string>>();
    }
  } catch (const json::exception& e) {
    throw IoError("invalid header field in " + path + ": " + e.what());
  }
  if (h.n_segments == 0 || h.n_samples == 0 || h.n_channels_x == 0 ||
      h.n_channels_y == 0) {
    throw IoError("header counts must be positive in " + path);
  }
  if (h.sample_rate_hz && *h.sample_rate_hz <= 0.0) {
    throw IoError("sample_rate_hz must be positive in " + path);
  }
  return h;
}

void write_header(const std::string& path, const DatasetHeader& header) {
  json j;
  j["n_segments"] = header.n_segments;
  j["n_samples"] = header.n_samples;
  j["n_channels_x"] = header.n_channels_x;
  j["n_channels_y"] = header.n_channels_y;
  j["layout"] = to_string(header.layout);
  if (header.sample_rate_hz) j["sample_rate_hz"] = *header.sample_rate_hz;
  if (!header.channel_names_x.empty()) {
    j["channel_names_x"] = header.channel_names_x;
  }
  if (!header.channel_names_y.empty()) {
    j["channel_names_y"] = header.channel_names_y;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write header file: " + path);
  out << j.dump(2) << '\n';
}

namespace {

std::pair<SegmentedSeries, SegmentedSeries> load_binary(
    const std::string& path, const DatasetHeader& h) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open payload file: " + path);
  const std::size_t nx = h.n_segments * h.n_samples * h.n_channels_x;
  const std::size_t ny = h.n_segments * h.n_samples * h.n_channels_y;
  std::vector<double> buf(nx + ny);
  in.read(reinterpret_cast<char*>(buf.data()),
          static_cast<std::streamsize>(buf.size() * sizeof(double)));
  const std::size_t got = static_cast<std::size_t>(in.gcount());
  if (got != buf.size() * sizeof(double)) {
    std::ostringstream msg;
    msg << "truncated binary payload in " << path << ": expected "
        << buf.size() * sizeof(double) << " bytes, found " << got;
    throw IoError(msg.str());
  }
  char extra;
  if (in.read(&extra, 1)) {
    std::ostringstream msg;
    msg << "binary payload in " << path << " longer than header declares ("
        << buf.size() * sizeof(double) << " bytes expected)";
    throw IoError(msg.str());
  }
  for (std::size_t i = 0; i < buf.size(); ++i) {
    if (!std::isfinite(buf[i])) {
      std::ostringstream msg;
      msg << "byte offset " << i * sizeof(double) << " in " << path;
      throw IoError("non-finite value at " + msg.str());
    }
  }

  SegmentedSeries x =
      SegmentedSeries::zeros(h.n_segments, h.n_samples, h.n_channels_x);
  SegmentedSeries y =
      SegmentedSeries::zeros(h.n_segments, h.n_samples, h.n_channels_y);
  std::memcpy(x.data.data(), buf.data(), nx * sizeof(double));
  std::memcpy(y.data.data(), buf.data() + nx, ny * sizeof(double));
  x.sample_rate_hz = h.sample_rate_hz;
  y.sample_rate_hz = h.sample_rate_hz;
  return {std::move(x), std::move(y)};
}

std::pair<SegmentedSeries, SegmentedSeries> load_csv(const std::string& path,
                                                     const DatasetHeader& h) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open payload file: " + path);

  SegmentedSeries x =
      SegmentedSeries::zeros(h.n_segments, h.n_samples, h.n_channels_x);
  SegmentedSeries y =
      SegmentedSeries::zeros(h.n_segments, h.n_samples, h.n_channels_y);
  x.sample_rate_hz = h.sample_rate_hz;
  y.sample_rate_hz = h.sample_rate_hz;

  std::string line;
  std::size_t line_no = 0;
  std::size_t n_rows = 0;

  auto fail = [&](const std::string& what) -> void {
    std::ostringstream msg;
    msg << "CSV parse error at line " << line_no << " of " << path << ": "
        << what;
    throw IoError(msg.str());
  };

  auto parse_index = [&](const std::string& tok, std::size_t limit,
                         const char* name) {
    std::size_t v = 0;
    const auto [ptr, ec] =
        std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      fail(std::string("non-numeric ") + name + " '" + tok + "'");
    }
    if (v >= limit) {
      std::ostringstream msg;
      msg << name << " " << v << " out of range [0, " << limit << ")";
      fail(msg.str());
    }
    return v;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line.rfind("segment,", 0) != 0) {
        fail("expected header line 'segment,t,channel_role,channel_index,value'");
      }
      continue;
    }
    std::vector<std::string> tok;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) tok.push_back(field);
    if (tok.size() != 5) fail("expected 5 columns");

    const std::size_t j = parse_index(tok[0], h.n_segments, "segment");
    const std::size_t t = parse_index(tok[1], h.n_samples, "t");
    const bool is_x = tok[2] == "x";
    if (!is_x && tok[2] != "y") fail("channel_role must be 'x' or 'y'");
    SegmentedSeries& target = is_x ? x : y;
    const std::size_t c = parse_index(
        tok[3], is_x ? h.n_channels_x : h.n_channels_y, "channel_index");

    double v = 0.0;
    const auto [ptr, ec] =
        std::from_chars(tok[4].data(), tok[4].data() + tok[4].size(), v);
    if (ec != std::errc{} || ptr != tok[4].data() + tok[4].size()) {
      fail("non-numeric value '" + tok[4] + "'");
    }
    if (!std::isfinite(v)) fail("non-finite value");
    target.at(j, t, c) = v;
    ++n_rows;
  }

  const std::size_t expected =
      h.n_segments * h.n_samples * (h.n_channels_x + h.n_channels_y);
  if (n_rows != expected) {
    std::ostringstream msg;
    msg << "row count mismatch in " << path << ": header expects " << expected
        << " data rows, found " << n_rows;
    throw IoError(msg.str());
  }
  return {std::move(x), std::move(y)};
}

}  // namespace

std::pair<SegmentedSeries, SegmentedSeries> load_dataset(
    const std::string& path, const DatasetHeader& header) {
  return header.layout == DatasetLayout::binary_f64le
             ? load_binary(path, header)
             : load_csv(path, header);
}

void save_dataset(const std::string& path, const DatasetHeader& header,
                  const SegmentedSeries& x, const SegmentedSeries& y) {
  if (x.n_segments != header.n_segments || x.n_samples != header.n_samples ||
      x.n_channels != header.n_channels_x || y.n_segments != header.n_segments ||
      y.n_samples != header.n_samples || y.n_channels != header.n_channels_y) {
    throw DimensionError("save_dataset: header does not match series shapes");
  }
  if (header.layout == DatasetLayout::binary_f64le) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write payload file: " + path);
    out.write(reinterpret_cast<const char*>(x.data.data()),
              static_cast<std::streamsize>(x.data.size() * sizeof(double)));
    out.write(reinterpret_cast<const char*>(y.data.data()),
              static_cast<std::streamsize>(y.data.size() * sizeof(double)));
    if (!out) throw IoError("write failed for payload file: " + path);
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write payload file: " + path);
  out << "segment,t,channel_role,channel_index,value\n";
  char buf[32];
  auto emit = [&](std::size_t j, std::size_t t, char role, std::size_t c,
                  double v) {
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out << j << ',' << t << ',' << role << ',' << c << ','
        << std::string_view(buf, static_cast<std::size_t>(ptr - buf)) << '\n';
    (void)ec;
  };
  for (std::size_t j = 0; j < header.n_segments; ++j) {
    for (std::size_t t = 0; t < header.n_samples; ++t) {
      for (std::size_t c = 0; c < header.n_channels_x; ++c) {
        emit(j, t, 'x', c, x.at(j, t, c));
      }
      for (std::size_t c = 0; c < header.n_channels_y; ++c) {
        emit(j, t, 'y', c, y.at(j, t, c));
      }
    }
  }
}

}  // namespace lagcoh
