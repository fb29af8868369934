#pragma once

#include <string>

#include "lagcoh/types.hpp"

namespace lagcoh {

enum class DatasetLayout { csv_long, binary_f64le };

std::string to_string(DatasetLayout layout);
DatasetLayout layout_from_string(const std::string& name);

struct DatasetHeader {
  std::size_t n_segments = 0;
  std::size_t n_samples = 0;
  std::size_t n_channels_x = 0;
  std::size_t n_channels_y = 0;
  std::optional<double> sample_rate_hz;
  DatasetLayout layout = DatasetLayout::binary_f64le;
  std::vector<std::string> channel_names_x;  // optional, may be empty
  std::vector<std::string> channel_names_y;
};

DatasetHeader read_header(const std::string& path);
void write_header(const std::string& path, const DatasetHeader& header);

// Loads the payload under the header's declared layout.
//   binary_f64le — little-endian doubles, row-major (segment, time, channel),
//                  X block then Y block.
//   csv_long     — columns segment,t,channel_role,channel_index,value with a
//                  header line; indices 0-based, channel_role in {x, y}.
// Parse errors cite the line (CSV) or byte count (binary); NaN is rejected
// with its location.
std::pair<SegmentedSeries, SegmentedSeries> load_dataset(
    const std::string& path, const DatasetHeader& header);

void save_dataset(const std::string& path, const DatasetHeader& header,
                  const SegmentedSeries& x, const SegmentedSeries& y);

}  // namespace lagcoh
