#include "bandpick/cube_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace bandpick {

namespace {

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError("malformed JSON in " + path.string() + ": " + e.what());
  }
  return j;
}

int positive_field(const json& j, const char* key, const fs::path& path) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw ValidationError("header " + path.string() + ": missing integer field '" +
                          key + "'");
  const long long v = j[key].get<long long>();
  if (v <= 0 || v > 1 << 20)
    throw ValidationError("header " + path.string() + ": field '" + key +
                          "' out of range: " + std::to_string(v));
  return static_cast<int>(v);
}

void expect_field(const json& j, const char* key, const std::string& want,
                  const fs::path& path) {
  if (!j.contains(key) || j[key].get<std::string>() != want)
    throw ValidationError("header " + path.string() + ": field '" + key +
                          "' must be \"" + want + "\"");
}

}  // namespace

HyperCube load_cube(const fs::path& header_path) {
  const json j = read_json_file(header_path);
  HyperCube cube;
  cube.width = positive_field(j, "width", header_path);
  cube.height = positive_field(j, "height", header_path);
  cube.n_bands = positive_field(j, "bands", header_path);
  expect_field(j, "dtype", "u16", header_path);
  expect_field(j, "interleave", "bsq", header_path);
  expect_field(j, "endian", "little", header_path);
  if (!j.contains("raw") || !j["raw"].is_string())
    throw ValidationError("header " + header_path.string() +
                          ": missing string field 'raw'");
  const fs::path raw_path =
      header_path.parent_path() / j["raw"].get<std::string>();

  std::ifstream raw(raw_path, std::ios::binary);
  if (!raw) throw ValidationError("cannot open raw file " + raw_path.string());
  raw.seekg(0, std::ios::end);
  const std::streamoff actual = raw.tellg();
  raw.seekg(0);
  const std::size_t n_samples =
      cube.pixels_per_band() * static_cast<std::size_t>(cube.n_bands);
  const std::streamoff expected = static_cast<std::streamoff>(n_samples * 2);
  if (actual != expected)
    throw ValidationError("corrupt raw file " + raw_path.string() + ": expected " +
                          std::to_string(expected) + " bytes, found " +
                          std::to_string(actual));
  std::vector<unsigned char> bytes(static_cast<std::size_t>(actual));
  raw.read(reinterpret_cast<char*>(bytes.data()), actual);
  if (!raw)
    throw ValidationError("read error on raw file " + raw_path.string());
  cube.samples.resize(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i)
    cube.samples[i] = static_cast<std::uint16_t>(bytes[2 * i] |
                                                 (bytes[2 * i + 1] << 8));
  cube.validate();
  return cube;
}

void write_cube(const HyperCube& cube, const fs::path& header_path) {
  cube.validate();
  fs::path raw_name = header_path.filename();
  raw_name.replace_extension(".raw");
  json j = {{"width", cube.width},  {"height", cube.height},
            {"bands", cube.n_bands}, {"dtype", "u16"},
            {"interleave", "bsq"},   {"endian", "little"},
            {"raw", raw_name.string()}};
  atomic_write_text(header_path, j.dump(2) + "\n");

  std::string bytes;
  bytes.reserve(cube.samples.size() * 2);
  for (std::uint16_t s : cube.samples) {
    bytes.push_back(static_cast<char>(s & 0xff));
    bytes.push_back(static_cast<char>(s >> 8));
  }
  atomic_write_text(header_path.parent_path() / raw_name, bytes);
}

GroundTruth load_gt(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  GroundTruth gt;
  int declared_classes = -1;
  std::string line;
  int row = 0;
  std::vector<std::vector<int>> rows;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first && line.rfind("#classes=", 0) == 0) {
      declared_classes = std::stoi(line.substr(9));
      first = false;
      continue;
    }
    first = false;
    if (line.empty()) continue;
    std::vector<int> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      int value = 0;
      const char* begin = cell.data();
      const char* end = begin + cell.size();
      while (begin < end && *begin == ' ') ++begin;
      auto [ptr, ec] = std::from_chars(begin, end, value);
      if (ec != std::errc{} || ptr != end)
        throw ValidationError("ground truth " + path.string() + " row " +
                              std::to_string(row) + ": non-integer cell '" +
                              cell + "'");
      if (value < 0)
        throw ValidationError("ground truth " + path.string() + " row " +
                              std::to_string(row) + ": negative label");
      cells.push_back(value);
    }
    if (!rows.empty() && cells.size() != rows.front().size())
      throw ValidationError("ground truth " + path.string() + " row " +
                            std::to_string(row) + ": ragged row (" +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(rows.front().size()) + ")");
    rows.push_back(std::move(cells));
    ++row;
  }
  if (rows.empty())
    throw ValidationError("ground truth " + path.string() + " is empty");
  gt.height = static_cast<int>(rows.size());
  gt.width = static_cast<int>(rows.front().size());
  for (auto& r : rows) gt.labels.insert(gt.labels.end(), r.begin(), r.end());
  const int max_label = *std::max_element(gt.labels.begin(), gt.labels.end());
  gt.n_classes = declared_classes > 0 ? declared_classes
                                      : std::max(max_label, 1);
  gt.validate();
  return gt;
}

void write_gt(const GroundTruth& gt, const fs::path& path) {
  gt.validate();
  std::ostringstream out;
  out << "#classes=" << gt.n_classes << "\n";
  for (int y = 0; y < gt.height; ++y) {
    for (int x = 0; x < gt.width; ++x) {
      if (x) out << ',';
      out << gt.labels[static_cast<std::size_t>(y) * gt.width + x];
    }
    out << '\n';
  }
  atomic_write_text(path, out.str());
}

void write_real_csv(const RealImage& image, const fs::path& path) {
  std::ostringstream out;
  out.precision(17);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      if (x) out << ',';
      out << image.values[static_cast<std::size_t>(y) * image.width + x];
    }
    out << '\n';
  }
  atomic_write_text(path, out.str());
}

void atomic_write_text(const fs::path& path, const std::string& text) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw ValidationError("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

}  // namespace bandpick
