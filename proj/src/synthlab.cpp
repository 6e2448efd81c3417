#include "bandpick/synthlab.hpp"

#include <cmath>
#include <random>
#include <set>

#include <json.hpp>

using nlohmann::json;

namespace bandpick {

GroundTruth make_gt(const SceneSpec& spec) {
  if (spec.width <= 0 || spec.height <= 0)
    throw ValidationError("scene dimensions must be positive");
  GroundTruth gt;
  gt.width = spec.width;
  gt.height = spec.height;
  gt.n_classes = spec.n_classes > 0 ? spec.n_classes : 1;
  gt.labels.assign(static_cast<std::size_t>(spec.width) * spec.height, 0);
  std::vector<std::uint8_t> assigned(gt.labels.size(), 0);
  for (const Region& r : spec.regions) {
    if (r.x < 0 || r.y < 0 || r.w < 0 || r.h < 0 || r.x + r.w > spec.width ||
        r.y + r.h > spec.height)
      throw ValidationError("region outside scene bounds");
    if (r.label < 0 || r.label > gt.n_classes)
      throw ValidationError("region label " + std::to_string(r.label) +
                            " exceeds n_classes");
    for (int y = r.y; y < r.y + r.h; ++y) {
      for (int x = r.x; x < r.x + r.w; ++x) {
        const std::size_t i = static_cast<std::size_t>(y) * spec.width + x;
        if (assigned[i] && gt.labels[i] != r.label)
          throw ValidationError("overlapping regions assign conflicting labels at (" +
                                std::to_string(x) + "," + std::to_string(y) + ")");
        gt.labels[i] = r.label;
        assigned[i] = 1;
      }
    }
  }
  return gt;
}

IndicatorBand make_indicator_band(const GroundTruth& gt,
                                  const std::map<int, double>& class_fills,
                                  double background, double noise_amplitude,
                                  std::uint32_t seed) {
  if (class_fills.empty())
    throw ValidationError("indicator band needs at least one class");
  IndicatorBand out;
  out.image.width = gt.width;
  out.image.height = gt.height;
  out.image.values.resize(gt.labels.size());

  std::set<int> present(gt.labels.begin(), gt.labels.end());
  for (const auto& [label, fill] : class_fills) {
    (void)fill;
    if (!present.count(label))
      out.warnings.push_back("class " + std::to_string(label) +
                             " not present in ground truth");
  }

  std::mt19937 rng(seed);
  auto noise = [&]() {
    if (noise_amplitude == 0) return 0.0;
    const double u = rng() / 4294967296.0;  // [0,1)
    return noise_amplitude * (2.0 * u - 1.0);
  };
  for (std::size_t i = 0; i < gt.labels.size(); ++i) {
    const auto it = class_fills.find(gt.labels[i]);
    out.image.values[i] = (it != class_fills.end() ? it->second : background) + noise();
  }
  return out;
}

HyperCube pack_cube(const std::vector<RealImage>& bands) {
  if (bands.empty()) throw ValidationError("cannot pack an empty band list");
  HyperCube cube;
  cube.width = bands.front().width;
  cube.height = bands.front().height;
  cube.n_bands = static_cast<int>(bands.size());
  cube.samples.reserve(cube.pixels_per_band() * bands.size());
  for (const RealImage& b : bands) {
    if (b.width != cube.width || b.height != cube.height)
      throw ValidationError("band dimension mismatch while packing cube");
    for (double v : b.values) {
      const double r = std::round(v);
      if (r < 0 || r > 65535)
        throw ValidationError("band value " + std::to_string(v) +
                              " does not fit in u16");
      cube.samples.push_back(static_cast<std::uint16_t>(r));
    }
  }
  return cube;
}

Table1Scenario table1_scenario(int size) {
  if (size < 8) throw ValidationError("table1 scene size must be >= 8");
  SceneSpec spec;
  spec.width = spec.height = size;
  spec.n_classes = 14;
  const int rows11 = static_cast<int>(size * 0.4);
  const int rows14 = static_cast<int>(size * 0.2);
  spec.regions = {
      {0, 0, size, rows11, 11},
      {0, rows11, size, rows14, 14},
      {0, rows11 + rows14, size, size - rows11 - rows14, 1},
  };
  Table1Scenario sc;
  sc.gt = make_gt(spec);
  const RealImage a =
      make_indicator_band(sc.gt, {{11, 4000}}, 1000, 0, 0).image;
  const RealImage b =
      make_indicator_band(sc.gt, {{14, 6000}}, 1000, 0, 0).image;
  const RealImage c =
      make_indicator_band(sc.gt, {{11, 4000}, {14, 6000}}, 1000, 0, 0).image;
  sc.cube = pack_cube({a, b, c});
  return sc;
}

QuadrantScenario quadrant_scenario(int size, int n_constant) {
  if (size < 4 || size % 2 != 0)
    throw ValidationError("quadrant scene size must be even and >= 4");
  SceneSpec spec;
  spec.width = spec.height = size;
  spec.n_classes = 4;
  const int h = size / 2;
  spec.regions = {{0, 0, h, h, 1}, {h, 0, h, h, 2}, {0, h, h, h, 3}, {h, h, h, h, 4}};
  QuadrantScenario sc;
  sc.gt = make_gt(spec);
  std::vector<RealImage> bands;
  // Each informative band lights up a different pair of classes; any two of
  // them jointly separate all four quadrants.
  bands.push_back(
      make_indicator_band(sc.gt, {{1, 4000.0}, {2, 4000.0}}, 1000, 0, 0).image);
  bands.push_back(
      make_indicator_band(sc.gt, {{1, 4000.0}, {3, 4000.0}}, 1000, 0, 0).image);
  bands.push_back(
      make_indicator_band(sc.gt, {{1, 4000.0}, {4, 4000.0}}, 1000, 0, 0).image);
  for (int i = 0; i < n_constant; ++i) {
    RealImage flat;
    flat.width = flat.height = size;
    flat.values.assign(sc.gt.labels.size(), 2000.0);
    bands.push_back(flat);
  }
  sc.cube = pack_cube(bands);
  sc.n_constant = n_constant;
  return sc;
}

SceneFile parse_scene_file(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed scene JSON: ") + e.what());
  }
  SceneFile f;
  try {
    f.spec.width = j.at("width").get<int>();
    f.spec.height = j.at("height").get<int>();
    f.spec.n_classes = j.value("classes", 0);
    for (const auto& jr : j.at("regions")) {
      Region r;
      r.x = jr.at("x").get<int>();
      r.y = jr.at("y").get<int>();
      r.w = jr.at("w").get<int>();
      r.h = jr.at("h").get<int>();
      r.label = jr.at("label").get<int>();
      f.spec.regions.push_back(r);
      f.spec.n_classes = std::max(f.spec.n_classes, r.label);
    }
    for (const auto& jb : j.at("bands")) {
      SceneFile::BandRecipe b;
      for (const auto& [key, val] : jb.at("fills").items())
        b.class_fills[std::stoi(key)] = val.get<double>();
      b.background = jb.value("background", 0.0);
      b.noise_amplitude = jb.value("noise", 0.0);
      b.seed = jb.value("seed", 0u);
      f.bands.push_back(std::move(b));
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid scene spec: ") + e.what());
  }
  if (f.bands.empty()) throw ValidationError("scene spec defines no bands");
  return f;
}

}  // namespace bandpick
