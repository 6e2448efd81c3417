#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bandpick/image.hpp"

namespace bandpick {

struct Region {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;
  int label = 0;  // 0 allowed: explicitly unlabeled
};

struct SceneSpec {
  int width = 0;
  int height = 0;
  int n_classes = 0;
  std::vector<Region> regions;
  std::uint32_t noise_seed = 0;
  double noise_amplitude = 0;
};

// Deterministic label grid from the region layout; unassigned pixels are 0.
// Overlapping regions with conflicting labels are an error.
GroundTruth make_gt(const SceneSpec& spec);

struct IndicatorBand {
  RealImage image;
  std::vector<std::string> warnings;  // e.g. a listed class absent from the GT
};

// Pixels of the listed classes get their fill value (plus seeded uniform
// noise of the given amplitude); all other pixels get the background value.
IndicatorBand make_indicator_band(const GroundTruth& gt,
                                  const std::map<int, double>& class_fills,
                                  double background, double noise_amplitude,
                                  std::uint32_t seed);

// Desk-scale analog of the paper's synthetic experiment: a two-class scene
// (labels 11 and 14, remainder label 1) and a 3-band cube where band A
// lights up class 11, band B class 14, and band C both with distinct fills.
struct Table1Scenario {
  HyperCube cube;  // bands [A, B, C]
  GroundTruth gt;
  int band_a = 0;
  int band_b = 1;
  int band_c = 2;
};

// size x size scene; class 11 covers the top 40% of rows, class 14 the next
// 20%, label 1 the rest. Fill values are well-separated multiples of 1000 so
// 256-bin quantization keeps region values in distinct bins.
Table1Scenario table1_scenario(int size = 64);

// Scene with four equal quadrant classes, three binary indicator bands
// whose pairwise combinations separate all classes, and n_constant flat
// bands. Used to exercise selection + evaluation end to end.
struct QuadrantScenario {
  HyperCube cube;
  GroundTruth gt;
  int n_informative = 3;
  int n_constant = 0;
};

QuadrantScenario quadrant_scenario(int size = 32, int n_constant = 3);

// Pack real-valued band images into a u16 BSQ cube. Values are rounded and
// must fit in 16 bits.
HyperCube pack_cube(const std::vector<RealImage>& bands);

// Parse a SceneSpec with per-band recipes from JSON (the CLI's --spec file).
struct SceneFile {
  SceneSpec spec;
  struct BandRecipe {
    std::map<int, double> class_fills;
    double background = 0;
    double noise_amplitude = 0;
    std::uint32_t seed = 0;
  };
  std::vector<BandRecipe> bands;
};

SceneFile parse_scene_file(const std::string& json_text);

}  // namespace bandpick
