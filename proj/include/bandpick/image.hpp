#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bandpick {

// Thrown on malformed files or parameters that fail validation. CLI maps
// this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when the data itself is degenerate (e.g. fewer than two labeled
// classes). CLI maps this to exit code 3.
class DegenerateDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Hyperspectral cube, band-sequential layout: all of band 0's rows, then
// band 1, ... Samples are raw 16-bit reflectances.
struct HyperCube {
  int width = 0;
  int height = 0;
  int n_bands = 0;
  std::vector<std::uint16_t> samples;  // size = width*height*n_bands

  std::size_t pixels_per_band() const {
    return static_cast<std::size_t>(width) * height;
  }
  std::uint16_t at(int band, int y, int x) const {
    return samples[static_cast<std::size_t>(band) * pixels_per_band() +
                   static_cast<std::size_t>(y) * width + x];
  }
  std::span<const std::uint16_t> band_span(int band) const {
    return {samples.data() + static_cast<std::size_t>(band) * pixels_per_band(),
            pixels_per_band()};
  }
  void validate() const;
};

// Per-pixel class labels, 0 = unlabeled, 1..n_classes = classes.
struct GroundTruth {
  int width = 0;
  int height = 0;
  int n_classes = 0;
  std::vector<int> labels;  // row-major, size = width*height

  int labeled_count() const;
  // Number of distinct labels >= 1 actually present.
  int classes_present() const;
  void validate() const;
};

// Pixel grid of histogram bin indices in [0, n_bins).
struct QuantizedImage {
  int width = 0;
  int height = 0;
  int n_bins = 0;
  std::vector<int> bins;  // row-major
};

// Real-valued pixel grid; holds band images and the running estimate
// before (re-)quantization.
struct RealImage {
  int width = 0;
  int height = 0;
  std::vector<double> values;  // row-major
};

// Linear min-max binning: bin = floor((v - min) * n_bins / (max - min)),
// with v == max mapped to n_bins-1. A constant image maps to all-zero bins.
QuantizedImage quantize(const RealImage& image, int n_bins);

// One band of the cube as reals, unmodified.
RealImage band_image(const HyperCube& cube, int band);

QuantizedImage quantize_band(const HyperCube& cube, int band, int n_bins);

// Pixel-wise arithmetic mean; dimensions must match.
RealImage average_images(const RealImage& a, const RealImage& b);

// Pixel-wise mean over bands lo..hi inclusive; the estimated reference map
// used when no ground truth is available.
RealImage approx_gt_band_average(const HyperCube& cube, int lo, int hi);

}  // namespace bandpick
