#include "bandpick/image.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace bandpick {

void HyperCube::validate() const {
  if (width <= 0 || height <= 0 || n_bands <= 0)
    throw ValidationError("cube dimensions must be positive");
  const std::size_t expected = pixels_per_band() * n_bands;
  if (samples.size() != expected)
    throw ValidationError("cube sample count " + std::to_string(samples.size()) +
                          " does not match dimensions (expected " +
                          std::to_string(expected) + ")");
}

int GroundTruth::labeled_count() const {
  return static_cast<int>(std::count_if(labels.begin(), labels.end(),
                                        [](int l) { return l != 0; }));
}

int GroundTruth::classes_present() const {
  std::set<int> seen;
  for (int l : labels)
    if (l != 0) seen.insert(l);
  return static_cast<int>(seen.size());
}

void GroundTruth::validate() const {
  if (width <= 0 || height <= 0 || n_classes <= 0)
    throw ValidationError("ground truth dimensions must be positive");
  if (labels.size() != static_cast<std::size_t>(width) * height)
    throw ValidationError("ground truth label count does not match dimensions");
  for (int l : labels)
    if (l < 0 || l > n_classes)
      throw ValidationError("ground truth label " + std::to_string(l) +
                            " outside 0.." + std::to_string(n_classes));
}

QuantizedImage quantize(const RealImage& image, int n_bins) {
  if (n_bins < 1) throw ValidationError("n_bins must be >= 1");
  QuantizedImage out;
  out.width = image.width;
  out.height = image.height;
  out.n_bins = n_bins;
  out.bins.resize(image.values.size(), 0);
  const auto [mn_it, mx_it] =
      std::minmax_element(image.values.begin(), image.values.end());
  if (image.values.empty()) return out;
  const double mn = *mn_it, mx = *mx_it;
  if (mn == mx) return out;  // constant image: all bin 0
  const double span = mx - mn;
  for (std::size_t i = 0; i < image.values.size(); ++i) {
    const double v = image.values[i];
    int b = static_cast<int>(std::floor((v - mn) * n_bins / span));
    if (b >= n_bins) b = n_bins - 1;  // v == max
    out.bins[i] = b;
  }
  return out;
}

RealImage band_image(const HyperCube& cube, int band) {
  if (band < 0 || band >= cube.n_bands)
    throw ValidationError("band index " + std::to_string(band) +
                          " out of range (cube has " +
                          std::to_string(cube.n_bands) + " bands)");
  RealImage out;
  out.width = cube.width;
  out.height = cube.height;
  const auto span = cube.band_span(band);
  out.values.assign(span.begin(), span.end());
  return out;
}

QuantizedImage quantize_band(const HyperCube& cube, int band, int n_bins) {
  return quantize(band_image(cube, band), n_bins);
}

RealImage average_images(const RealImage& a, const RealImage& b) {
  if (a.width != b.width || a.height != b.height)
    throw ValidationError("image dimension mismatch in average");
  RealImage out;
  out.width = a.width;
  out.height = a.height;
  out.values.resize(a.values.size());
  for (std::size_t i = 0; i < a.values.size(); ++i)
    out.values[i] = (a.values[i] + b.values[i]) / 2.0;
  return out;
}

RealImage approx_gt_band_average(const HyperCube& cube, int lo, int hi) {
  if (lo < 0 || hi >= cube.n_bands || lo > hi)
    throw ValidationError("band range " + std::to_string(lo) + ":" +
                          std::to_string(hi) + " invalid for cube with " +
                          std::to_string(cube.n_bands) + " bands");
  RealImage out;
  out.width = cube.width;
  out.height = cube.height;
  out.values.assign(cube.pixels_per_band(), 0.0);
  for (int b = lo; b <= hi; ++b) {
    const auto span = cube.band_span(b);
    for (std::size_t i = 0; i < span.size(); ++i) out.values[i] += span[i];
  }
  const double n = hi - lo + 1;
  for (double& v : out.values) v /= n;
  return out;
}

}  // namespace bandpick
