#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bandpick/image.hpp"

namespace bandpick {

// A pixel grid viewed as a discrete random variable with n_states states.
struct DiscreteGrid {
  int width = 0;
  int height = 0;
  int n_states = 0;
  const std::vector<int>* values = nullptr;

  static DiscreteGrid of(const QuantizedImage& q) {
    return {q.width, q.height, q.n_bins, &q.bins};
  }
  static DiscreteGrid of(const GroundTruth& gt) {
    return {gt.width, gt.height, gt.n_classes + 1, &gt.labels};
  }
};

// Optional per-pixel inclusion mask (row-major, nonzero = include).
using PixelMask = std::vector<std::uint8_t>;

// Empirical joint counts; cell (i,j) = pixels with a=i, b=j passing the mask.
struct JointHistogram {
  int n_a = 0;
  int n_b = 0;
  std::vector<std::int64_t> counts;  // row-major, n_a x n_b
  std::int64_t total = 0;

  std::int64_t at(int i, int j) const { return counts[static_cast<std::size_t>(i) * n_b + j]; }
  std::vector<std::int64_t> marginal_a() const;
  std::vector<std::int64_t> marginal_b() const;
};

// Mask keeping only labeled pixels (label != 0).
PixelMask labeled_mask(const GroundTruth& gt);

JointHistogram joint_histogram(const DiscreteGrid& a, const DiscreteGrid& b,
                               const PixelMask* mask = nullptr);

// H = -sum p log2 p over nonzero cells, in bits.
double entropy(const std::vector<std::int64_t>& counts);

double mutual_information(const JointHistogram& hist);
double mutual_information(const DiscreteGrid& a, const DiscreteGrid& b,
                          const PixelMask* mask = nullptr);

// MI between a ground truth (labeled pixels only by default) and a
// quantized image.
double mutual_information(const GroundTruth& gt, const QuantizedImage& x,
                          bool labeled_only = true);

// H(C|X) = H(C) - I(C;X).
double conditional_entropy(const GroundTruth& c, const QuantizedImage& x,
                           bool labeled_only = true);

// Error-probability bounds derived from H(C|X):
//   lower = max(0, (H(C|X) - 1) / log2(Nc)),  upper = H(C|X).
// Nc is the number of labeled classes actually present. Raw entropies are
// reported so callers can rescale the upper bound under other conventions.
struct FanoBounds {
  double h_c = 0;
  double h_c_given_x = 0;
  double mi = 0;
  int n_classes = 0;
  double lower = 0;
  double upper = 0;
};

FanoBounds fano_bounds(const GroundTruth& c, const QuantizedImage& x,
                       bool labeled_only = true);

}  // namespace bandpick
