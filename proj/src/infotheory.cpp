#include "bandpick/infotheory.hpp"

#include <cmath>

namespace bandpick {

std::vector<std::int64_t> JointHistogram::marginal_a() const {
  std::vector<std::int64_t> m(n_a, 0);
  for (int i = 0; i < n_a; ++i)
    for (int j = 0; j < n_b; ++j) m[i] += at(i, j);
  return m;
}

std::vector<std::int64_t> JointHistogram::marginal_b() const {
  std::vector<std::int64_t> m(n_b, 0);
  for (int i = 0; i < n_a; ++i)
    for (int j = 0; j < n_b; ++j) m[j] += at(i, j);
  return m;
}

PixelMask labeled_mask(const GroundTruth& gt) {
  PixelMask mask(gt.labels.size());
  for (std::size_t i = 0; i < gt.labels.size(); ++i)
    mask[i] = gt.labels[i] != 0 ? 1 : 0;
  return mask;
}

JointHistogram joint_histogram(const DiscreteGrid& a, const DiscreteGrid& b,
                               const PixelMask* mask) {
  if (a.width != b.width || a.height != b.height)
    throw ValidationError("joint histogram: dimension mismatch");
  const std::size_t n = a.values->size();
  if (mask && mask->size() != n)
    throw ValidationError("joint histogram: mask size mismatch");
  JointHistogram hist;
  hist.n_a = a.n_states;
  hist.n_b = b.n_states;
  hist.counts.assign(static_cast<std::size_t>(hist.n_a) * hist.n_b, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (mask && !(*mask)[i]) continue;
    const int va = (*a.values)[i];
    const int vb = (*b.values)[i];
    ++hist.counts[static_cast<std::size_t>(va) * hist.n_b + vb];
    ++hist.total;
  }
  if (hist.total == 0)
    throw ValidationError("joint histogram: mask selects no pixels");
  return hist;
}

double entropy(const std::vector<std::int64_t>& counts) {
  std::int64_t total = 0;
  for (std::int64_t c : counts) total += c;
  if (total <= 0) throw ValidationError("entropy of all-zero counts");
  double h = 0;
  for (std::int64_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

double mutual_information(const JointHistogram& hist) {
  const auto ma = hist.marginal_a();
  const auto mb = hist.marginal_b();
  const double total = static_cast<double>(hist.total);
  double mi = 0;
  for (int i = 0; i < hist.n_a; ++i) {
    for (int j = 0; j < hist.n_b; ++j) {
      const std::int64_t c = hist.at(i, j);
      if (c == 0) continue;
      const double pij = c / total;
      const double pi = ma[i] / total;
      const double pj = mb[j] / total;
      mi += pij * std::log2(pij / (pi * pj));
    }
  }
  return mi;
}

double mutual_information(const DiscreteGrid& a, const DiscreteGrid& b,
                          const PixelMask* mask) {
  return mutual_information(joint_histogram(a, b, mask));
}

double mutual_information(const GroundTruth& gt, const QuantizedImage& x,
                          bool labeled_only) {
  if (labeled_only) {
    const PixelMask mask = labeled_mask(gt);
    return mutual_information(DiscreteGrid::of(gt), DiscreteGrid::of(x), &mask);
  }
  return mutual_information(DiscreteGrid::of(gt), DiscreteGrid::of(x));
}

double conditional_entropy(const GroundTruth& c, const QuantizedImage& x,
                           bool labeled_only) {
  const PixelMask mask = labeled_mask(c);
  const PixelMask* m = labeled_only ? &mask : nullptr;
  const JointHistogram hist =
      joint_histogram(DiscreteGrid::of(c), DiscreteGrid::of(x), m);
  return entropy(hist.marginal_a()) - mutual_information(hist);
}

FanoBounds fano_bounds(const GroundTruth& c, const QuantizedImage& x,
                       bool labeled_only) {
  const int present = c.classes_present();
  if (present < 2)
    throw DegenerateDataError(
        "fano bounds need at least 2 labeled classes, found " +
        std::to_string(present));
  const PixelMask mask = labeled_mask(c);
  const PixelMask* m = labeled_only ? &mask : nullptr;
  const JointHistogram hist =
      joint_histogram(DiscreteGrid::of(c), DiscreteGrid::of(x), m);
  FanoBounds out;
  out.h_c = entropy(hist.marginal_a());
  out.mi = mutual_information(hist);
  out.h_c_given_x = out.h_c - out.mi;
  out.n_classes = present;
  out.lower = std::max(0.0, (out.h_c_given_x - 1.0) / std::log2(present));
  out.upper = out.h_c_given_x;
  return out;
}

}  // namespace bandpick
