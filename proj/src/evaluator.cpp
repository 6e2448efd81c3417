#include "bandpick/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <json.hpp>

using nlohmann::json;

namespace bandpick {

namespace {

// Fixed Fisher-Yates so split results do not depend on the standard
// library's std::shuffle implementation.
void deterministic_shuffle(std::vector<int>& v, std::mt19937& rng) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[rng() % i]);
}

int train_count(int n, double fraction) {
  int k = static_cast<int>(std::lround(n * fraction));
  return std::clamp(k, 1, n - 1);
}

}  // namespace

Split split_labeled(const GroundTruth& gt, const SplitSpec& spec) {
  if (spec.train_fraction <= 0 || spec.train_fraction >= 1)
    throw ValidationError("train_fraction must lie in (0,1)");
  if (gt.labeled_count() < 2)
    throw DegenerateDataError("split needs at least 2 labeled pixels");

  Split split;
  std::mt19937 rng(spec.seed);
  if (spec.stratified) {
    std::map<int, std::vector<int>> by_class;
    for (std::size_t i = 0; i < gt.labels.size(); ++i)
      if (gt.labels[i] != 0) by_class[gt.labels[i]].push_back(static_cast<int>(i));
    for (auto& [label, idx] : by_class) {
      if (idx.size() == 1) {
        split.train.push_back(idx.front());
        split.warnings.push_back("class " + std::to_string(label) +
                                 " has a single labeled pixel; assigned to train");
        continue;
      }
      deterministic_shuffle(idx, rng);
      const int k = train_count(static_cast<int>(idx.size()), spec.train_fraction);
      split.train.insert(split.train.end(), idx.begin(), idx.begin() + k);
      split.test.insert(split.test.end(), idx.begin() + k, idx.end());
    }
  } else {
    std::vector<int> idx;
    for (std::size_t i = 0; i < gt.labels.size(); ++i)
      if (gt.labels[i] != 0) idx.push_back(static_cast<int>(i));
    deterministic_shuffle(idx, rng);
    const int k = train_count(static_cast<int>(idx.size()), spec.train_fraction);
    split.train.assign(idx.begin(), idx.begin() + k);
    split.test.assign(idx.begin() + k, idx.end());
  }
  return split;
}

void NearestCentroidClassifier::fit(
    const std::vector<std::vector<double>>& features,
    const std::vector<int>& labels) {
  labels_.clear();
  centroids_.clear();
  train_counts_.clear();
  std::map<int, std::pair<std::vector<double>, int>> sums;
  for (std::size_t i = 0; i < features.size(); ++i) {
    auto& [sum, count] = sums[labels[i]];
    if (sum.empty()) sum.assign(features[i].size(), 0.0);
    for (std::size_t d = 0; d < features[i].size(); ++d) sum[d] += features[i][d];
    ++count;
  }
  for (auto& [label, sc] : sums) {
    auto& [sum, count] = sc;
    for (double& s : sum) s /= count;
    labels_.push_back(label);
    centroids_.push_back(std::move(sum));
    train_counts_.push_back(count);
  }
}

int NearestCentroidClassifier::predict(const std::vector<double>& feature) const {
  int best = -1;
  double best_dist = 0;
  for (std::size_t c = 0; c < centroids_.size(); ++c) {
    double dist = 0;
    for (std::size_t d = 0; d < feature.size(); ++d) {
      const double diff = feature[d] - centroids_[c][d];
      dist += diff * diff;
    }
    const bool better =
        best < 0 || dist < best_dist ||
        (dist == best_dist && train_counts_[c] > train_counts_[best]);
    if (better) {
      best = static_cast<int>(c);
      best_dist = dist;
    }
  }
  return labels_[best];
}

EvalReport evaluate_subset(const HyperCube& cube, const GroundTruth& gt,
                           const std::vector<int>& bands, const SplitSpec& spec) {
  NearestCentroidClassifier nc;
  return evaluate_subset(cube, gt, bands, spec, nc);
}

EvalReport evaluate_subset(const HyperCube& cube, const GroundTruth& gt,
                           const std::vector<int>& bands, const SplitSpec& spec,
                           Classifier& classifier) {
  if (bands.empty()) throw ValidationError("empty band list");
  for (int b : bands)
    if (b < 0 || b >= cube.n_bands)
      throw ValidationError("band index " + std::to_string(b) + " out of range");
  if (cube.width != gt.width || cube.height != gt.height)
    throw ValidationError("cube and ground truth dimensions differ");

  const Split split = split_labeled(gt, spec);

  auto raw_vector = [&](int pixel) {
    std::vector<double> v(bands.size());
    for (std::size_t d = 0; d < bands.size(); ++d)
      v[d] = cube.band_span(bands[d])[static_cast<std::size_t>(pixel)];
    return v;
  };

  // Train-set statistics only; zero-variance bands get stddev 1.
  std::vector<double> mean(bands.size(), 0.0), stddev(bands.size(), 0.0);
  for (int p : split.train) {
    const auto v = raw_vector(p);
    for (std::size_t d = 0; d < v.size(); ++d) mean[d] += v[d];
  }
  for (double& m : mean) m /= static_cast<double>(split.train.size());
  for (int p : split.train) {
    const auto v = raw_vector(p);
    for (std::size_t d = 0; d < v.size(); ++d) {
      const double diff = v[d] - mean[d];
      stddev[d] += diff * diff;
    }
  }
  for (double& s : stddev) {
    s = std::sqrt(s / static_cast<double>(split.train.size()));
    if (s == 0) s = 1;
  }
  auto standardized = [&](int pixel) {
    auto v = raw_vector(pixel);
    for (std::size_t d = 0; d < v.size(); ++d) v[d] = (v[d] - mean[d]) / stddev[d];
    return v;
  };

  std::vector<std::vector<double>> train_features;
  std::vector<int> train_labels;
  train_features.reserve(split.train.size());
  for (int p : split.train) {
    train_features.push_back(standardized(p));
    train_labels.push_back(gt.labels[static_cast<std::size_t>(p)]);
  }
  classifier.fit(train_features, train_labels);

  EvalReport report;
  report.bands_used = bands;
  report.split = spec;
  report.warnings = split.warnings;
  report.n_train = static_cast<int>(split.train.size());
  report.n_test = static_cast<int>(split.test.size());

  std::map<int, int> correct;
  for (int p : split.test) {
    const int truth = gt.labels[static_cast<std::size_t>(p)];
    const int predicted = classifier.predict(standardized(p));
    ++report.per_class_test_count[truth];
    if (predicted == truth) ++correct[truth];
  }
  int total_correct = 0;
  for (const auto& [label, count] : report.per_class_test_count) {
    const int ok = correct.count(label) ? correct[label] : 0;
    total_correct += ok;
    report.per_class_accuracy[label] = 100.0 * ok / count;
  }
  report.overall_accuracy =
      report.n_test > 0 ? 100.0 * total_correct / report.n_test : 0.0;
  return report;
}

std::string EvalReport::to_json() const {
  json jclass = json::object();
  for (const auto& [label, acc] : per_class_accuracy)
    jclass[std::to_string(label)] = acc;
  json jcounts = json::object();
  for (const auto& [label, n] : per_class_test_count)
    jcounts[std::to_string(label)] = n;
  const json j = {{"overall_accuracy", overall_accuracy},
                  {"per_class_accuracy", jclass},
                  {"per_class_test_count", jcounts},
                  {"n_train", n_train},
                  {"n_test", n_test},
                  {"bands_used", bands_used},
                  {"split",
                   {{"train_fraction", split.train_fraction},
                    {"seed", split.seed},
                    {"stratified", split.stratified}}},
                  {"warnings", warnings}};
  return j.dump(2) + "\n";
}

std::string EvalReport::to_csv() const {
  // FNV-1a over the band list, so sweep rows can be joined on the subset.
  std::uint64_t hash = 14695981039346656037ull;
  for (int b : bands_used) {
    hash ^= static_cast<std::uint64_t>(b);
    hash *= 1099511628211ull;
  }
  std::ostringstream out;
  out << "bands_hash,n_bands,accuracy\n";
  out << std::hex << hash << std::dec << ',' << bands_used.size() << ',';
  out.precision(17);
  out << overall_accuracy << '\n';
  return out.str();
}

}  // namespace bandpick
