#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bandpick/image.hpp"

namespace bandpick {

struct SplitSpec {
  double train_fraction = 0.5;
  std::uint32_t seed = 0;
  bool stratified = true;
};

struct Split {
  std::vector<int> train;  // linear pixel indices
  std::vector<int> test;
  std::vector<std::string> warnings;  // e.g. single-pixel class forced to train
};

// Disjoint, exhaustive split of labeled pixels; deterministic given seed.
// When stratified, each class with >= 2 pixels contributes at least one
// pixel to each side; a single-pixel class goes to train with a warning.
Split split_labeled(const GroundTruth& gt, const SplitSpec& spec);

struct EvalReport {
  double overall_accuracy = 0;                 // percent
  std::map<int, double> per_class_accuracy;    // label -> percent
  std::map<int, int> per_class_test_count;
  int n_train = 0;
  int n_test = 0;
  std::vector<int> bands_used;
  SplitSpec split;
  std::vector<std::string> warnings;

  std::string to_json() const;
  std::string to_csv() const;  // one row: bands_hash, n_bands, accuracy
};

// Classifier interface so the nearest-centroid default can be swapped out.
// Feature vectors are band-restricted, train-standardized pixel vectors.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual void fit(const std::vector<std::vector<double>>& features,
                   const std::vector<int>& labels) = 0;
  virtual int predict(const std::vector<double>& feature) const = 0;
};

class NearestCentroidClassifier : public Classifier {
 public:
  void fit(const std::vector<std::vector<double>>& features,
           const std::vector<int>& labels) override;
  int predict(const std::vector<double>& feature) const override;

 private:
  std::vector<int> labels_;
  std::vector<std::vector<double>> centroids_;
  std::vector<int> train_counts_;
};

// Train on train pixels, predict test pixels, report accuracies. Features
// are standardized per band by train mean/stddev (stddev 0 becomes 1).
EvalReport evaluate_subset(const HyperCube& cube, const GroundTruth& gt,
                           const std::vector<int>& bands, const SplitSpec& spec);

EvalReport evaluate_subset(const HyperCube& cube, const GroundTruth& gt,
                           const std::vector<int>& bands, const SplitSpec& spec,
                           Classifier& classifier);

}  // namespace bandpick
