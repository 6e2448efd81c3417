#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bandpick/image.hpp"
#include "bandpick/infotheory.hpp"

namespace bandpick {

struct SelectionConfig {
  double threshold = 0.0;   // Th; may be negative to admit redundancy
  int max_bands = 1;        // X, cap on |selected|
  int n_bins = 256;
  bool labeled_only = true;
  std::optional<std::vector<int>> candidate_bands;  // default: all bands

  void validate() const {
    if (max_bands < 1) throw ValidationError("max_bands must be >= 1");
    if (n_bins < 2) throw ValidationError("n_bins must be >= 2");
  }
};

struct BandScore {
  int band = 0;
  double mi_with_gt = 0;
};

struct TrajectoryEntry {
  int band = 0;
  double mi = 0;  // MI of the estimate after this band's decision
  bool accepted = false;
};

struct SelectionResult {
  std::vector<int> selected;              // acceptance order
  std::vector<TrajectoryEntry> trajectory;  // every examined band, once
  double final_mi = 0;
  SelectionConfig config;

  std::string to_json() const;
  std::string to_csv() const;  // two columns: band, accepted
};

// Per-band MI with the reference, sorted descending; equal scores break
// toward the lower band index.
std::vector<BandScore> rank_bands(const HyperCube& cube, const GroundTruth& gt,
                                  const SelectionConfig& cfg);
std::vector<BandScore> rank_bands(const HyperCube& cube,
                                  const QuantizedImage& reference,
                                  const SelectionConfig& cfg);

// Greedy growth of the estimated reference map: seed with the top-ranked
// band, then accept each next band only if averaging it in raises
// MI(estimate, GT) by more than the threshold.
SelectionResult select_bands(const HyperCube& cube, const GroundTruth& gt,
                             const SelectionConfig& cfg);

// The selector's state transition, separately testable.
RealImage build_estimated_reference(const RealImage& prev, const RealImage& band);

}  // namespace bandpick
