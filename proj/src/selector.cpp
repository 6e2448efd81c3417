#include "bandpick/selector.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

using nlohmann::json;

namespace bandpick {

namespace {

std::vector<int> candidates_of(const HyperCube& cube, const SelectionConfig& cfg) {
  std::vector<int> bands;
  if (cfg.candidate_bands) {
    bands = *cfg.candidate_bands;
    for (int b : bands)
      if (b < 0 || b >= cube.n_bands)
        throw ValidationError("candidate band " + std::to_string(b) +
                              " out of range");
  } else {
    bands.resize(cube.n_bands);
    for (int b = 0; b < cube.n_bands; ++b) bands[b] = b;
  }
  if (bands.empty()) throw ValidationError("empty candidate band set");
  return bands;
}

std::vector<BandScore> rank_impl(const HyperCube& cube, const DiscreteGrid& ref,
                                 const PixelMask* mask,
                                 const SelectionConfig& cfg) {
  cfg.validate();
  if (cube.width != ref.width || cube.height != ref.height)
    throw ValidationError("cube and reference dimensions differ");
  std::vector<BandScore> scores;
  for (int b : candidates_of(cube, cfg)) {
    const QuantizedImage q = quantize_band(cube, b, cfg.n_bins);
    scores.push_back({b, mutual_information(ref, DiscreteGrid::of(q), mask)});
  }
  std::stable_sort(scores.begin(), scores.end(),
                   [](const BandScore& a, const BandScore& b) {
                     if (a.mi_with_gt != b.mi_with_gt)
                       return a.mi_with_gt > b.mi_with_gt;
                     return a.band < b.band;
                   });
  return scores;
}

}  // namespace

std::vector<BandScore> rank_bands(const HyperCube& cube, const GroundTruth& gt,
                                  const SelectionConfig& cfg) {
  const PixelMask mask = labeled_mask(gt);
  return rank_impl(cube, DiscreteGrid::of(gt),
                   cfg.labeled_only ? &mask : nullptr, cfg);
}

std::vector<BandScore> rank_bands(const HyperCube& cube,
                                  const QuantizedImage& reference,
                                  const SelectionConfig& cfg) {
  return rank_impl(cube, DiscreteGrid::of(reference), nullptr, cfg);
}

RealImage build_estimated_reference(const RealImage& prev, const RealImage& band) {
  return average_images(prev, band);
}

SelectionResult select_bands(const HyperCube& cube, const GroundTruth& gt,
                             const SelectionConfig& cfg) {
  cfg.validate();
  if (gt.classes_present() < 2)
    throw DegenerateDataError("selection needs at least 2 labeled classes");

  const std::vector<BandScore> ranked = rank_bands(cube, gt, cfg);

  SelectionResult result;
  result.config = cfg;

  // Seed with the top-ranked band; its MI initializes MI*.
  const int seed = ranked.front().band;
  RealImage estimate = band_image(cube, seed);
  double best_mi =
      mutual_information(gt, quantize(estimate, cfg.n_bins), cfg.labeled_only);
  result.selected.push_back(seed);
  result.trajectory.push_back({seed, best_mi, true});

  for (std::size_t r = 1; r < ranked.size(); ++r) {
    if (static_cast<int>(result.selected.size()) >= cfg.max_bands) break;
    const int band = ranked[r].band;
    const RealImage candidate =
        build_estimated_reference(estimate, band_image(cube, band));
    const double mi =
        mutual_information(gt, quantize(candidate, cfg.n_bins), cfg.labeled_only);
    const bool accepted = mi > best_mi + cfg.threshold;
    result.trajectory.push_back({band, mi, accepted});
    if (accepted) {
      best_mi = mi;
      estimate = candidate;
      result.selected.push_back(band);
    }
  }
  result.final_mi = best_mi;
  return result;
}

std::string SelectionResult::to_json() const {
  json jcfg = {{"threshold", config.threshold},
               {"max_bands", config.max_bands},
               {"n_bins", config.n_bins},
               {"labeled_only", config.labeled_only}};
  if (config.candidate_bands) jcfg["candidate_bands"] = *config.candidate_bands;
  json jtraj = json::array();
  for (const auto& e : trajectory)
    jtraj.push_back({{"band", e.band}, {"mi", e.mi}, {"accepted", e.accepted}});
  const json j = {{"config", jcfg},
                  {"selected", selected},
                  {"trajectory", jtraj},
                  {"final_mi", final_mi}};
  return j.dump(2) + "\n";
}

std::string SelectionResult::to_csv() const {
  std::ostringstream out;
  out << "band,accepted\n";
  for (const auto& e : trajectory)
    out << e.band << ',' << (e.accepted ? 1 : 0) << '\n';
  return out.str();
}

}  // namespace bandpick
