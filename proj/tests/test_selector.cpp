#include <doctest.h>

#include <algorithm>

#include "bandpick/selector.hpp"
#include "bandpick/synthlab.hpp"

using namespace bandpick;

namespace {

SelectionConfig cfg_with(double threshold, int max_bands = 10) {
  SelectionConfig cfg;
  cfg.threshold = threshold;
  cfg.max_bands = max_bands;
  return cfg;
}

// Independent replay of every accept/reject decision in a trajectory.
void replay(const HyperCube& cube, const GroundTruth& gt,
            const SelectionResult& result) {
  const auto& cfg = result.config;
  REQUIRE(!result.trajectory.empty());
  const TrajectoryEntry& seed = result.trajectory.front();
  CHECK(seed.accepted);
  RealImage estimate = band_image(cube, seed.band);
  double best = mutual_information(gt, quantize(estimate, cfg.n_bins));
  CHECK(seed.mi == doctest::Approx(best).epsilon(1e-14));
  for (std::size_t i = 1; i < result.trajectory.size(); ++i) {
    const auto& e = result.trajectory[i];
    const RealImage candidate =
        average_images(estimate, band_image(cube, e.band));
    const double mi = mutual_information(gt, quantize(candidate, cfg.n_bins));
    CHECK(mi == doctest::Approx(e.mi).epsilon(1e-14));
    CHECK(e.accepted == (mi > best + cfg.threshold));
    if (e.accepted) {
      best = mi;
      estimate = candidate;
    }
  }
  CHECK(result.final_mi == doctest::Approx(best).epsilon(1e-14));
}

}  // namespace

TEST_CASE("rank_bands: table1 order is C, A, B") {
  const Table1Scenario sc = table1_scenario(64);
  const auto scores = rank_bands(sc.cube, sc.gt, cfg_with(0));
  REQUIRE(scores.size() == 3);
  CHECK(scores[0].band == sc.band_c);
  CHECK(scores[1].band == sc.band_a);
  CHECK(scores[2].band == sc.band_b);
}

TEST_CASE("rank_bands: constant band scores 0 and ranks last") {
  const QuadrantScenario sc = quadrant_scenario(16, 2);
  const auto scores = rank_bands(sc.cube, sc.gt, cfg_with(0));
  REQUIRE(scores.size() == 5);
  CHECK(scores[3].mi_with_gt == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(scores[4].mi_with_gt == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(scores[3].band == 3);  // equal scores: lower index first
  CHECK(scores[4].band == 4);
}

TEST_CASE("rank_bands: identical bands tie toward lower index") {
  const Table1Scenario sc = table1_scenario(32);
  // duplicate band C
  std::vector<RealImage> bands;
  for (int b = 0; b < 3; ++b) bands.push_back(band_image(sc.cube, b));
  bands.push_back(band_image(sc.cube, sc.band_c));
  const HyperCube cube = pack_cube(bands);
  const auto scores = rank_bands(cube, sc.gt, cfg_with(0));
  CHECK(scores[0].band == 2);
  CHECK(scores[1].band == 3);
  CHECK(scores[0].mi_with_gt == scores[1].mi_with_gt);
}

TEST_CASE("select_bands: table1, Th=0 keeps only C") {
  const Table1Scenario sc = table1_scenario(64);
  const SelectionResult result = select_bands(sc.cube, sc.gt, cfg_with(0, 3));
  CHECK(result.selected == std::vector<int>{sc.band_c});
  REQUIRE(result.trajectory.size() == 3);
  CHECK(result.trajectory[0].accepted);
  CHECK(!result.trajectory[1].accepted);
  CHECK(!result.trajectory[2].accepted);
  replay(sc.cube, sc.gt, result);
}

TEST_CASE("select_bands: A and B alone are additive") {
  const Table1Scenario sc = table1_scenario(64);
  SelectionConfig cfg = cfg_with(0, 3);
  cfg.candidate_bands = std::vector<int>{sc.band_a, sc.band_b};
  const SelectionResult result = select_bands(sc.cube, sc.gt, cfg);
  CHECK(result.selected == std::vector<int>{sc.band_a, sc.band_b});
  CHECK(result.trajectory[1].mi > result.trajectory[0].mi);
  replay(sc.cube, sc.gt, result);
}

TEST_CASE("select_bands: threshold extremes") {
  const Table1Scenario sc = table1_scenario(64);

  // very negative threshold: everything accepted, in rank order
  const SelectionResult all = select_bands(sc.cube, sc.gt, cfg_with(-1e6, 10));
  CHECK(all.selected == std::vector<int>{sc.band_c, sc.band_a, sc.band_b});
  replay(sc.cube, sc.gt, all);

  // very positive threshold: only the seed
  const SelectionResult seed = select_bands(sc.cube, sc.gt, cfg_with(1e6, 10));
  CHECK(seed.selected == std::vector<int>{sc.band_c});
  replay(sc.cube, sc.gt, seed);

  // max_bands caps the negative-threshold selection at rank order prefix
  const SelectionResult two = select_bands(sc.cube, sc.gt, cfg_with(-1e6, 2));
  CHECK(two.selected == std::vector<int>{sc.band_c, sc.band_a});
}

TEST_CASE("select_bands: single candidate") {
  const Table1Scenario sc = table1_scenario(32);
  SelectionConfig cfg = cfg_with(0, 5);
  cfg.candidate_bands = std::vector<int>{sc.band_b};
  const SelectionResult result = select_bands(sc.cube, sc.gt, cfg);
  CHECK(result.selected == std::vector<int>{sc.band_b});
  CHECK(result.final_mi == doctest::Approx(result.trajectory[0].mi));
}

TEST_CASE("select_bands: redundant relabeling of the estimate is rejected") {
  const Table1Scenario sc = table1_scenario(32);
  // band 3 = injective relabeling of band C's regions
  std::vector<RealImage> bands;
  for (int b = 0; b < 3; ++b) bands.push_back(band_image(sc.cube, b));
  bands.push_back(make_indicator_band(sc.gt, {{11, 9000}, {14, 2000}}, 500, 0, 0).image);
  const HyperCube cube = pack_cube(bands);
  const SelectionResult result = select_bands(cube, sc.gt, cfg_with(0, 4));
  for (int b : result.selected) CHECK(b != 3);
  replay(cube, sc.gt, result);
}

TEST_CASE("select_bands: deterministic and degenerate-GT guarded") {
  const Table1Scenario sc = table1_scenario(32);
  const SelectionResult r1 = select_bands(sc.cube, sc.gt, cfg_with(0, 3));
  const SelectionResult r2 = select_bands(sc.cube, sc.gt, cfg_with(0, 3));
  CHECK(r1.to_json() == r2.to_json());

  GroundTruth one_class = sc.gt;
  for (int& l : one_class.labels) l = l ? 1 : 0;
  CHECK_THROWS_AS(select_bands(sc.cube, one_class, cfg_with(0, 3)),
                  DegenerateDataError);
}

TEST_CASE("build_estimated_reference: averaging weights") {
  RealImage b1{2, 1, {8, 0}}, b2{2, 1, {0, 8}}, b3{2, 1, {4, 4}};
  CHECK(build_estimated_reference(b1, b1).values == b1.values);
  CHECK(build_estimated_reference(RealImage{2, 1, {2, 4}}, RealImage{2, 1, {4, 8}})
            .values == std::vector<double>{3, 6});
  // accepting b1, b2, b3 in turn weights them 1/4, 1/4, 1/2
  const RealImage est =
      build_estimated_reference(build_estimated_reference(b1, b2), b3);
  for (std::size_t i = 0; i < est.values.size(); ++i)
    CHECK(est.values[i] ==
          b1.values[i] / 4 + b2.values[i] / 4 + b3.values[i] / 2);
}

TEST_CASE("SelectionResult serialization") {
  const Table1Scenario sc = table1_scenario(32);
  const SelectionResult r = select_bands(sc.cube, sc.gt, cfg_with(0, 3));
  const std::string j = r.to_json();
  CHECK(j.find("\"selected\"") != std::string::npos);
  CHECK(j.find("\"trajectory\"") != std::string::npos);
  CHECK(j.find("\"final_mi\"") != std::string::npos);
  const std::string csv = r.to_csv();
  CHECK(csv.rfind("band,accepted\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 3);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(cfg_with(0, 0).validate(), ValidationError);
  SelectionConfig bad;
  bad.n_bins = 1;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}
