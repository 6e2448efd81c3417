#include <doctest.h>

#include <set>

#include "bandpick/evaluator.hpp"
#include "bandpick/synthlab.hpp"

using namespace bandpick;

namespace {

GroundTruth gt_of(int w, int h, int n_classes, std::vector<int> labels) {
  return GroundTruth{w, h, n_classes, std::move(labels)};
}

}  // namespace

TEST_CASE("split_labeled: half split, disjoint and exhaustive") {
  const auto gt = gt_of(10, 1, 2, {1, 1, 1, 1, 1, 2, 2, 2, 2, 2});
  const Split s = split_labeled(gt, {0.5, 1, false});
  CHECK(s.train.size() == 5);
  CHECK(s.test.size() == 5);
  std::set<int> seen(s.train.begin(), s.train.end());
  seen.insert(s.test.begin(), s.test.end());
  CHECK(seen.size() == 10);
}

TEST_CASE("split_labeled: deterministic given seed") {
  const auto gt = gt_of(10, 1, 2, {1, 1, 1, 0, 1, 2, 2, 0, 2, 2});
  const Split a = split_labeled(gt, {0.5, 99, true});
  const Split b = split_labeled(gt, {0.5, 99, true});
  CHECK(a.train == b.train);
  CHECK(a.test == b.test);
  const Split c = split_labeled(gt, {0.5, 100, true});
  CHECK(a.train != c.train);
}

TEST_CASE("split_labeled: stratified 6/4 gives train 3/2") {
  const auto gt = gt_of(10, 1, 2, {1, 1, 1, 1, 1, 1, 2, 2, 2, 2});
  const Split s = split_labeled(gt, {0.5, 7, true});
  int train1 = 0, train2 = 0;
  for (int i : s.train) (gt.labels[i] == 1 ? train1 : train2)++;
  CHECK(train1 == 3);
  CHECK(train2 == 2);
}

TEST_CASE("split_labeled: single-pixel class goes to train with a warning") {
  const auto gt = gt_of(5, 1, 2, {1, 1, 1, 1, 2});
  const Split s = split_labeled(gt, {0.5, 0, true});
  CHECK(s.warnings.size() == 1);
  bool found = false;
  for (int i : s.train) found |= (gt.labels[i] == 2);
  CHECK(found);
}

TEST_CASE("split_labeled: validation") {
  const auto gt = gt_of(5, 1, 2, {1, 1, 1, 1, 2});
  CHECK_THROWS_AS(split_labeled(gt, {0.0, 0, true}), ValidationError);
  CHECK_THROWS_AS(split_labeled(gt, {1.0, 0, true}), ValidationError);
  const auto empty = gt_of(3, 1, 1, {0, 0, 1});
  CHECK_THROWS_AS(split_labeled(empty, {0.5, 0, true}), DegenerateDataError);
}

TEST_CASE("evaluate_subset: separable scene scores 100%") {
  const QuadrantScenario sc = quadrant_scenario(16, 3);
  const EvalReport r = evaluate_subset(sc.cube, sc.gt, {0, 1, 2}, {0.5, 3, true});
  CHECK(r.overall_accuracy == doctest::Approx(100.0));
  for (const auto& [label, acc] : r.per_class_accuracy)
    CHECK(acc == doctest::Approx(100.0));
  CHECK(r.n_train + r.n_test == sc.gt.labeled_count());
}

TEST_CASE("evaluate_subset: constant band falls back to majority share") {
  // class 1 has 6 pixels, class 2 has 2
  const auto gt = gt_of(8, 1, 2, {1, 1, 1, 1, 1, 1, 2, 2});
  HyperCube cube{8, 1, 1, std::vector<std::uint16_t>(8, 2000)};
  const EvalReport r = evaluate_subset(cube, gt, {0}, {0.5, 5, true});
  // test set is 3 of class 1, 1 of class 2; everything predicted class 1
  CHECK(r.overall_accuracy == doctest::Approx(75.0));
  CHECK(r.per_class_accuracy.at(1) == doctest::Approx(100.0));
  CHECK(r.per_class_accuracy.at(2) == doctest::Approx(0.0));
}

TEST_CASE("evaluate_subset: per-class accuracies aggregate to overall") {
  const QuadrantScenario sc = quadrant_scenario(16, 3);
  const EvalReport r = evaluate_subset(sc.cube, sc.gt, {0, 3}, {0.5, 11, true});
  double weighted = 0;
  int total = 0;
  for (const auto& [label, acc] : r.per_class_accuracy) {
    weighted += acc * r.per_class_test_count.at(label);
    total += r.per_class_test_count.at(label);
  }
  CHECK(r.overall_accuracy == doctest::Approx(weighted / total).epsilon(1e-12));
}

TEST_CASE("evaluate_subset: determinism and validation") {
  const QuadrantScenario sc = quadrant_scenario(16, 2);
  const EvalReport a = evaluate_subset(sc.cube, sc.gt, {0, 1}, {0.5, 13, true});
  const EvalReport b = evaluate_subset(sc.cube, sc.gt, {0, 1}, {0.5, 13, true});
  CHECK(a.to_json() == b.to_json());

  CHECK_THROWS_AS(evaluate_subset(sc.cube, sc.gt, {}, {0.5, 0, true}),
                  ValidationError);
  CHECK_THROWS_AS(evaluate_subset(sc.cube, sc.gt, {99}, {0.5, 0, true}),
                  ValidationError);
}

TEST_CASE("EvalReport serialization") {
  const QuadrantScenario sc = quadrant_scenario(16, 2);
  const EvalReport r = evaluate_subset(sc.cube, sc.gt, {0, 1}, {0.5, 1, true});
  CHECK(r.to_json().find("\"overall_accuracy\"") != std::string::npos);
  const std::string csv = r.to_csv();
  CHECK(csv.rfind("bands_hash,n_bands,accuracy\n", 0) == 0);
  CHECK(csv.find(",2,") != std::string::npos);
}

TEST_CASE("adding an informative band never hurts at desk scale") {
  const QuadrantScenario sc = quadrant_scenario(16, 0);
  const SplitSpec spec{0.5, 21, true};
  const double one = evaluate_subset(sc.cube, sc.gt, {0}, spec).overall_accuracy;
  const double two = evaluate_subset(sc.cube, sc.gt, {0, 1}, spec).overall_accuracy;
  CHECK(two >= one - 1.0);
}
