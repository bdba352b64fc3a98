#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "sp/common/error.hpp"
#include "sp/common/text.hpp"
#include "sp/eval/metrics.hpp"

using namespace sp;

namespace {

const ir::Dimension& ei() {
  static const ir::Dimension dim = *ir::find_dimension("E/I");
  return dim;
}

ir::CharacterRecord voted_record(const std::string& dim, const std::string& winner,
                                 double agreement) {
  ir::CharacterRecord r;
  r.profile.profile_id = "p";
  r.profile.character_name = "Char";
  r.profile.movie_name = "Movie";
  r.profile.scale = ir::Scale::MBTI;
  r.profile.votes = {{dim, winner, 10, agreement}};
  return r;
}

// From-definition recomputation: per-pole precision, recall, and their
// harmonic mean over exactly the two poles, averaged unweighted. Counts are
// small integers and each step is a single IEEE operation, so agreement with
// an equivalent evaluation is exact rather than approximate.
double reference_macro_f1(const std::vector<std::string>& gold,
                          const std::vector<std::string>& pred,
                          const std::string& pole_a, const std::string& pole_b) {
  double total = 0.0;
  for (const std::string& pole : {pole_a, pole_b}) {
    double tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < gold.size(); ++i) {
      if (pred[i] == pole && gold[i] == pole) tp += 1;
      if (pred[i] == pole && gold[i] != pole) fp += 1;
      if (pred[i] != pole && gold[i] == pole) fn += 1;
    }
    const double precision = tp + fp == 0 ? 0.0 : tp / (tp + fp);
    const double recall = tp + fn == 0 ? 0.0 : tp / (tp + fn);
    total += precision + recall == 0 ? 0.0 : 2.0 * precision * recall / (precision + recall);
  }
  return total / 2.0;
}

}  // namespace

TEST_CASE("macro F1 matches hand-worked examples") {
  CHECK(eval::macro_f1({"E", "I", "I"}, {"E", "E", "I"}) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(eval::macro_f1({"E", "I"}, {"E", "E"}) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(eval::macro_f1({"E", "I", "E"}, {"E", "I", "E"}) == 1.0);
  CHECK(eval::macro_f1({"E", "E"}, {"I", "I"}) == 0.0);
}

TEST_CASE("a pole absent everywhere still divides the average") {
  CHECK(eval::macro_f1({"E", "E"}, {"E", "E"}) == doctest::Approx(0.5));
}

TEST_CASE("macro F1 rejects malformed label sets") {
  CHECK_THROWS_WITH_AS(eval::macro_f1({"E"}, {"E", "I"}), doctest::Contains("LengthMismatch"),
                       Error);
  CHECK_THROWS_WITH_AS(eval::macro_f1({}, {}), doctest::Contains("EmptyInput"), Error);
  CHECK_THROWS_WITH_AS(eval::macro_f1({"E", "I"}, {"E", "X"}), doctest::Contains("BadLabels"),
                       Error);
  try {
    eval::macro_f1({"E"}, {"E", "I"});
    FAIL("expected mismatch rejection");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Data);
  }
}

TEST_CASE("macro F1 equals the definition on random label pairs") {
  text::Rng rng(404);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.below(30);
    std::vector<std::string> gold, pred;
    for (std::size_t i = 0; i < n; ++i) {
      gold.push_back(rng.below(2) ? "E" : "I");
      pred.push_back(rng.below(2) ? "E" : "I");
    }
    CHECK(eval::macro_f1(gold, pred) == reference_macro_f1(gold, pred, "E", "I"));
  }
}

TEST_CASE("the majority label is the stored winner") {
  auto record = voted_record("E/I", "I", 0.8);
  CHECK(eval::majority_label(record.profile, ei()) == "I");
  CHECK_THROWS_WITH_AS(eval::majority_label(record.profile, *ir::find_dimension("N/S")),
                       doctest::Contains("MissingDimension"), Error);
}

TEST_CASE("simulated voters are reproducible") {
  std::vector<ir::CharacterRecord> records;
  for (int i = 0; i < 50; ++i) records.push_back(voted_record("E/I", i % 2 ? "E" : "I", 0.75));

  auto a = eval::human_perf_estimate(records, 9);
  auto b = eval::human_perf_estimate(records, 9);
  REQUIRE(a.dimensions.size() == 1);
  CHECK(a.dimensions[0].dimension == "E/I");
  CHECK(a.dimensions[0].n_characters == 50);
  CHECK(a.dimensions[0].mean_accuracy == b.dimensions[0].mean_accuracy);
  CHECK(a.dimensions[0].mean_f1 == b.dimensions[0].mean_f1);
  CHECK(a.dimensions[0].std_f1 == b.dimensions[0].std_f1);

  auto c = eval::human_perf_estimate(records, 10);
  CHECK(a.dimensions[0].mean_accuracy != c.dimensions[0].mean_accuracy);
}

TEST_CASE("voter accuracy concentrates on the stored agreement") {
  std::vector<ir::CharacterRecord> records;
  for (int i = 0; i < 2000; ++i) records.push_back(voted_record("E/I", i % 2 ? "E" : "I", 0.8));

  auto result = eval::human_perf_estimate(records, 1234, 5);
  REQUIRE(result.dimensions.size() == 1);
  // 10000 Bernoulli draws: the mean sits within a few standard errors of 0.8.
  CHECK(result.dimensions[0].mean_accuracy == doctest::Approx(0.8).epsilon(0.025));
  CHECK(result.dimensions[0].mean_f1 == doctest::Approx(0.8).epsilon(0.04));
  CHECK(result.dimensions[0].std_accuracy < 0.05);
}

TEST_CASE("each dimension is scored over its own records") {
  std::vector<ir::CharacterRecord> records;
  for (int i = 0; i < 8; ++i) records.push_back(voted_record("E/I", i % 2 ? "E" : "I", 0.9));
  for (int i = 0; i < 4; ++i) records.push_back(voted_record("T/F", i % 2 ? "T" : "F", 0.9));

  auto result = eval::human_perf_estimate(records, 5);
  REQUIRE(result.dimensions.size() == 2);
  CHECK(result.dimensions[0].dimension == "E/I");
  CHECK(result.dimensions[0].n_characters == 8);
  CHECK(result.dimensions[1].dimension == "T/F");
  CHECK(result.dimensions[1].n_characters == 4);
}

TEST_CASE("learning curve trains on nested prefixes") {
  std::vector<ir::CharacterRecord> train;
  for (int i = 0; i < 30; ++i) {
    auto r = voted_record("E/I", i % 2 ? "E" : "I", 0.9);
    r.profile.profile_id = "r" + std::to_string(i);
    train.push_back(r);
  }

  std::vector<std::vector<std::string>> seen;
  eval::TrainerFn spy = [&](const std::vector<ir::CharacterRecord>& subset,
                            const ir::Dimension&) {
    std::vector<std::string> ids;
    for (const auto& r : subset) ids.push_back(r.profile.profile_id);
    seen.push_back(ids);
    return static_cast<double>(subset.size()) / 100.0;
  };

  auto rows = eval::learning_curve(spy, train, {20, 5, 10}, ei(), 77);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].size == 5);
  CHECK(rows[1].size == 10);
  CHECK(rows[2].size == 20);
  CHECK(rows[0].dev_f1 == doctest::Approx(0.05));
  CHECK(rows[2].dev_f1 == doctest::Approx(0.20));

  REQUIRE(seen.size() == 3);
  for (std::size_t i = 1; i < seen.size(); ++i)
    for (std::size_t j = 0; j < seen[i - 1].size(); ++j) CHECK(seen[i][j] == seen[i - 1][j]);

  // The shuffle really happened: the first subset is not just the head.
  std::vector<std::string> head;
  for (int i = 0; i < 5; ++i) head.push_back("r" + std::to_string(i));
  CHECK(seen[0] != head);
}

TEST_CASE("learning curve subsets are seed-stable") {
  std::vector<ir::CharacterRecord> train;
  for (int i = 0; i < 12; ++i) train.push_back(voted_record("E/I", i % 2 ? "E" : "I", 0.9));
  eval::TrainerFn counter = [](const std::vector<ir::CharacterRecord>& subset,
                               const ir::Dimension&) {
    return static_cast<double>(subset.size());
  };
  auto a = eval::learning_curve(counter, train, {4, 8}, ei(), 3);
  auto b = eval::learning_curve(counter, train, {4, 8}, ei(), 3);
  CHECK(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].size == b[i].size);
    CHECK(a[i].dev_f1 == b[i].dev_f1);
  }
}

TEST_CASE("oversized curve points are rejected") {
  std::vector<ir::CharacterRecord> train = {voted_record("E/I", "E", 0.9)};
  eval::TrainerFn noop = [](const std::vector<ir::CharacterRecord>&, const ir::Dimension&) {
    return 0.0;
  };
  CHECK_THROWS_WITH_AS(eval::learning_curve(noop, train, {2}, ei(), 0),
                       doctest::Contains("SizeExceedsData"), Error);
}

TEST_CASE("length ablation sweeps the budgets in order") {
  std::vector<ir::CharacterRecord> records = {voted_record("E/I", "E", 0.9)};
  std::vector<std::size_t> seen;
  eval::BudgetTrainerFn spy = [&](const std::vector<ir::CharacterRecord>& subset,
                                  const ir::Dimension&, std::size_t budget) {
    CHECK(subset.size() == 1);
    seen.push_back(budget);
    return static_cast<double>(budget) / 1000.0;
  };

  auto rows = eval::length_ablation(spy, records, {500, 1000, 2000}, ei());
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].budget == 1000);
  CHECK(rows[1].dev_f1 == doctest::Approx(1.0));
  CHECK(seen == std::vector<std::size_t>{500, 1000, 2000});

  CHECK_THROWS_WITH_AS(eval::length_ablation(spy, records, {500, 0}, ei()),
                       doctest::Contains("BadBudget"), Error);
}
