#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "sp/common/error.hpp"
#include "sp/common/text.hpp"
#include "sp/model/baseline.hpp"
#include "sp/synth/synth.hpp"

using namespace sp;

namespace {

ir::CharacterRecord dialogue_record(std::vector<std::string> dialogues,
                                    const std::string& dim = "E/I",
                                    const std::string& winner = "E") {
  ir::CharacterRecord r;
  r.profile.profile_id = "p";
  r.profile.character_name = "Char";
  r.profile.movie_name = "Movie";
  r.profile.scale = ir::Scale::MBTI;
  r.profile.votes = {{dim, winner, 5, 0.9}};
  r.dialogues = std::move(dialogues);
  return r;
}

const ir::Dimension& ei() {
  static const ir::Dimension dim = *ir::find_dimension("E/I");
  return dim;
}

}  // namespace

TEST_CASE("stopword list is fixed and hashed") {
  const auto& list = model::stopword_list();
  CHECK(list.size() > 100);
  CHECK(std::find(list.begin(), list.end(), "the") != list.end());
  CHECK(std::find(list.begin(), list.end(), "zephyrite") == list.end());

  std::string joined;
  for (const auto& w : list) joined += w + "\n";
  CHECK(model::stopword_list_hash() == text::fnv1a64(joined));
  CHECK(model::stopword_list_hash() != 0);
}

TEST_CASE("vocabulary counts n-grams, frequency then lexicographic") {
  auto vocab = model::build_vocab(
      {dialogue_record({"the red door opens", "red door"})});
  std::vector<std::pair<std::string, std::size_t>> expected = {
      {"door", 2},       {"red", 2},   {"red door", 2},
      {"door opens", 1}, {"opens", 1}, {"red door opens", 1},
  };
  CHECK(vocab.entries == expected);
  CHECK(vocab.stopword_hash == model::stopword_list_hash());

  auto idx = vocab.index();
  CHECK(idx.at("door") == 0);
  CHECK(idx.at("red door opens") == 5);
}

TEST_CASE("stopwords are removed before n-grams form") {
  // "and" drops out, so the remaining words become adjacent.
  auto vocab = model::build_vocab({dialogue_record({"red and door"})});
  auto idx = vocab.index();
  CHECK(idx.count("red door") == 1);
  CHECK(idx.count("and") == 0);
  CHECK(idx.count("red and") == 0);
}

TEST_CASE("n-grams never cross a dialogue boundary") {
  auto vocab = model::build_vocab({dialogue_record({"red", "door"})});
  auto idx = vocab.index();
  CHECK(idx.count("red") == 1);
  CHECK(idx.count("door") == 1);
  CHECK(idx.count("red door") == 0);
}

TEST_CASE("punctuation never enters the vocabulary") {
  auto vocab = model::build_vocab({dialogue_record({"Door! Door? door."})});
  std::vector<std::pair<std::string, std::size_t>> expected = {
      {"door", 3}, {"door door", 2}, {"door door door", 1}};
  CHECK(vocab.entries == expected);
}

TEST_CASE("vocabulary truncates to the requested size") {
  auto vocab = model::build_vocab({dialogue_record({"the red door opens", "red door"})}, 3);
  REQUIRE(vocab.size() == 3);
  CHECK(vocab.entries[0].first == "door");
  CHECK(vocab.entries[2].first == "red door");
}

TEST_CASE("a stopword-only corpus has no vocabulary") {
  CHECK_THROWS_WITH_AS(model::build_vocab({dialogue_record({"the of and.", "! ?"})}),
                       doctest::Contains("EmptyVocab"), Error);
}

TEST_CASE("features are term frequencies over the vocabulary") {
  auto vocab = model::build_vocab({dialogue_record({"the red door opens", "red door"})});
  auto idx = vocab.index();

  auto features = model::featurize(dialogue_record({"red door red"}), idx);
  // Stream {red, door, red}: door x1, red x2, "red door" x1; "door red" and
  // the trigram are out of vocabulary.
  std::vector<std::pair<std::uint32_t, double>> expected = {{0, 1.0}, {1, 2.0}, {2, 1.0}};
  CHECK(features == expected);

  CHECK(model::featurize(dialogue_record({"unseen words only"}), idx).empty());
}

TEST_CASE("marker corpus separates perfectly and generalizes") {
  auto train = synth::make_marker_records(40, ei(), 5);
  auto model = model::fit_baseline(train, ei());

  CHECK(model.trained());
  CHECK(model.weights.size() == model.vocab.size());
  CHECK(model.meta.C == doctest::Approx(0.1));

  for (const auto& r : train)
    CHECK(model::predict_baseline(model, r) == r.profile.find_vote("E/I")->winner);

  auto idx = model.vocab.index();
  REQUIRE(idx.count("zephyrite") == 1);
  REQUIRE(idx.count("umbrafen") == 1);
  CHECK(model.weights[static_cast<std::size_t>(idx.at("zephyrite"))] > 0.0);
  CHECK(model.weights[static_cast<std::size_t>(idx.at("umbrafen"))] < 0.0);

  auto fresh = synth::make_marker_records(20, ei(), 77);
  for (const auto& r : fresh)
    CHECK(model::predict_baseline(model, r) == r.profile.find_vote("E/I")->winner);
}

TEST_CASE("fitting is deterministic") {
  auto train = synth::make_marker_records(20, ei(), 5);
  auto a = model::fit_baseline(train, ei());
  auto b = model::fit_baseline(train, ei());
  CHECK(a.weights == b.weights);
  CHECK(a.bias == b.bias);
  CHECK(a.meta.epochs_run == b.meta.epochs_run);
}

TEST_CASE("records without the target dimension are skipped") {
  auto train = synth::make_marker_records(20, ei(), 5);
  auto extra = dialogue_record({"neutral filler words here"}, "N/S", "N");
  extra.profile.profile_id = "other-dim";
  train.push_back(extra);

  auto model = model::fit_baseline(train, ei());
  auto fresh = synth::make_marker_records(10, ei(), 78);
  for (const auto& r : fresh)
    CHECK(model::predict_baseline(model, r) == r.profile.find_vote("E/I")->winner);
}

TEST_CASE("one-pole training data is rejected") {
  std::vector<ir::CharacterRecord> train = {
      dialogue_record({"zephyrite words"}), dialogue_record({"zephyrite again"})};
  try {
    model::fit_baseline(train, ei());
    FAIL("expected degenerate-set rejection");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Training);
    CHECK(std::string(e.what()).find("DegenerateTrainingSet") != std::string::npos);
  }

  // No record carries the dimension at all: equally degenerate.
  std::vector<ir::CharacterRecord> other = {dialogue_record({"words"}, "N/S", "N")};
  CHECK_THROWS_WITH_AS(model::fit_baseline(other, ei()),
                       doctest::Contains("DegenerateTrainingSet"), Error);
}

TEST_CASE("prediction requires a fitted model") {
  model::BaselineModel empty;
  CHECK_THROWS_WITH_AS(model::predict_baseline(empty, dialogue_record({"hi"})),
                       doctest::Contains("UntrainedModel"), Error);
}

TEST_CASE("saved baselines reload bit for bit") {
  auto train = synth::make_marker_records(20, ei(), 5);
  auto model = model::fit_baseline(train, ei());

  auto path = std::filesystem::temp_directory_path() / "sp_baseline_roundtrip.json";
  model::save_baseline(model, path);
  auto loaded = model::load_baseline(path);
  std::filesystem::remove(path);

  CHECK(loaded.dimension.id == model.dimension.id);
  CHECK(loaded.vocab.entries == model.vocab.entries);
  CHECK(loaded.vocab.stopword_hash == model.vocab.stopword_hash);
  CHECK(loaded.weights == model.weights);
  CHECK(loaded.bias == model.bias);
  CHECK(loaded.meta.C == model.meta.C);
  CHECK(loaded.meta.seed == model.meta.seed);
  CHECK(loaded.meta.epochs_run == model.meta.epochs_run);
  CHECK(loaded.meta.converged == model.meta.converged);

  auto fresh = synth::make_marker_records(10, ei(), 79);
  for (const auto& r : fresh)
    CHECK(model::predict_baseline(loaded, r) == model::predict_baseline(model, r));
}

TEST_CASE("corrupt model files are a data error") {
  auto path = std::filesystem::temp_directory_path() / "sp_baseline_corrupt.json";
  std::ofstream(path) << "{ not json\n";
  CHECK_THROWS_WITH_AS(model::load_baseline(path), doctest::Contains("BadModelFile"), Error);
  std::filesystem::remove(path);
  CHECK_THROWS_WITH_AS(model::load_baseline(path), doctest::Contains("FileOpen"), Error);
}
