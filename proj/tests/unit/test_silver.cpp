#include <map>
#include <set>
#include <vector>

#include "doctest.h"
#include "sp/common/error.hpp"
#include "sp/common/text.hpp"
#include "sp/parser/silver.hpp"
#include "sp/synth/synth.hpp"

using namespace sp;

namespace {

// One-line section at the given indent.
ir::Section sec(int indent, ir::SectionKind kind = ir::SectionKind::Unlabeled) {
  ir::Section s;
  s.body.push_back({indent, "text", false, 1});
  s.kind = kind;
  return s;
}

ir::ParsedScript script_with_indents(const std::vector<int>& indents) {
  ir::ParsedScript script;
  script.movie_name = "M";
  for (int i : indents) script.sections.push_back(sec(i));
  return script;
}

ir::ParsedScript labeled_script(int n_dialogue, int n_scene) {
  ir::ParsedScript script;
  script.movie_name = "M";
  for (int i = 0; i < n_dialogue; ++i) script.sections.push_back(sec(20, ir::SectionKind::Dialogue));
  for (int i = 0; i < n_scene; ++i) script.sections.push_back(sec(0, ir::SectionKind::Scene));
  return script;
}

}  // namespace

TEST_CASE("fade-in anchor is found in titles and bodies, first wins") {
  ir::ParsedScript script;
  ir::Section s1;
  s1.body = {{2, "The night sky.", false, 1}, {6, "FADE IN:", false, 2}};
  script.sections.push_back(s1);
  ir::Section s2;
  s2.title = ir::Line{4, "FADE IN ON A FIELD", true, 3};
  script.sections.push_back(s2);
  CHECK(parser::find_fade_in_indent(script) == 6);

  ir::ParsedScript none = script_with_indents({0, 4});
  CHECK_FALSE(parser::find_fade_in_indent(none).has_value());

  // Case-insensitive, prefix only.
  ir::ParsedScript ci;
  ir::Section s3;
  s3.body = {{3, "fade in:", false, 1}};
  ci.sections.push_back(s3);
  CHECK(parser::find_fade_in_indent(ci) == 3);
}

TEST_CASE("rule labeling splits strictly above the anchor") {
  auto script = script_with_indents({0, 5, 6, 20});
  auto labeled = parser::rule_label(std::move(script), 5);
  CHECK(labeled.sections[0].kind == ir::SectionKind::Scene);
  CHECK(labeled.sections[1].kind == ir::SectionKind::Scene);  // tie goes to scene
  CHECK(labeled.sections[2].kind == ir::SectionKind::Dialogue);
  CHECK(labeled.sections[3].kind == ir::SectionKind::Dialogue);
  for (const auto& s : labeled.sections) CHECK(s.source == ir::LabelSource::Rule);
  CHECK(labeled.fade_in_indent == 5);

  CHECK_THROWS_WITH_AS(parser::rule_label(script_with_indents({0}), std::nullopt),
                       doctest::Contains("MissingAnchor"), Error);
}

TEST_CASE("corpus ratio stats match the two-script example") {
  // Ratios 0.4 and 0.6 give mu 0.5 and population sigma 0.1.
  std::vector<ir::ParsedScript> corpus = {labeled_script(4, 6), labeled_script(6, 4)};
  auto stats = parser::corpus_dialogue_stats(corpus);
  CHECK(stats.mu == doctest::Approx(0.5));
  CHECK(stats.sigma == doctest::Approx(0.1));
  CHECK(stats.n_scripts == 2);
}

TEST_CASE("zero-section scripts are excluded from the stats") {
  std::vector<ir::ParsedScript> corpus = {labeled_script(1, 1), ir::ParsedScript{}};
  auto stats = parser::corpus_dialogue_stats(corpus);
  CHECK(stats.n_scripts == 1);
  CHECK(stats.mu == doctest::Approx(0.5));

  CHECK_THROWS_WITH_AS(parser::corpus_dialogue_stats({ir::ParsedScript{}}),
                       doctest::Contains("EmptyCorpus"), Error);
  CHECK_THROWS_WITH_AS(parser::corpus_dialogue_stats({}),
                       doctest::Contains("EmptyCorpus"), Error);
}

TEST_CASE("thresholding picks the first cumulative ratio inside the band") {
  // Four sections at indent 25, six at indent 0; mu 0.4, sigma 0.05.
  // The deepest level alone gives 0.4, inside [0.35, 0.45].
  auto script = script_with_indents({25, 25, 25, 25, 0, 0, 0, 0, 0, 0});
  parser::CorpusDialogueStats stats{0.4, 0.05, 10};
  auto result = parser::silver_parse(std::move(script), stats);
  CHECK(result.outcome == parser::SilverOutcome::Success);
  CHECK(result.chosen_threshold == 25);
  CHECK(result.achieved_ratio == doctest::Approx(0.4));
  CHECK(result.script.route == ir::ParseRoute::SilverSuccess);
  int n_dialogue = 0;
  for (const auto& s : result.script.sections) {
    CHECK(s.source == ir::LabelSource::Silver);
    if (s.kind == ir::SectionKind::Dialogue) {
      ++n_dialogue;
      CHECK(s.indent() == 25);
    } else {
      CHECK(s.kind == ir::SectionKind::Scene);
    }
  }
  CHECK(n_dialogue == 4);
}

TEST_CASE("descent accumulates levels until the band is reached") {
  // Levels: 30 (2 sections, 0.2), 20 (+3, 0.5), 10 (+5, 1.0).
  auto script = script_with_indents({30, 30, 20, 20, 20, 10, 10, 10, 10, 10});
  parser::CorpusDialogueStats stats{0.5, 0.05, 10};
  auto result = parser::silver_parse(std::move(script), stats);
  CHECK(result.outcome == parser::SilverOutcome::Success);
  CHECK(result.chosen_threshold == 20);
  CHECK(result.achieved_ratio == doctest::Approx(0.5));
}

TEST_CASE("overshooting the band is a failure that leaves sections unlabeled") {
  // One level of 8 dialogue candidates out of 10 jumps straight to 0.8,
  // past the band around 0.5.
  auto script = script_with_indents({25, 25, 25, 25, 25, 25, 25, 25, 0, 0});
  parser::CorpusDialogueStats stats{0.5, 0.05, 10};
  auto result = parser::silver_parse(std::move(script), stats);
  CHECK(result.outcome == parser::SilverOutcome::Failure);
  CHECK_FALSE(result.chosen_threshold.has_value());
  CHECK(result.script.route == ir::ParseRoute::SilverFailure);
  for (const auto& s : result.script.sections) {
    CHECK(s.kind == ir::SectionKind::Unlabeled);
    CHECK(s.source == ir::LabelSource::None);
  }
}

TEST_CASE("undershooting every level is also a failure") {
  // All sections share one indent: cumulative ratio jumps 0 -> 1.0.
  auto script = script_with_indents({10, 10, 10, 10});
  parser::CorpusDialogueStats stats{0.5, 0.05, 10};
  auto result = parser::silver_parse(std::move(script), stats);
  CHECK(result.outcome == parser::SilverOutcome::Failure);
}

TEST_CASE("silver labels agree with the threshold invariant on random scripts") {
  text::Rng rng(2024);
  int successes = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto script = synth::random_script(rng);
    parser::CorpusDialogueStats stats{0.5, 0.15, 10};
    std::size_t n_sections = script.sections.size();
    auto result = parser::silver_parse(std::move(script), stats);
    REQUIRE(result.script.sections.size() == n_sections);

    if (result.outcome == parser::SilverOutcome::Success) {
      ++successes;
      REQUIRE(result.chosen_threshold.has_value());
      int thr = *result.chosen_threshold;
      std::size_t n_dialogue = 0;
      for (const auto& s : result.script.sections) {
        // Exactly the sections at or above the chosen indent are dialogue.
        if (s.indent() >= thr) {
          CHECK(s.kind == ir::SectionKind::Dialogue);
          ++n_dialogue;
        } else {
          CHECK(s.kind == ir::SectionKind::Scene);
        }
      }
      double ratio = static_cast<double>(n_dialogue) / static_cast<double>(n_sections);
      CHECK(ratio == doctest::Approx(result.achieved_ratio));
      CHECK(ratio >= stats.mu - stats.sigma - 1e-12);
      CHECK(ratio <= stats.mu + stats.sigma + 1e-12);
    } else {
      for (const auto& s : result.script.sections)
        CHECK(s.kind == ir::SectionKind::Unlabeled);
    }
  }
  // The generator must exercise both branches.
  CHECK(successes > 20);
  CHECK(successes < 280);
}
