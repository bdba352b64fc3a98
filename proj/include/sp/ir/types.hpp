#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sp::ir {

// One normalized script line: tabs expanded, text trimmed, blanks dropped.
struct Line {
  int indent = 0;        // leading spaces after tab expansion
  std::string text;      // trimmed content, never empty
  bool is_bold = false;  // bold markup (HTML) or the plain-text heuristic
  int line_no = 0;       // source ordinal, strictly increasing within a script

  friend bool operator==(const Line&, const Line&) = default;
};

enum class SectionKind { Unlabeled, Dialogue, Scene };
enum class LabelSource { None, Rule, Silver, Classifier, Gold };

// A titled chunk between two bold lines. The representative indent is the
// lower median of the body indents; a bare title falls back to its own indent.
struct Section {
  std::optional<Line> title;
  std::vector<Line> body;
  SectionKind kind = SectionKind::Unlabeled;
  LabelSource source = LabelSource::None;

  int indent() const;
  std::string title_text() const { return title ? title->text : std::string(); }
  std::string body_text() const;  // body lines joined with '\n'

  friend bool operator==(const Section&, const Section&) = default;
};

enum class ParseRoute { SilverSuccess, SilverFailure, NoFadeIn };

struct ParsedScript {
  std::string movie_name;
  std::vector<Section> sections;
  std::optional<int> fade_in_indent;  // present iff a FADE-IN marker was found
  ParseRoute route = ParseRoute::NoFadeIn;

  friend bool operator==(const ParsedScript&, const ParsedScript&) = default;
};

enum class Scale { MBTI, Global5 };

// A binary personality axis; the id is "A/B" with single-letter poles.
struct Dimension {
  std::string id;
  char pole_a = 0;
  char pole_b = 0;

  std::string pole_a_str() const { return std::string(1, pole_a); }
  std::string pole_b_str() const { return std::string(1, pole_b); }
  bool has_pole(std::string_view p) const {
    return p.size() == 1 && (p[0] == pole_a || p[0] == pole_b);
  }
  std::string other_pole(std::string_view p) const {
    return p.size() == 1 && p[0] == pole_a ? pole_b_str() : pole_a_str();
  }

  friend bool operator==(const Dimension&, const Dimension&) = default;
};

const std::vector<Dimension>& mbti_dimensions();
const std::vector<Dimension>& global5_dimensions();
const std::vector<Dimension>& dimensions_for(Scale scale);
// Looks the id up across both scales; accepts "E/I", "EI", "e/i".
std::optional<Dimension> find_dimension(std::string_view id);
Scale scale_of_dimension(const Dimension& dim);

std::string to_string(SectionKind kind);
std::string to_string(LabelSource source);
std::string to_string(ParseRoute route);
std::string to_string(Scale scale);
std::optional<SectionKind> section_kind_from(std::string_view s);
std::optional<LabelSource> label_source_from(std::string_view s);
std::optional<ParseRoute> parse_route_from(std::string_view s);
std::optional<Scale> scale_from(std::string_view s);

struct DimensionVote {
  std::string dimension;  // axis id, e.g. "E/I"
  std::string winner;     // winning pole letter
  int vote_count = 0;
  double agreement = 0.0;  // fraction of voters choosing the winner

  friend bool operator==(const DimensionVote&, const DimensionVote&) = default;
};

struct PersonalityProfile {
  std::string profile_id;
  std::string character_name;
  std::string movie_name;  // the profile source's "subcategory"
  Scale scale = Scale::MBTI;
  std::vector<DimensionVote> votes;  // at most one per dimension

  const DimensionVote* find_vote(std::string_view dimension_id) const;
  // A profile carries one voter population; per-dimension counts may differ
  // in exported data, so the profile-level count is the max across dimensions.
  int overall_vote_count() const;

  friend bool operator==(const PersonalityProfile&, const PersonalityProfile&) = default;
};

// One scene a character appears in: the scene text plus the token offsets of
// the character's name (word/punct tokenization of the text).
struct SceneMention {
  std::string text;
  std::vector<int> mentions;

  friend bool operator==(const SceneMention&, const SceneMention&) = default;
};

enum class Split { Unassigned, Train, Dev, Test };

std::string to_string(Split split);
std::optional<Split> split_from(std::string_view s);

// The merged unit: a filtered profile plus its matched dialogue texts and
// mention-annotated scenes. Dialogues/scenes may be empty, never absent.
struct CharacterRecord {
  PersonalityProfile profile;
  std::vector<std::string> dialogues;
  std::vector<SceneMention> scenes;
  Split split = Split::Unassigned;

  friend bool operator==(const CharacterRecord&, const CharacterRecord&) = default;
};

}  // namespace sp::ir
