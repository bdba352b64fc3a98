#include "sp/ir/types.hpp"

#include <algorithm>

#include "sp/common/text.hpp"

namespace sp::ir {

int Section::indent() const {
  if (body.empty()) return title ? title->indent : 0;
  std::vector<int> indents;
  indents.reserve(body.size());
  for (const auto& line : body) indents.push_back(line.indent);
  std::sort(indents.begin(), indents.end());
  // Lower median: robust to one stray line, deterministic for even counts.
  return indents[(indents.size() - 1) / 2];
}

std::string Section::body_text() const {
  std::string out;
  for (const auto& line : body) {
    if (!out.empty()) out.push_back('\n');
    out += line.text;
  }
  return out;
}

const std::vector<Dimension>& mbti_dimensions() {
  static const std::vector<Dimension> dims = {
      {"E/I", 'E', 'I'}, {"N/S", 'N', 'S'}, {"T/F", 'T', 'F'}, {"J/P", 'J', 'P'}};
  return dims;
}

const std::vector<Dimension>& global5_dimensions() {
  static const std::vector<Dimension> dims = {{"S/R", 'S', 'R'},
                                              {"L/C", 'L', 'C'},
                                              {"O/U", 'O', 'U'},
                                              {"A/E", 'A', 'E'},
                                              {"N/I", 'N', 'I'}};
  return dims;
}

const std::vector<Dimension>& dimensions_for(Scale scale) {
  return scale == Scale::MBTI ? mbti_dimensions() : global5_dimensions();
}

std::optional<Dimension> find_dimension(std::string_view id) {
  std::string norm;
  for (char c : id) {
    if (c == '/' || c == ' ') continue;
    norm.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  if (norm.size() != 2) return std::nullopt;
  for (const auto& dims : {mbti_dimensions(), global5_dimensions()}) {
    for (const auto& d : dims) {
      if (d.pole_a == norm[0] && d.pole_b == norm[1]) return d;
    }
  }
  return std::nullopt;
}

Scale scale_of_dimension(const Dimension& dim) {
  for (const auto& d : mbti_dimensions()) {
    if (d.id == dim.id) return Scale::MBTI;
  }
  return Scale::Global5;
}

std::string to_string(SectionKind kind) {
  switch (kind) {
    case SectionKind::Dialogue: return "dialogue";
    case SectionKind::Scene: return "scene";
    default: return "unlabeled";
  }
}

std::string to_string(LabelSource source) {
  switch (source) {
    case LabelSource::Rule: return "rule";
    case LabelSource::Silver: return "silver";
    case LabelSource::Classifier: return "classifier";
    case LabelSource::Gold: return "gold";
    default: return "none";
  }
}

std::string to_string(ParseRoute route) {
  switch (route) {
    case ParseRoute::SilverSuccess: return "silver_success";
    case ParseRoute::SilverFailure: return "silver_failure";
    default: return "no_fade_in";
  }
}

std::string to_string(Scale scale) { return scale == Scale::MBTI ? "MBTI" : "Global5"; }

std::optional<SectionKind> section_kind_from(std::string_view s) {
  if (s == "dialogue") return SectionKind::Dialogue;
  if (s == "scene") return SectionKind::Scene;
  if (s == "unlabeled") return SectionKind::Unlabeled;
  return std::nullopt;
}

std::optional<LabelSource> label_source_from(std::string_view s) {
  if (s == "rule") return LabelSource::Rule;
  if (s == "silver") return LabelSource::Silver;
  if (s == "classifier") return LabelSource::Classifier;
  if (s == "gold") return LabelSource::Gold;
  if (s == "none") return LabelSource::None;
  return std::nullopt;
}

std::optional<ParseRoute> parse_route_from(std::string_view s) {
  if (s == "silver_success") return ParseRoute::SilverSuccess;
  if (s == "silver_failure") return ParseRoute::SilverFailure;
  if (s == "no_fade_in") return ParseRoute::NoFadeIn;
  return std::nullopt;
}

std::optional<Scale> scale_from(std::string_view s) {
  if (s == "MBTI" || s == "mbti") return Scale::MBTI;
  if (s == "Global5" || s == "global5" || s == "GLOBAL5") return Scale::Global5;
  return std::nullopt;
}

const DimensionVote* PersonalityProfile::find_vote(std::string_view dimension_id) const {
  for (const auto& v : votes) {
    if (v.dimension == dimension_id) return &v;
  }
  return nullptr;
}

int PersonalityProfile::overall_vote_count() const {
  int best = 0;
  for (const auto& v : votes) best = std::max(best, v.vote_count);
  return best;
}

std::string to_string(Split split) {
  switch (split) {
    case Split::Train: return "train";
    case Split::Dev: return "dev";
    case Split::Test: return "test";
    default: return "unassigned";
  }
}

std::optional<Split> split_from(std::string_view s) {
  if (s == "train") return Split::Train;
  if (s == "dev") return Split::Dev;
  if (s == "test") return Split::Test;
  if (s == "unassigned") return Split::Unassigned;
  return std::nullopt;
}

}  // namespace sp::ir
