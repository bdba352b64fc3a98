#include "sp/ir/validate.hpp"

#include <set>
#include <string>

#include "sp/common/names.hpp"
#include "sp/common/text.hpp"

namespace sp::ir {

namespace {

bool dimension_in_scale(const std::string& id, Scale scale) {
  for (const auto& d : dimensions_for(scale)) {
    if (d.id == id) return true;
  }
  return false;
}

}  // namespace

std::vector<std::string> validate_record(const CharacterRecord& record) {
  std::vector<std::string> violations;
  const auto& profile = record.profile;

  if (profile.character_name.empty())
    violations.push_back("profile.character_name: must be non-empty");

  std::set<std::string> seen_dims;
  for (const auto& vote : profile.votes) {
    const std::string at = "votes[" + vote.dimension + "]";
    auto dim = find_dimension(vote.dimension);
    if (!dim) {
      violations.push_back(at + ".dimension: unknown axis id");
      continue;
    }
    if (!seen_dims.insert(vote.dimension).second)
      violations.push_back(at + ": at most one vote per dimension");
    if (!dimension_in_scale(vote.dimension, profile.scale))
      violations.push_back(at + ".dimension: not part of the profile scale " +
                           to_string(profile.scale));
    if (!dim->has_pole(vote.winner))
      violations.push_back(at + ".winner: '" + vote.winner + "' is not a pole of " + dim->id);
    if (vote.vote_count < 0) violations.push_back(at + ".vote_count: must be >= 0");
    if (vote.agreement < 0.0 || vote.agreement > 1.0)
      violations.push_back(at + ".agreement: must lie in [0, 1]");
  }

  const auto name_tokens = names::normalize_name(profile.character_name);
  for (std::size_t s = 0; s < record.scenes.size(); ++s) {
    const auto& scene = record.scenes[s];
    const auto tokens = text::word_punct_tokens(scene.text);
    for (int offset : scene.mentions) {
      const std::string at = "scenes[" + std::to_string(s) + "].mentions";
      if (offset < 0 || offset >= static_cast<int>(tokens.size())) {
        violations.push_back(at + ": offset " + std::to_string(offset) +
                             " outside token range [0, " + std::to_string(tokens.size()) + ")");
        continue;
      }
      const auto tok_norm = names::normalize_name(tokens[static_cast<std::size_t>(offset)]);
      if (!names::tokens_match(tok_norm, name_tokens))
        violations.push_back(at + ": token '" + tokens[static_cast<std::size_t>(offset)] +
                             "' at offset " + std::to_string(offset) +
                             " does not soft-match the character name");
    }
  }

  return violations;
}

}  // namespace sp::ir
