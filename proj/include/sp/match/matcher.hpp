#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sp/ir/types.hpp"

namespace sp::match {

// Profile-level voter floor, then per-dimension agreement floor; profiles
// left without any dimension are dropped.
std::vector<ir::PersonalityProfile> filter_profiles(std::vector<ir::PersonalityProfile> profiles,
                                                    int min_voters = 3,
                                                    double min_agreement = 0.60);

// Candidate entities are maximal runs of capitalized tokens in the scene
// body. For every run that name-matches the character, the offset of the
// first in-run token that itself matches is emitted (one offset per mention).
std::vector<int> extract_scene_mentions(const ir::Section& scene,
                                        const std::string& character_name);

// Dialogues whose title matches the name plus scenes with mentions. Empty on
// both counts -> nullopt (no match; the caller logs and skips the pair).
std::optional<ir::CharacterRecord> assemble_record(const ir::PersonalityProfile& profile,
                                                   const ir::ParsedScript& script);

struct MatchOutcome {
  std::vector<ir::CharacterRecord> records;
  std::vector<std::string> unmatched;  // "name (movie)" of profiles left out
};

// Pairs every profile with the scripts of its movie; when several scripts
// share the movie name, the record with the most matched content wins.
MatchOutcome match_corpus(const std::vector<ir::PersonalityProfile>& profiles,
                          const std::vector<ir::ParsedScript>& scripts);

}  // namespace sp::match
