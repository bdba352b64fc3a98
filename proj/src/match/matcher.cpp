#include "sp/match/matcher.hpp"

#include <algorithm>
#include <map>

#include "sp/common/names.hpp"
#include "sp/common/text.hpp"

namespace sp::match {

std::vector<ir::PersonalityProfile> filter_profiles(std::vector<ir::PersonalityProfile> profiles,
                                                    int min_voters, double min_agreement) {
  std::vector<ir::PersonalityProfile> kept;
  kept.reserve(profiles.size());
  for (auto& profile : profiles) {
    if (profile.overall_vote_count() < min_voters) continue;
    std::vector<ir::DimensionVote> votes;
    for (auto& vote : profile.votes)
      if (vote.agreement >= min_agreement) votes.push_back(std::move(vote));
    if (votes.empty()) continue;
    profile.votes = std::move(votes);
    kept.push_back(std::move(profile));
  }
  return kept;
}

std::vector<int> extract_scene_mentions(const ir::Section& scene,
                                        const std::string& character_name) {
  const auto name_tokens = names::normalize_name(character_name);
  std::vector<int> offsets;
  if (name_tokens.empty()) return offsets;

  const auto tokens = text::word_punct_tokens(scene.body_text());
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (!text::is_capitalized_token(tokens[i])) {
      ++i;
      continue;
    }
    std::size_t run_end = i;
    while (run_end + 1 < tokens.size() && text::is_capitalized_token(tokens[run_end + 1]))
      ++run_end;

    std::vector<std::string> run_tokens;
    for (std::size_t j = i; j <= run_end; ++j)
      for (auto& t : names::normalize_name(tokens[j])) run_tokens.push_back(std::move(t));
    if (names::tokens_match(run_tokens, name_tokens)) {
      for (std::size_t j = i; j <= run_end; ++j) {
        if (names::tokens_match(names::normalize_name(tokens[j]), name_tokens)) {
          offsets.push_back(static_cast<int>(j));
          break;
        }
      }
    }
    i = run_end + 1;
  }
  return offsets;
}

std::optional<ir::CharacterRecord> assemble_record(const ir::PersonalityProfile& profile,
                                                   const ir::ParsedScript& script) {
  const auto name_tokens = names::normalize_name(profile.character_name);
  ir::CharacterRecord record;
  record.profile = profile;
  for (const auto& section : script.sections) {
    if (section.kind == ir::SectionKind::Dialogue) {
      if (section.title &&
          names::tokens_match(names::normalize_name(section.title->text), name_tokens)) {
        std::string body = section.body_text();
        if (!body.empty()) record.dialogues.push_back(std::move(body));
      }
    } else if (section.kind == ir::SectionKind::Scene) {
      auto mentions = extract_scene_mentions(section, profile.character_name);
      if (!mentions.empty())
        record.scenes.push_back({section.body_text(), std::move(mentions)});
    }
  }
  if (record.dialogues.empty() && record.scenes.empty()) return std::nullopt;
  return record;
}

MatchOutcome match_corpus(const std::vector<ir::PersonalityProfile>& profiles,
                          const std::vector<ir::ParsedScript>& scripts) {
  std::map<std::string, std::vector<std::size_t>> by_movie;
  for (std::size_t i = 0; i < scripts.size(); ++i) {
    std::string key = names::movie_key(scripts[i].movie_name);
    if (!key.empty()) by_movie[key].push_back(i);
  }

  MatchOutcome out;
  for (const auto& profile : profiles) {
    std::string key = names::movie_key(profile.movie_name);
    auto it = key.empty() ? by_movie.end() : by_movie.find(key);
    std::optional<ir::CharacterRecord> best;
    std::size_t best_content = 0;
    if (it != by_movie.end()) {
      for (std::size_t idx : it->second) {
        auto record = assemble_record(profile, scripts[idx]);
        if (!record) continue;
        std::size_t content = record->dialogues.size() + record->scenes.size();
        if (!best || content > best_content) {
          best_content = content;
          best = std::move(record);
        }
      }
    }
    if (best) {
      out.records.push_back(std::move(*best));
    } else {
      out.unmatched.push_back(profile.character_name + " (" + profile.movie_name + ")");
    }
  }
  return out;
}

}  // namespace sp::match
