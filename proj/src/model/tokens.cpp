#include "sp/model/tokens.hpp"

#include <algorithm>
#include <set>

#include "sp/common/text.hpp"

namespace sp::model {

std::uint32_t HashVocab::id_of(const std::string& token) const {
  if (token == kEntToken) return kEntId;
  return 2 + static_cast<std::uint32_t>(text::fnv1a64(token) % (size - 2));
}

std::vector<std::uint32_t> HashVocab::ids_of(const std::vector<std::string>& tokens) const {
  std::vector<std::uint32_t> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) ids.push_back(id_of(t));
  return ids;
}

std::vector<std::string> dialogue_tokens(const ir::CharacterRecord& record) {
  std::vector<std::string> out;
  for (const auto& d : record.dialogues)
    for (const auto& t : text::word_punct_tokens(d)) out.push_back(text::to_lower(t));
  return out;
}

std::vector<std::string> scene_tokens(const ir::CharacterRecord& record) {
  std::vector<std::string> out;
  for (const auto& scene : record.scenes) {
    std::set<int> marks(scene.mentions.begin(), scene.mentions.end());
    auto tokens = text::word_punct_tokens(scene.text);
    for (std::size_t j = 0; j < tokens.size(); ++j) {
      if (marks.count(static_cast<int>(j))) out.push_back(kEntToken);
      out.push_back(text::to_lower(tokens[j]));
    }
  }
  return out;
}

std::vector<std::string> truncate_tokens(std::vector<std::string> tokens, std::size_t budget) {
  if (tokens.size() > budget) tokens.resize(budget);
  return tokens;
}

}  // namespace sp::model
