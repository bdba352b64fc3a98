#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sp/ir/types.hpp"

namespace sp::model {

inline constexpr const char* kEntToken = "[ent]";
inline constexpr std::uint32_t kPadId = 0;
inline constexpr std::uint32_t kEntId = 1;

// Hashing vocabulary: no fitting, ids are stable across corpora. 0 and 1 are
// reserved for padding and the [ent] marker.
struct HashVocab {
  std::uint32_t size = 1u << 15;

  std::uint32_t id_of(const std::string& token) const;
  std::vector<std::uint32_t> ids_of(const std::vector<std::string>& tokens) const;
};

// All dialogue texts of the record, concatenated, lowercased word/punct tokens.
std::vector<std::string> dialogue_tokens(const ir::CharacterRecord& record);

// Scene texts with the [ent] marker inserted before every stored mention
// offset; all other tokens lowercased.
std::vector<std::string> scene_tokens(const ir::CharacterRecord& record);

// First budget tokens (view-local); no-op when the stream is shorter.
std::vector<std::string> truncate_tokens(std::vector<std::string> tokens, std::size_t budget);

}  // namespace sp::model
