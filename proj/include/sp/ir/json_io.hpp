#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sp/common/error.hpp"
#include "sp/ir/types.hpp"

namespace sp::ir {

using ordered_json = nlohmann::ordered_json;

// Record JSONL layout (one object per line):
//   id, mbti_profile (character name), subcategory (movie name), scale,
//   personality {dim -> winner}, votes {dim -> {count, agreement}},
//   dialogue [text...], scene [[text, [offsets...]]...], split.
ordered_json record_to_json(const CharacterRecord& record);
CharacterRecord record_from_json(const nlohmann::json& j);

// Profile input layout: {id, name, movie, scale, votes:[{dim, winner, count, agreement}]}.
// A missing scale is inferred from the dimensions present.
PersonalityProfile profile_from_json(const nlohmann::json& j);
ordered_json profile_to_json(const PersonalityProfile& profile);

// Parse artifact layout: {movie, route, fade_in_indent, sections:[...]}.
ordered_json parsed_script_to_json(const ParsedScript& script);
ParsedScript parsed_script_from_json(const nlohmann::json& j);

std::vector<std::string> read_lines(const std::filesystem::path& path);
void write_lines(const std::filesystem::path& path, const std::vector<std::string>& lines);

template <typename T>
std::vector<T> read_jsonl(const std::filesystem::path& path,
                          const std::function<T(const nlohmann::json&)>& parse) {
  std::vector<T> out;
  std::size_t line_no = 0;
  for (const auto& line : read_lines(path)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(parse(nlohmann::json::parse(line)));
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      throw_data("MalformedJson",
                 path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<CharacterRecord> read_records_jsonl(const std::filesystem::path& path);
void write_records_jsonl(const std::filesystem::path& path,
                         const std::vector<CharacterRecord>& records);

std::vector<PersonalityProfile> read_profiles_jsonl(const std::filesystem::path& path);
void write_profiles_jsonl(const std::filesystem::path& path,
                          const std::vector<PersonalityProfile>& profiles);

std::vector<ParsedScript> read_parses_jsonl(const std::filesystem::path& path);
void write_parses_jsonl(const std::filesystem::path& path,
                        const std::vector<ParsedScript>& scripts);

}  // namespace sp::ir
