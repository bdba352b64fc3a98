#include "sp/common/names.hpp"

#include <cctype>

namespace sp::names {

std::vector<std::string> normalize_name(std::string_view name) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char raw : name) {
    unsigned char c = static_cast<unsigned char>(raw);
    if (std::isalnum(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (std::isspace(c)) {
      if (!cur.empty()) tokens.push_back(std::move(cur)), cur.clear();
    }
    // Punctuation is dropped without breaking the token: O'Brien -> obrien.
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

bool tokens_match(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.empty() || b.empty()) return false;
  if (a == b) return true;
  for (const auto& ta : a) {
    if (ta.size() < 3) continue;
    for (const auto& tb : b) {
      if (ta == tb) return true;
    }
  }
  return false;
}

bool soft_match(std::string_view name_a, std::string_view name_b, std::string_view movie_a,
                std::string_view movie_b) {
  if (normalize_name(movie_a) != normalize_name(movie_b)) return false;
  if (normalize_name(movie_a).empty()) return false;
  return tokens_match(normalize_name(name_a), normalize_name(name_b));
}

std::string movie_key(std::string_view movie) {
  std::string key;
  for (const auto& tok : normalize_name(movie)) {
    if (!key.empty()) key.push_back(' ');
    key += tok;
  }
  return key;
}

}  // namespace sp::names
