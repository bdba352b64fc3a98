#include "sp/common/text.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace sp::text {

namespace {
inline bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
inline bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
inline bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
inline bool is_word_char(char c) { return is_alnum(c) || c == '\'' || c == '-' || c == '_'; }
}  // namespace

std::string expand_tabs(std::string_view line, int tab_width) {
  if (tab_width < 1) tab_width = 1;
  std::string out;
  out.reserve(line.size());
  int col = 0;
  for (char c : line) {
    if (c == '\t') {
      int next = (col / tab_width + 1) * tab_width;
      out.append(static_cast<std::size_t>(next - col), ' ');
      col = next;
    } else {
      out.push_back(c);
      ++col;
    }
  }
  return out;
}

int leading_spaces(std::string_view s) {
  int n = 0;
  for (char c : s) {
    if (c == ' ')
      ++n;
    else
      break;
  }
  return n;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string to_upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

bool is_all_caps(std::string_view s) {
  bool saw_letter = false;
  for (char c : s) {
    if (!is_alpha(c)) continue;
    saw_letter = true;
    if (std::islower(static_cast<unsigned char>(c))) return false;
  }
  return saw_letter;
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[i])) !=
        std::tolower(static_cast<unsigned char>(prefix[i])))
      return false;
  }
  return true;
}

std::vector<std::string> whitespace_tokens(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t b = i;
    while (i < s.size() && !is_space(s[i])) ++i;
    if (i > b) out.emplace_back(s.substr(b, i - b));
  }
  return out;
}

std::vector<std::string> word_punct_tokens(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (is_word_char(c)) {
      std::size_t b = i;
      while (i < s.size() && is_word_char(s[i])) ++i;
      out.emplace_back(s.substr(b, i - b));
    } else {
      out.emplace_back(1, c);
      ++i;
    }
  }
  return out;
}

bool is_capitalized_token(std::string_view tok) {
  if (tok.empty()) return false;
  unsigned char c = static_cast<unsigned char>(tok.front());
  return std::isupper(c) != 0;
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

double stable_sum(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end());
  double acc = 0.0;
  for (double t : terms) acc += t;
  return acc;
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

double population_std(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double mu = mean_of(v);
  double acc = 0.0;
  for (double x : v) acc += (x - mu) * (x - mu);
  return std::sqrt(acc / static_cast<double>(v.size()));
}

}  // namespace sp::text
