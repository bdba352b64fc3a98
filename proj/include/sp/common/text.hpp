#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace sp::text {

// Column-aware tab expansion: a tab advances to the next multiple of tab_width.
std::string expand_tabs(std::string_view line, int tab_width);

int leading_spaces(std::string_view s);

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);
std::string to_upper(std::string_view s);

// True iff s contains at least one letter and no lowercase letters
// (digits and punctuation are ignored).
bool is_all_caps(std::string_view s);

bool starts_with_ci(std::string_view s, std::string_view prefix);

// Splits on any whitespace run.
std::vector<std::string> whitespace_tokens(std::string_view s);

// Word/punctuation tokenizer: a token is either a maximal run of
// [alnum ' - _] characters or a single non-space punctuation character.
// "Morpheus. Morpheus" -> {"Morpheus", ".", "Morpheus"}.
std::vector<std::string> word_punct_tokens(std::string_view s);

// First character of the token (skipping nothing) is an uppercase letter.
bool is_capitalized_token(std::string_view tok);

std::uint64_t fnv1a64(std::string_view s);

// Order-invariant summation: sorts the terms before adding so the result
// depends only on the multiset of values, not their order.
double stable_sum(std::vector<double> terms);

double mean_of(const std::vector<double>& v);
// Population standard deviation (divide by n).
double population_std(const std::vector<double>& v);

// Deterministic RNG helpers. std::shuffle / distributions are not pinned
// across standard libraries, so splits and samplers go through these.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next_u64() { return eng_(); }
  // Uniform in [0, n). Modulo bias is irrelevant at these scales.
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : eng_() % n; }
  // Uniform in [0, 1).
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 eng_;
};

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace sp::text
