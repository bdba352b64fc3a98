#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sp::names {

// Lowercases, strips punctuation, splits on whitespace.
// "O'Brien" -> {"obrien"}; all-punctuation input -> {}.
std::vector<std::string> normalize_name(std::string_view name);

// Token lists are equal, or the token sets share at least one token of
// length >= 3 (short shared tokens like initials do not count).
// Two empty lists never match.
bool tokens_match(const std::vector<std::string>& a, const std::vector<std::string>& b);

// Name match gated on the movie: normalized movie names must be equal and
// the normalized character names must satisfy tokens_match. Symmetric in the
// two names and invariant under case changes.
bool soft_match(std::string_view name_a, std::string_view name_b, std::string_view movie_a,
                std::string_view movie_b);

// Canonical key for grouping by movie ("The  MATRIX" and "the matrix" collide).
std::string movie_key(std::string_view movie);

}  // namespace sp::names
