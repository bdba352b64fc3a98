#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sp/ir/types.hpp"

namespace sp::ingest {

enum class SourceFormat { Html, PlainText };

struct RawScript {
  std::string movie_name;
  SourceFormat source_format = SourceFormat::PlainText;
  std::string content;
};

// One Line per non-blank source line, tabs expanded, entities decoded,
// order preserved via line_no. HTML bold markup sets is_bold; plain text
// falls back to the uppercase-above-modal-indent heuristic.
// Throws UndecodableContent / EmptyAfterNormalization.
std::vector<ir::Line> normalize_lines(const RawScript& raw, int tab_width = 8);

// Every bold line starts a section titled by it; its body is the following
// run of non-bold lines. Leading non-bold lines form one untitled section.
std::vector<ir::Section> split_sections(std::vector<ir::Line> lines);

// "the-matrix_1999" -> "The Matrix 1999".
std::string movie_name_from_filename(const std::string& stem);

// Loads every .html/.txt file in the directory (sorted by filename).
// An optional manifest.json maps filenames to movie titles.
std::vector<RawScript> read_script_dir(const std::filesystem::path& dir);

}  // namespace sp::ingest
