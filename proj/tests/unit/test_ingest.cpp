#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "sp/common/error.hpp"
#include "sp/ingest/ingest.hpp"

using namespace sp;
namespace fs = std::filesystem;

namespace {

ingest::RawScript html_script(std::string content) {
  return {"Test Movie", ingest::SourceFormat::Html, std::move(content)};
}

ingest::RawScript txt_script(std::string content) {
  return {"Test Movie", ingest::SourceFormat::PlainText, std::move(content)};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

}  // namespace

TEST_CASE("html normalization keeps indent, bold and line numbers") {
  auto lines = ingest::normalize_lines(html_script(
      "<html><body><pre>\n"
      "    FADE IN:\n"
      "\n"
      "          <b>INT. HOUSE - NIGHT</b>\n"
      "      A table.\n"
      "</pre></body></html>"));
  REQUIRE(lines.size() == 3);
  CHECK(lines[0].text == "FADE IN:");
  CHECK(lines[0].indent == 4);
  CHECK_FALSE(lines[0].is_bold);
  CHECK(lines[1].text == "INT. HOUSE - NIGHT");
  CHECK(lines[1].indent == 10);
  CHECK(lines[1].is_bold);
  CHECK(lines[2].text == "A table.");
  CHECK(lines[2].indent == 6);
  // Blank source lines are dropped but numbering stays ordered.
  CHECK(lines[0].line_no < lines[1].line_no);
  CHECK(lines[1].line_no < lines[2].line_no);
}

TEST_CASE("html entities and br are decoded") {
  auto lines = ingest::normalize_lines(
      html_script("<pre>A &amp; B&nbsp;C<br>  D &lt;now&gt;</pre>"));
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].text == "A & B C");
  CHECK(lines[1].text == "D <now>");
  CHECK(lines[1].indent == 2);
}

TEST_CASE("script and style content is invisible") {
  auto lines = ingest::normalize_lines(html_script(
      "<pre>keep me</pre><script>var x = 'SHOUT';</script><style>b{}</style>"));
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].text == "keep me");
}

TEST_CASE("tabs expand before indents are measured") {
  auto lines = ingest::normalize_lines(txt_script("\tFADE IN:\n\t\tWORDS\n"), 8);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].indent == 8);
  CHECK(lines[1].indent == 16);
  auto narrow = ingest::normalize_lines(txt_script("\tFADE IN:\n"), 4);
  CHECK(narrow[0].indent == 4);
}

TEST_CASE("plain text marks uppercase lines above the modal indent as bold") {
  // Modal indent is 0 (three description lines); the indented upper-case
  // lines read as section titles.
  auto lines = ingest::normalize_lines(txt_script("FADE IN:\n"
                                                  "A quiet street.\n"
                                                  "Nothing moves.\n"
                                                  "          NEO\n"
                                                  "      Hello.\n"));
  REQUIRE(lines.size() == 5);
  CHECK_FALSE(lines[0].is_bold);  // at the modal indent, not above it
  CHECK_FALSE(lines[1].is_bold);
  CHECK(lines[3].is_bold);
  CHECK_FALSE(lines[4].is_bold);  // mixed case
}

TEST_CASE("undecodable and empty content raise data errors") {
  CHECK_THROWS_WITH_AS(ingest::normalize_lines(txt_script(std::string("a\0b", 3))),
                       doctest::Contains("UndecodableContent"), Error);
  CHECK_THROWS_WITH_AS(ingest::normalize_lines(txt_script("")),
                       doctest::Contains("UndecodableContent"), Error);
  CHECK_THROWS_WITH_AS(ingest::normalize_lines(html_script("<pre>\n\n   \n</pre>")),
                       doctest::Contains("EmptyAfterNormalization"), Error);
}

TEST_CASE("sections split at bold lines") {
  std::vector<ir::Line> lines = {
      {0, "FADE IN:", false, 1},  {0, "A street.", false, 2}, {4, "INT. BAR", true, 3},
      {2, "Smoky air.", false, 4}, {8, "NEO", true, 5},        {6, "Hello.", false, 6},
      {6, "Bye.", false, 7},
  };
  auto sections = ingest::split_sections(lines);
  REQUIRE(sections.size() == 3);
  CHECK_FALSE(sections[0].title.has_value());
  CHECK(sections[0].body.size() == 2);
  CHECK(sections[1].title->text == "INT. BAR");
  CHECK(sections[1].body.size() == 1);
  CHECK(sections[2].title->text == "NEO");
  CHECK(sections[2].body.size() == 2);
  for (const auto& s : sections) CHECK(s.kind == ir::SectionKind::Unlabeled);
}

TEST_CASE("a bold line with no following body still forms a section") {
  std::vector<ir::Line> lines = {{0, "INT. A", true, 1}, {0, "INT. B", true, 2}};
  auto sections = ingest::split_sections(lines);
  REQUIRE(sections.size() == 2);
  CHECK(sections[0].body.empty());
  CHECK(sections[1].title->text == "INT. B");
}

TEST_CASE("movie names come from filename stems") {
  CHECK(ingest::movie_name_from_filename("the-matrix_1999") == "The Matrix 1999");
  CHECK(ingest::movie_name_from_filename("blue-garden_00") == "Blue Garden 00");
  CHECK(ingest::movie_name_from_filename("x") == "X");
}

TEST_CASE("script directory loads sorted with manifest overrides") {
  TempDir dir("sp_ingest_dir_test");
  write(dir.path / "b-movie_01.txt", "FADE IN:\nA room.\n");
  write(dir.path / "a-movie_02.html", "<pre>FADE IN:\nA hall.\n</pre>");
  write(dir.path / "notes.md", "ignore me");
  write(dir.path / "manifest.json", "{\"b-movie_01.txt\": \"Bespoke Title\"}");

  auto scripts = ingest::read_script_dir(dir.path);
  REQUIRE(scripts.size() == 2);
  CHECK(scripts[0].movie_name == "A Movie 02");
  CHECK(scripts[0].source_format == ingest::SourceFormat::Html);
  CHECK(scripts[1].movie_name == "Bespoke Title");
  CHECK(scripts[1].source_format == ingest::SourceFormat::PlainText);
}

TEST_CASE("missing script directory is a config error") {
  CHECK_THROWS_WITH_AS(ingest::read_script_dir("/no/such/dir/anywhere"),
                       doctest::Contains("ScriptsDirMissing"), Error);
}
