#include "sp/ingest/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sp/common/error.hpp"
#include "sp/common/text.hpp"

namespace sp::ingest {

namespace {

struct VChar {
  char c;
  bool bold;
};

using VLine = std::vector<VChar>;

std::string decode_entity(std::string_view body) {
  if (body == "amp") return "&";
  if (body == "lt") return "<";
  if (body == "gt") return ">";
  if (body == "quot") return "\"";
  if (body == "apos") return "'";
  if (body == "nbsp") return " ";
  if (!body.empty() && body[0] == '#') {
    long code = 0;
    try {
      code = (body.size() > 1 && (body[1] == 'x' || body[1] == 'X'))
                 ? std::stol(std::string(body.substr(2)), nullptr, 16)
                 : std::stol(std::string(body.substr(1)));
    } catch (...) {
      return std::string("&") + std::string(body) + ";";
    }
    if (code == 160) return " ";  // no-break space
    if (code > 0 && code < 128) return std::string(1, static_cast<char>(code));
    return " ";  // non-ASCII entities collapse to a space
  }
  return std::string("&") + std::string(body) + ";";
}

std::string tag_name(std::string_view tag) {
  std::string name;
  for (char c : tag) {
    if (c == '/' && name.empty()) continue;
    if (std::isalnum(static_cast<unsigned char>(c)))
      name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    else
      break;
  }
  return name;
}

// Streams visible characters with a bold flag, splitting at newlines and
// <br>. <script>/<style> content is skipped.
std::vector<VLine> html_visible_lines(std::string_view html) {
  std::vector<VLine> lines(1);
  int bold_depth = 0;
  std::size_t i = 0;
  bool skipping = false;
  std::string skip_until;

  auto push_char = [&](char c) {
    if (c == '\n') {
      lines.emplace_back();
    } else if (c != '\r') {
      lines.back().push_back({c, bold_depth > 0});
    }
  };

  while (i < html.size()) {
    char c = html[i];
    if (c == '<') {
      std::size_t close = html.find('>', i + 1);
      if (close == std::string_view::npos) break;
      std::string_view tag = html.substr(i + 1, close - i - 1);
      std::string name = tag_name(tag);
      bool closing = !tag.empty() && tag[0] == '/';
      if (skipping) {
        if (closing && name == skip_until) skipping = false;
      } else if (name == "b" || name == "strong") {
        bold_depth += closing ? -1 : 1;
        if (bold_depth < 0) bold_depth = 0;
      } else if (name == "br") {
        push_char('\n');
      } else if (!closing && (name == "script" || name == "style")) {
        skipping = true;
        skip_until = name;
      }
      i = close + 1;
    } else if (c == '&' && !skipping) {
      std::size_t semi = html.find(';', i + 1);
      if (semi != std::string_view::npos && semi - i <= 10) {
        for (char d : decode_entity(html.substr(i + 1, semi - i - 1))) push_char(d);
        i = semi + 1;
      } else {
        push_char(c);
        ++i;
      }
    } else {
      if (!skipping) push_char(c);
      ++i;
    }
  }
  return lines;
}

// Prefers the <pre> blocks when present; script archive pages keep the
// script body preformatted and everything else is chrome.
std::string html_script_region(const std::string& content) {
  std::string lower = text::to_lower(content);
  std::string region;
  std::size_t pos = 0;
  while (true) {
    std::size_t open = lower.find("<pre", pos);
    if (open == std::string::npos) break;
    std::size_t open_end = lower.find('>', open);
    if (open_end == std::string::npos) break;
    std::size_t close = lower.find("</pre", open_end);
    if (close == std::string::npos) close = content.size();
    region += content.substr(open_end + 1, close - open_end - 1);
    region += '\n';
    pos = close;
    if (pos >= content.size()) break;
  }
  return region.empty() ? content : region;
}

VLine expand_vline_tabs(const VLine& in, int tab_width) {
  VLine out;
  int col = 0;
  for (const auto& vc : in) {
    if (vc.c == '\t') {
      int next = (col / tab_width + 1) * tab_width;
      for (; col < next; ++col) out.push_back({' ', vc.bold});
    } else {
      out.push_back(vc);
      ++col;
    }
  }
  return out;
}

std::vector<ir::Line> lines_from_vlines(const std::vector<VLine>& vlines, int tab_width) {
  std::vector<ir::Line> out;
  int line_no = 0;
  for (const auto& raw : vlines) {
    ++line_no;
    VLine vl = expand_vline_tabs(raw, tab_width);
    std::size_t b = 0, e = vl.size();
    while (b < e && std::isspace(static_cast<unsigned char>(vl[b].c))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(vl[e - 1].c))) --e;
    if (b == e) continue;  // blank line
    ir::Line line;
    line.indent = static_cast<int>(b);
    line.line_no = line_no;
    bool all_bold = true;
    for (std::size_t k = b; k < e; ++k) {
      line.text.push_back(vl[k].c);
      if (!std::isspace(static_cast<unsigned char>(vl[k].c)) && !vl[k].bold) all_bold = false;
    }
    line.is_bold = all_bold;
    out.push_back(std::move(line));
  }
  return out;
}

int modal_indent(const std::vector<ir::Line>& lines) {
  std::map<int, int> counts;
  for (const auto& line : lines) ++counts[line.indent];
  int best_indent = 0, best_count = -1;
  for (const auto& [indent, count] : counts) {
    if (count > best_count) {  // ties resolve to the smaller indent
      best_indent = indent;
      best_count = count;
    }
  }
  return best_indent;
}

}  // namespace

std::vector<ir::Line> normalize_lines(const RawScript& raw, int tab_width) {
  if (raw.content.find('\0') != std::string::npos)
    throw_data("UndecodableContent", raw.movie_name + ": binary content");
  if (raw.content.empty()) throw_data("UndecodableContent", raw.movie_name + ": empty content");

  std::vector<ir::Line> lines;
  if (raw.source_format == SourceFormat::Html) {
    lines = lines_from_vlines(html_visible_lines(html_script_region(raw.content)), tab_width);
  } else {
    std::vector<VLine> vlines(1);
    for (char c : raw.content) {
      if (c == '\n')
        vlines.emplace_back();
      else
        vlines.back().push_back({c, false});
    }
    lines = lines_from_vlines(vlines, tab_width);
    // No markup in plain text: treat a line as bold iff it is fully
    // uppercase and sits deeper than the script's modal indent.
    int modal = modal_indent(lines);
    for (auto& line : lines)
      line.is_bold = text::is_all_caps(line.text) && line.indent > modal;
  }

  if (lines.empty())
    throw_data("EmptyAfterNormalization", raw.movie_name + ": no content lines");
  return lines;
}

std::vector<ir::Section> split_sections(std::vector<ir::Line> lines) {
  std::vector<ir::Section> sections;
  ir::Section current;
  bool has_current = false;
  for (auto& line : lines) {
    if (line.is_bold) {
      if (has_current) sections.push_back(std::move(current));
      current = ir::Section{};
      current.title = std::move(line);
      has_current = true;
    } else {
      if (!has_current) has_current = true;  // leading untitled section
      current.body.push_back(std::move(line));
    }
  }
  if (has_current) sections.push_back(std::move(current));
  return sections;
}

std::string movie_name_from_filename(const std::string& stem) {
  std::string out;
  bool word_start = true;
  for (char raw : stem) {
    unsigned char c = static_cast<unsigned char>(raw);
    if (raw == '-' || raw == '_' || std::isspace(c)) {
      if (!out.empty() && out.back() != ' ') out.push_back(' ');
      word_start = true;
    } else {
      out.push_back(word_start ? static_cast<char>(std::toupper(c))
                               : static_cast<char>(std::tolower(c)));
      word_start = false;
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::vector<RawScript> read_script_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw_data("ScriptsDirMissing", dir.string() + " is not a directory");

  std::map<std::string, std::string> manifest;
  auto manifest_path = dir / "manifest.json";
  if (std::filesystem::exists(manifest_path)) {
    std::ifstream in(manifest_path);
    nlohmann::json j = nlohmann::json::parse(in);
    for (const auto& [file, title] : j.items()) manifest[file] = title.get<std::string>();
  }

  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    auto ext = text::to_lower(entry.path().extension().string());
    if (ext == ".html" || ext == ".htm" || ext == ".txt") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<RawScript> scripts;
  for (const auto& path : files) {
    RawScript raw;
    auto ext = text::to_lower(path.extension().string());
    raw.source_format = (ext == ".txt") ? SourceFormat::PlainText : SourceFormat::Html;
    auto it = manifest.find(path.filename().string());
    raw.movie_name =
        it != manifest.end() ? it->second : movie_name_from_filename(path.stem().string());
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    raw.content = ss.str();
    scripts.push_back(std::move(raw));
  }
  return scripts;
}

}  // namespace sp::ingest
