#include "sp/ir/json_io.hpp"

#include <fstream>

#include "sp/common/error.hpp"

namespace sp::ir {

namespace {

// Emits votes in canonical dimension order so identical records always
// serialize to identical bytes.
std::vector<const DimensionVote*> ordered_votes(const PersonalityProfile& profile) {
  std::vector<const DimensionVote*> out;
  for (const auto& dim : dimensions_for(profile.scale)) {
    if (const auto* v = profile.find_vote(dim.id)) out.push_back(v);
  }
  // Defensive: keep votes whose dimension is off-scale (validation reports them).
  for (const auto& v : profile.votes) {
    bool seen = false;
    for (const auto* o : out) seen = seen || o == &v;
    if (!seen) out.push_back(&v);
  }
  return out;
}

Scale infer_scale(const nlohmann::json& votes) {
  for (const auto& v : votes) {
    auto dim = find_dimension(v.at("dim").get<std::string>());
    if (dim && scale_of_dimension(*dim) == Scale::Global5) return Scale::Global5;
  }
  return Scale::MBTI;
}

}  // namespace

ordered_json record_to_json(const CharacterRecord& record) {
  const auto& p = record.profile;
  ordered_json j;
  j["id"] = p.profile_id;
  j["mbti_profile"] = p.character_name;
  j["subcategory"] = p.movie_name;
  j["scale"] = to_string(p.scale);
  ordered_json personality = ordered_json::object();
  ordered_json votes = ordered_json::object();
  for (const auto* v : ordered_votes(p)) {
    personality[v->dimension] = v->winner;
    votes[v->dimension] = {{"count", v->vote_count}, {"agreement", v->agreement}};
  }
  j["personality"] = personality;
  j["votes"] = votes;
  j["dialogue"] = record.dialogues;
  ordered_json scenes = ordered_json::array();
  for (const auto& s : record.scenes) scenes.push_back(ordered_json::array({s.text, s.mentions}));
  j["scene"] = scenes;
  j["split"] = to_string(record.split);
  return j;
}

CharacterRecord record_from_json(const nlohmann::json& j) {
  CharacterRecord record;
  auto& p = record.profile;
  p.profile_id = j.at("id").get<std::string>();
  p.character_name = j.at("mbti_profile").get<std::string>();
  p.movie_name = j.at("subcategory").get<std::string>();
  if (auto scale = scale_from(j.value("scale", "MBTI"))) p.scale = *scale;
  const auto& personality = j.at("personality");
  for (const auto& [dim, info] : j.at("votes").items()) {
    DimensionVote vote;
    vote.dimension = dim;
    vote.winner = personality.at(dim).get<std::string>();
    vote.vote_count = info.at("count").get<int>();
    vote.agreement = info.at("agreement").get<double>();
    p.votes.push_back(std::move(vote));
  }
  record.dialogues = j.at("dialogue").get<std::vector<std::string>>();
  for (const auto& s : j.at("scene")) {
    SceneMention scene;
    scene.text = s.at(0).get<std::string>();
    scene.mentions = s.at(1).get<std::vector<int>>();
    record.scenes.push_back(std::move(scene));
  }
  if (auto split = split_from(j.value("split", "unassigned"))) record.split = *split;
  return record;
}

PersonalityProfile profile_from_json(const nlohmann::json& j) {
  PersonalityProfile p;
  p.profile_id = j.at("id").get<std::string>();
  p.character_name = j.at("name").get<std::string>();
  p.movie_name = j.at("movie").get<std::string>();
  const auto& votes = j.at("votes");
  if (j.contains("scale")) {
    auto scale = scale_from(j.at("scale").get<std::string>());
    if (!scale) throw_data("UnknownScale", "profile " + p.profile_id);
    p.scale = *scale;
  } else {
    p.scale = infer_scale(votes);
  }
  for (const auto& v : votes) {
    DimensionVote vote;
    vote.dimension = v.at("dim").get<std::string>();
    vote.winner = v.at("winner").get<std::string>();
    vote.vote_count = v.at("count").get<int>();
    vote.agreement = v.at("agreement").get<double>();
    p.votes.push_back(std::move(vote));
  }
  return p;
}

ordered_json profile_to_json(const PersonalityProfile& profile) {
  ordered_json j;
  j["id"] = profile.profile_id;
  j["name"] = profile.character_name;
  j["movie"] = profile.movie_name;
  j["scale"] = to_string(profile.scale);
  ordered_json votes = ordered_json::array();
  for (const auto* v : ordered_votes(profile)) {
    votes.push_back({{"dim", v->dimension},
                     {"winner", v->winner},
                     {"count", v->vote_count},
                     {"agreement", v->agreement}});
  }
  j["votes"] = votes;
  return j;
}

namespace {

ordered_json line_to_json(const Line& line) {
  return ordered_json{
      {"indent", line.indent}, {"text", line.text}, {"bold", line.is_bold}, {"no", line.line_no}};
}

Line line_from_json(const nlohmann::json& j) {
  Line line;
  line.indent = j.at("indent").get<int>();
  line.text = j.at("text").get<std::string>();
  line.is_bold = j.at("bold").get<bool>();
  line.line_no = j.at("no").get<int>();
  return line;
}

}  // namespace

ordered_json parsed_script_to_json(const ParsedScript& script) {
  ordered_json j;
  j["movie"] = script.movie_name;
  j["route"] = to_string(script.route);
  if (script.fade_in_indent)
    j["fade_in_indent"] = *script.fade_in_indent;
  else
    j["fade_in_indent"] = nullptr;
  ordered_json sections = ordered_json::array();
  for (const auto& s : script.sections) {
    ordered_json sec;
    sec["title"] = s.title ? ordered_json(line_to_json(*s.title)) : ordered_json(nullptr);
    sec["kind"] = to_string(s.kind);
    sec["source"] = to_string(s.source);
    ordered_json body = ordered_json::array();
    for (const auto& line : s.body) body.push_back(line_to_json(line));
    sec["body"] = body;
    sections.push_back(std::move(sec));
  }
  j["sections"] = sections;
  return j;
}

ParsedScript parsed_script_from_json(const nlohmann::json& j) {
  ParsedScript script;
  script.movie_name = j.at("movie").get<std::string>();
  if (auto route = parse_route_from(j.at("route").get<std::string>())) script.route = *route;
  if (!j.at("fade_in_indent").is_null()) script.fade_in_indent = j.at("fade_in_indent").get<int>();
  for (const auto& sec : j.at("sections")) {
    Section section;
    if (!sec.at("title").is_null()) section.title = line_from_json(sec.at("title"));
    if (auto kind = section_kind_from(sec.at("kind").get<std::string>())) section.kind = *kind;
    if (auto source = label_source_from(sec.at("source").get<std::string>()))
      section.source = *source;
    for (const auto& line : sec.at("body")) section.body.push_back(line_from_json(line));
    script.sections.push_back(std::move(section));
  }
  return script;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw_data("FileOpen", "cannot read " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

void write_lines(const std::filesystem::path& path, const std::vector<std::string>& lines) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_data("FileOpen", "cannot write " + path.string());
  for (const auto& line : lines) out << line << '\n';
}

std::vector<CharacterRecord> read_records_jsonl(const std::filesystem::path& path) {
  return read_jsonl<CharacterRecord>(path, [](const nlohmann::json& j) {
    return record_from_json(j);
  });
}

void write_records_jsonl(const std::filesystem::path& path,
                         const std::vector<CharacterRecord>& records) {
  std::vector<std::string> lines;
  lines.reserve(records.size());
  for (const auto& r : records) lines.push_back(record_to_json(r).dump());
  write_lines(path, lines);
}

std::vector<PersonalityProfile> read_profiles_jsonl(const std::filesystem::path& path) {
  return read_jsonl<PersonalityProfile>(path, [](const nlohmann::json& j) {
    return profile_from_json(j);
  });
}

void write_profiles_jsonl(const std::filesystem::path& path,
                          const std::vector<PersonalityProfile>& profiles) {
  std::vector<std::string> lines;
  lines.reserve(profiles.size());
  for (const auto& p : profiles) lines.push_back(profile_to_json(p).dump());
  write_lines(path, lines);
}

std::vector<ParsedScript> read_parses_jsonl(const std::filesystem::path& path) {
  return read_jsonl<ParsedScript>(path, [](const nlohmann::json& j) {
    return parsed_script_from_json(j);
  });
}

void write_parses_jsonl(const std::filesystem::path& path,
                        const std::vector<ParsedScript>& scripts) {
  std::vector<std::string> lines;
  lines.reserve(scripts.size());
  for (const auto& s : scripts) lines.push_back(parsed_script_to_json(s).dump());
  write_lines(path, lines);
}

}  // namespace sp::ir
