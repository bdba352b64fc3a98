#include "sp/synth/synth.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "sp/common/error.hpp"
#include "sp/ir/json_io.hpp"

namespace sp::synth {

namespace {

const std::vector<std::string>& name_pool() {
  static const std::vector<std::string> pool = {
      "Mara",  "Jonas", "Petra", "Silas", "Nadia", "Orin",  "Tessa", "Rufus",
      "Greta", "Felix", "Iris",  "Marco", "Lena",  "Oscar", "Vera",  "Hugo",
      "Dina",  "Amos",  "Cora",  "Ezra",  "Wanda", "Bruno", "Selma", "Tobin"};
  return pool;
}

const std::vector<std::string>& movie_adjectives() {
  static const std::vector<std::string> pool = {"blue",   "silent",   "broken", "golden",
                                                "hidden", "crimson",  "lonely", "frozen",
                                                "paper",  "electric"};
  return pool;
}

const std::vector<std::string>& movie_nouns() {
  static const std::vector<std::string> pool = {"horizon", "garden", "station", "harbor",
                                                "mirror",  "canyon", "orchard", "signal",
                                                "lantern", "meadow"};
  return pool;
}

const std::vector<std::string>& places() {
  static const std::vector<std::string> pool = {"LAB",    "HALLWAY", "STATION", "ROOFTOP",
                                                "GARDEN", "OFFICE",  "CELLAR",  "MARKET"};
  return pool;
}

const std::vector<std::string>& times_of_day() {
  static const std::vector<std::string> pool = {"DAY", "NIGHT", "DUSK", "DAWN"};
  return pool;
}

const std::vector<std::string>& scene_verbs() {
  static const std::vector<std::string> pool = {"watches", "enters",  "studies", "crosses",
                                                "follows", "circles", "leaves",  "checks"};
  return pool;
}

const std::vector<std::string>& scene_objects() {
  static const std::vector<std::string> pool = {"the door",      "the console", "the window",
                                                "the stairwell", "the archway", "the ledger",
                                                "the corridor",  "the skylight"};
  return pool;
}

const std::vector<std::string>& filler_words() {
  static const std::vector<std::string> pool = {
      "signal", "river",  "static", "lantern", "cipher", "murmur", "harbor",  "ember",
      "tunnel", "sketch", "ledger", "mirror",  "orbit",  "thread", "canvas",  "rumor",
      "anchor", "spiral", "meadow", "beacon",  "code",   "wire",   "whisper", "engine"};
  return pool;
}

std::string capitalize(const std::string& s) {
  std::string out = s;
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

template <typename T>
const T& pick(const std::vector<T>& pool, text::Rng& rng) {
  return pool[rng.below(pool.size())];
}

std::string filler_sentence(text::Rng& rng, std::size_t min_words, std::size_t max_words) {
  const std::size_t n = min_words + rng.below(max_words - min_words + 1);
  std::string s;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) s += ' ';
    s += pick(filler_words(), rng);
  }
  s += '.';
  return s;
}

// One non-blank generated line before normalization.
struct RawLine {
  int indent = 0;
  std::string text;
  bool bold = false;
};

struct ScriptPlan {
  std::string filename;
  std::string movie_name;
  bool html = false;
  bool with_fade_in = true;
  int n_dialogue = 10;  // titled dialogue sections
  int n_scene = 9;      // titled scene sections; one untitled leading Scene on top
  int fade_indent = 0;
  int dialogue_indent = 10;
  std::vector<std::string> characters;
};

std::string render_txt(const std::vector<RawLine>& lines) {
  std::string out;
  for (const auto& line : lines) {
    out.append(static_cast<std::size_t>(line.indent), ' ');
    out += line.text;
    out += "\n\n";  // blank separators are dropped by normalization
  }
  return out;
}

std::string html_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '&') out += "&amp;";
    else if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else out += c;
  }
  return out;
}

std::string render_html(const std::vector<RawLine>& lines, const std::string& title) {
  std::string out = "<html><head><title>" + html_escape(title) + "</title></head><body>\n<pre>\n";
  for (const auto& line : lines) {
    out.append(static_cast<std::size_t>(line.indent), ' ');
    if (line.bold) out += "<b>" + html_escape(line.text) + "</b>";
    else out += html_escape(line.text);
    out += '\n';
  }
  out += "</pre>\n</body></html>\n";
  return out;
}

GoldScript build_script(const ScriptPlan& plan, text::Rng& rng) {
  std::vector<RawLine> lines;
  std::vector<ir::SectionKind> gold;

  const int heading_indent = plan.fade_indent + 6;
  const int name_indent = plan.fade_indent + 18;

  // Leading untitled section.
  if (plan.with_fade_in)
    lines.push_back({plan.fade_indent, rng.below(2) == 0 ? "FADE IN:" : "FADE IN ON", false});
  lines.push_back({plan.fade_indent,
                   capitalize(pick(plan.characters, rng)) + " " + pick(scene_verbs(), rng) + " " +
                       pick(scene_objects(), rng) + ".",
                   false});
  gold.push_back(ir::SectionKind::Scene);

  // Interleave titled sections; kinds drawn without replacement.
  std::vector<ir::SectionKind> kinds;
  kinds.insert(kinds.end(), static_cast<std::size_t>(plan.n_dialogue),
               ir::SectionKind::Dialogue);
  kinds.insert(kinds.end(), static_cast<std::size_t>(plan.n_scene), ir::SectionKind::Scene);
  text::shuffle(kinds, rng);

  for (ir::SectionKind kind : kinds) {
    if (kind == ir::SectionKind::Scene) {
      std::string heading = std::string(rng.below(2) == 0 ? "INT. " : "EXT. ") +
                            pick(places(), rng) + " - " + pick(times_of_day(), rng);
      lines.push_back({heading_indent, heading, true});
      const std::size_t n_body = 2 + rng.below(2);
      for (std::size_t b = 0; b < n_body; ++b) {
        std::string who = pick(plan.characters, rng);
        std::string extra = rng.below(3) == 0
                                ? " " + capitalize(pick(plan.characters, rng)) + " waits."
                                : "";
        lines.push_back({plan.fade_indent,
                         who + " " + pick(scene_verbs(), rng) + " " +
                             pick(scene_objects(), rng) + "." + extra,
                         false});
      }
    } else {
      lines.push_back({name_indent, text::to_upper(pick(plan.characters, rng)), true});
      const std::size_t n_body = 1 + rng.below(2);
      for (std::size_t b = 0; b < n_body; ++b)
        lines.push_back({plan.dialogue_indent, filler_sentence(rng, 4, 9), false});
    }
    gold.push_back(kind);
  }

  if (!plan.html) {
    // The plain-text bold heuristic needs the anchor level to be the modal
    // indent; pad the leading section until that holds.
    std::map<int, int> counts;
    for (const auto& line : lines) ++counts[line.indent];
    int other_max = 0;
    for (const auto& [indent, count] : counts)
      if (indent != plan.fade_indent) other_max = std::max(other_max, count);
    int have = counts[plan.fade_indent];
    std::size_t insert_at = plan.with_fade_in ? 1 : 0;
    while (have <= other_max) {
      lines.insert(lines.begin() + static_cast<long>(insert_at) + 1,
                   {plan.fade_indent,
                    pick(plan.characters, rng) + " " + pick(scene_verbs(), rng) + " " +
                        pick(scene_objects(), rng) + ".",
                    false});
      ++have;
    }
  }

  GoldScript out;
  out.filename = plan.filename;
  out.raw.movie_name = plan.movie_name;
  out.gold = std::move(gold);
  out.expected_route = !plan.with_fade_in ? ir::ParseRoute::NoFadeIn
                       : plan.n_dialogue * 5 > 3 * (plan.n_dialogue + plan.n_scene + 1)
                           ? ir::ParseRoute::SilverFailure
                           : ir::ParseRoute::SilverSuccess;
  if (plan.html) {
    out.raw.source_format = ingest::SourceFormat::Html;
    out.raw.content = render_html(lines, plan.movie_name);
  } else {
    out.raw.source_format = ingest::SourceFormat::PlainText;
    out.raw.content = render_txt(lines);
  }
  return out;
}

ir::PersonalityProfile make_profile(const std::string& id, const std::string& name,
                                    const std::string& movie, std::size_t salt) {
  ir::PersonalityProfile profile;
  profile.profile_id = id;
  profile.character_name = name;
  profile.movie_name = movie;
  profile.scale = ir::Scale::MBTI;
  const auto& dims = ir::mbti_dimensions();
  for (std::size_t k = 0; k < dims.size(); ++k) {
    ir::DimensionVote vote;
    vote.dimension = dims[k].id;
    vote.winner = (salt >> k) & 1 ? dims[k].pole_b_str() : dims[k].pole_a_str();
    vote.vote_count = static_cast<int>(3 + (salt + k) % 9);
    vote.agreement = 0.60 + 0.05 * static_cast<double>((salt + 2 * k) % 8);
    profile.votes.push_back(std::move(vote));
  }
  return profile;
}

}  // namespace

ScriptCorpus make_script_corpus(const ScriptCorpusConfig& config) {
  text::Rng rng(config.seed);
  ScriptCorpus corpus;
  const int total = config.n_success + config.n_failure + config.n_no_fade;
  std::size_t profile_id = 0;

  for (int i = 0; i < total; ++i) {
    ScriptPlan plan;
    const std::string adj = movie_adjectives()[static_cast<std::size_t>(i) % 10];
    const std::string noun = movie_nouns()[(static_cast<std::size_t>(i) * 3 + 1) % 10];
    std::ostringstream fn;
    fn << adj << "-" << noun << "_" << (i < 10 ? "0" : "") << i;
    plan.filename = fn.str() + (i % 2 == 0 ? ".html" : ".txt");
    plan.movie_name = capitalize(adj) + " " + capitalize(noun) + " " + (i < 10 ? "0" : "") +
                      std::to_string(i);
    plan.html = i % 2 == 0;
    plan.fade_indent = i % 5;
    plan.dialogue_indent = plan.fade_indent + 10 + i % 3;

    if (i < config.n_success) {
      plan.with_fade_in = true;
      plan.n_dialogue = 9 + i % 3;  // ratio 0.45 / 0.50 / 0.55 of 20 sections
      plan.n_scene = 19 - plan.n_dialogue;
    } else if (i < config.n_success + config.n_failure) {
      plan.with_fade_in = true;
      plan.n_dialogue = 16;  // ratio 0.80, beyond the band
      plan.n_scene = 3;
    } else {
      plan.with_fade_in = false;
      plan.n_dialogue = 9 + i % 3;
      plan.n_scene = 19 - plan.n_dialogue;
    }

    for (std::size_t c = 0; c < 3; ++c)
      plan.characters.push_back(
          name_pool()[(static_cast<std::size_t>(i) * 3 + c * 7) % name_pool().size()]);
    std::sort(plan.characters.begin(), plan.characters.end());
    plan.characters.erase(std::unique(plan.characters.begin(), plan.characters.end()),
                          plan.characters.end());

    corpus.scripts.push_back(build_script(plan, rng));

    for (std::size_t c = 0; c < plan.characters.size(); ++c) {
      const std::string& name = plan.characters[c];
      std::string shown = name;
      if (profile_id % 5 == 1) shown = text::to_upper(name);
      if (profile_id % 5 == 3) shown = name + " " + capitalize(pick(movie_nouns(), rng));
      std::string movie = profile_id % 7 == 2 ? text::to_upper(plan.movie_name) : plan.movie_name;
      corpus.profiles.push_back(
          make_profile("p" + std::to_string(profile_id), shown, movie, profile_id + 3));
      ++profile_id;
    }
  }

  // Profiles the filter or the matcher must reject.
  {
    ir::PersonalityProfile few_voters =
        make_profile("reject-voters", "Mara", corpus.scripts[0].raw.movie_name, 4);
    for (auto& vote : few_voters.votes) vote.vote_count = 2;
    corpus.profiles.push_back(std::move(few_voters));

    ir::PersonalityProfile low_agreement =
        make_profile("reject-agreement", "Jonas", corpus.scripts[0].raw.movie_name, 5);
    for (auto& vote : low_agreement.votes) vote.agreement = 0.55;
    corpus.profiles.push_back(std::move(low_agreement));

    ir::PersonalityProfile one_dim_low =
        make_profile("partial-dims", name_pool()[3], corpus.scripts[1].raw.movie_name, 6);
    one_dim_low.votes[0].agreement = 0.55;  // that dimension alone is dropped
    corpus.profiles.push_back(std::move(one_dim_low));

    corpus.profiles.push_back(make_profile("reject-movie", "Mara", "Unseen Movie 99", 7));
  }

  // A few Global5 profiles over existing characters.
  for (int g = 0; g < 4; ++g) {
    std::size_t si = static_cast<std::size_t>(g * 5) % corpus.scripts.size();
    const auto& script = corpus.scripts[si];
    ir::PersonalityProfile profile;
    profile.profile_id = "g" + std::to_string(g);
    profile.character_name =
        name_pool()[(si * 3 + (static_cast<std::size_t>(g) % 3) * 7) % name_pool().size()];
    profile.movie_name = script.raw.movie_name;
    profile.scale = ir::Scale::Global5;
    const auto& dims = ir::global5_dimensions();
    for (std::size_t k = 0; k < dims.size(); ++k) {
      ir::DimensionVote vote;
      vote.dimension = dims[k].id;
      vote.winner = (static_cast<std::size_t>(g) + k) % 2 ? dims[k].pole_b_str()
                                                          : dims[k].pole_a_str();
      vote.vote_count = 4 + g;
      vote.agreement = 0.65 + 0.05 * static_cast<double>(k % 5);
      profile.votes.push_back(std::move(vote));
    }
    corpus.profiles.push_back(std::move(profile));
  }

  return corpus;
}

void write_script_corpus(const ScriptCorpus& corpus, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir / "scripts");
  for (const auto& script : corpus.scripts) {
    std::ofstream out(dir / "scripts" / script.filename, std::ios::binary);
    if (!out) throw_data("FileOpen", "cannot write " + script.filename);
    out << script.raw.content;
  }
  ir::write_profiles_jsonl(dir / "profiles.jsonl", corpus.profiles);

  nlohmann::ordered_json gold = nlohmann::ordered_json::object();
  for (const auto& script : corpus.scripts) {
    nlohmann::ordered_json entry;
    entry["movie"] = script.raw.movie_name;
    entry["route"] = ir::to_string(script.expected_route);
    nlohmann::ordered_json kinds = nlohmann::ordered_json::array();
    for (auto kind : script.gold) kinds.push_back(ir::to_string(kind));
    entry["kinds"] = std::move(kinds);
    gold[script.filename] = std::move(entry);
  }
  ir::write_lines(dir / "gold.json", {gold.dump(2)});
}

std::vector<ir::CharacterRecord> make_marker_records(int n, const ir::Dimension& dimension,
                                                     std::uint64_t seed) {
  text::Rng rng(seed);
  std::vector<ir::CharacterRecord> records;
  for (int k = 0; k < n; ++k) {
    const bool pole_b = k % 2 == 1;
    const std::string marker = pole_b ? "umbrafen" : "zephyrite";
    std::ostringstream id;
    id << "m" << k;
    std::ostringstream who;
    who << "Char" << 100 + k;

    ir::CharacterRecord record;
    record.profile.profile_id = id.str();
    record.profile.character_name = who.str();
    record.profile.movie_name = "Marker Movie " + std::to_string(k);
    record.profile.scale = ir::scale_of_dimension(dimension);
    record.profile.votes.push_back(
        {dimension.id, pole_b ? dimension.pole_b_str() : dimension.pole_a_str(), 5, 0.9});

    const std::size_t n_dialogues = 3 + rng.below(3);
    std::size_t planted = 0;
    for (std::size_t d = 0; d < n_dialogues; ++d) {
      std::string line = filler_sentence(rng, 6, 12);
      if (planted < 2 || rng.below(3) == 0) {
        line = marker + " " + line;
        ++planted;
      }
      record.dialogues.push_back(std::move(line));
    }
    record.scenes.push_back({who.str() + " waits by the door.", {0}});
    records.push_back(std::move(record));
  }
  return records;
}

std::vector<ir::CharacterRecord> make_scene_signal_records(int n, const ir::Dimension& dimension,
                                                           std::uint64_t seed) {
  text::Rng rng(seed);
  std::vector<ir::CharacterRecord> records;
  for (int k = 0; k < n; ++k) {
    const bool pole_b = k % 2 == 1;
    const std::string signal = pole_b ? "glooms" : "gleams";
    std::ostringstream who;
    who << "Figure" << 100 + k;

    ir::CharacterRecord record;
    record.profile.profile_id = "s" + std::to_string(k);
    record.profile.character_name = who.str();
    record.profile.movie_name = "Signal Movie " + std::to_string(k);
    record.profile.scale = ir::scale_of_dimension(dimension);
    record.profile.votes.push_back(
        {dimension.id, pole_b ? dimension.pole_b_str() : dimension.pole_a_str(), 5, 0.9});

    // Dialogue view: pure filler, identical distribution for both poles.
    const std::size_t n_dialogues = 2 + rng.below(3);
    for (std::size_t d = 0; d < n_dialogues; ++d)
      record.dialogues.push_back(filler_sentence(rng, 6, 12));

    // Scene view: the signal token sits right after each name mention.
    const std::size_t n_scenes = 2 + rng.below(2);
    for (std::size_t s = 0; s < n_scenes; ++s) {
      std::string text = who.str() + " " + signal + " by " + pick(scene_objects(), rng).substr(4) +
                         ". " + who.str() + " " + signal + " again.";
      // Tokens: Name signal by <obj> . Name signal again .
      auto toks = text::word_punct_tokens(text);
      std::vector<int> mentions;
      for (std::size_t t = 0; t < toks.size(); ++t)
        if (toks[t] == who.str()) mentions.push_back(static_cast<int>(t));
      record.scenes.push_back({std::move(text), std::move(mentions)});
    }
    records.push_back(std::move(record));
  }
  return records;
}

ir::ParsedScript random_script(text::Rng& rng) {
  ir::ParsedScript script;
  script.movie_name = "Random " + std::to_string(rng.below(100000));
  const std::size_t n_sections = 1 + rng.below(40);
  for (std::size_t s = 0; s < n_sections; ++s) {
    ir::Section section;
    const bool with_title = rng.below(2) == 0;
    int line_no = static_cast<int>(s) * 8 + 1;
    if (with_title) {
      section.title = ir::Line{static_cast<int>(rng.below(60)),
                               text::to_upper(pick(name_pool(), rng)), true, line_no++};
    }
    const std::size_t n_body = (with_title ? 0 : 1) + rng.below(4);
    for (std::size_t b = 0; b < std::max<std::size_t>(n_body, with_title ? 0 : 1); ++b) {
      section.body.push_back(ir::Line{static_cast<int>(rng.below(60)),
                                      filler_sentence(rng, 2, 6), false, line_no++});
    }
    if (!section.title && section.body.empty())
      section.body.push_back(ir::Line{0, "stub", false, line_no});
    script.sections.push_back(std::move(section));
  }
  return script;
}

}  // namespace sp::synth
