#include "sp/data/builder.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "sp/common/error.hpp"
#include "sp/common/names.hpp"
#include "sp/common/text.hpp"
#include "sp/ir/json_io.hpp"

namespace sp::data {

namespace {

Moments moments_of(const std::vector<double>& values) {
  Moments m;
  m.count = values.size();
  if (values.empty()) return m;
  m.mean = text::mean_of(values);
  m.min = *std::min_element(values.begin(), values.end());
  m.max = *std::max_element(values.begin(), values.end());
  return m;
}

double word_count(const std::string& s) {
  return static_cast<double>(text::whitespace_tokens(s).size());
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << v;
  return os.str();
}

}  // namespace

std::vector<ir::CharacterRecord> split_dataset(std::vector<ir::CharacterRecord> records,
                                               SplitRatios ratios, std::uint64_t seed) {
  if (records.empty()) throw_data("EmptyDataset", "no records to split");
  double sum = ratios.train + ratios.dev + ratios.test;
  if (ratios.train < 0 || ratios.dev < 0 || ratios.test < 0 || std::abs(sum - 1.0) > 1e-9)
    throw_config("BadSplitRatios", "ratios must be nonnegative and sum to 1");

  std::map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < records.size(); ++i)
    groups[names::movie_key(records[i].profile.movie_name)].push_back(i);

  std::vector<std::string> keys;
  keys.reserve(groups.size());
  for (const auto& [key, members] : groups) keys.push_back(key);
  text::Rng rng(seed);
  text::shuffle(keys, rng);

  const double total = static_cast<double>(records.size());
  const ir::Split split_ids[3] = {ir::Split::Train, ir::Split::Dev, ir::Split::Test};
  double target[3] = {ratios.train * total, ratios.dev * total, ratios.test * total};
  double assigned[3] = {0.0, 0.0, 0.0};
  for (const auto& key : keys) {
    int best = 0;
    for (int s = 1; s < 3; ++s)
      if (target[s] - assigned[s] > target[best] - assigned[best]) best = s;
    const auto& members = groups[key];
    assigned[best] += static_cast<double>(members.size());
    for (std::size_t idx : members) records[idx].split = split_ids[best];
  }
  return records;
}

DatasetStats compute_stats(const std::vector<ir::CharacterRecord>& records) {
  DatasetStats stats;
  stats.n_records = records.size();

  std::vector<double> n_dialogues, n_scenes, dialogue_words, scene_words;
  std::map<std::string, std::vector<double>> agreements;

  for (const auto& record : records) {
    std::string split = ir::to_string(record.split);
    ++stats.split_sizes[split];

    n_dialogues.push_back(static_cast<double>(record.dialogues.size()));
    n_scenes.push_back(static_cast<double>(record.scenes.size()));
    for (const auto& d : record.dialogues) dialogue_words.push_back(word_count(d));
    for (const auto& s : record.scenes) scene_words.push_back(word_count(s.text));

    for (const auto& vote : record.profile.votes) {
      auto& dim_dist = stats.label_distribution[vote.dimension];
      ++dim_dist[split][vote.winner];
      ++dim_dist["all"][vote.winner];
      agreements[vote.dimension + ":" + vote.winner].push_back(vote.agreement);
    }

    if (record.profile.scale == ir::Scale::MBTI) {
      std::string type;
      for (const auto& dim : ir::mbti_dimensions()) {
        const auto* vote = record.profile.find_vote(dim.id);
        if (!vote) break;
        type += vote->winner;
      }
      if (type.size() == 4) ++stats.type_distribution[type];
    }
  }

  stats.dialogues_per_character = moments_of(n_dialogues);
  stats.words_per_dialogue = moments_of(dialogue_words);
  stats.scenes_per_character = moments_of(n_scenes);
  stats.words_per_scene = moments_of(scene_words);

  for (const auto& [key, values] : agreements) {
    AgreementStats a;
    a.count = values.size();
    a.mean = text::mean_of(values);
    a.min = *std::min_element(values.begin(), values.end());
    a.max = *std::max_element(values.begin(), values.end());
    a.stddev = text::population_std(values);
    stats.agreement[key] = a;
  }
  return stats;
}

nlohmann::ordered_json stats_to_json(const DatasetStats& stats) {
  nlohmann::ordered_json j;
  j["n_records"] = stats.n_records;
  j["split_sizes"] = stats.split_sizes;

  nlohmann::ordered_json dist = nlohmann::ordered_json::object();
  for (const auto& [dim, by_split] : stats.label_distribution) {
    nlohmann::ordered_json per_split = nlohmann::ordered_json::object();
    for (const auto& [split, poles] : by_split) {
      std::size_t labeled = 0;
      for (const auto& [pole, count] : poles) labeled += count;
      nlohmann::ordered_json per_pole = nlohmann::ordered_json::object();
      for (const auto& [pole, count] : poles) {
        per_pole[pole] = {{"count", count},
                          {"pct", labeled == 0 ? 0.0
                                               : 100.0 * static_cast<double>(count) /
                                                     static_cast<double>(labeled)}};
      }
      per_split[split] = per_pole;
    }
    dist[dim] = per_split;
  }
  j["label_distribution"] = dist;

  auto moments_json = [](const Moments& m) {
    return nlohmann::ordered_json{
        {"mean", m.mean}, {"min", m.min}, {"max", m.max}, {"count", m.count}};
  };
  j["dialogues_per_character"] = moments_json(stats.dialogues_per_character);
  j["words_per_dialogue"] = moments_json(stats.words_per_dialogue);
  j["scenes_per_character"] = moments_json(stats.scenes_per_character);
  j["words_per_scene"] = moments_json(stats.words_per_scene);

  j["type_distribution"] = stats.type_distribution;

  nlohmann::ordered_json agree = nlohmann::ordered_json::object();
  for (const auto& [key, a] : stats.agreement) {
    agree[key] = {{"mean", a.mean},
                  {"min", a.min},
                  {"max", a.max},
                  {"std", a.stddev},
                  {"count", a.count}};
  }
  j["agreement"] = agree;
  return j;
}

std::string stats_to_text(const DatasetStats& stats) {
  std::ostringstream os;
  os << "records: " << stats.n_records << "\n";
  os << "splits:";
  for (const auto& [split, n] : stats.split_sizes) os << " " << split << "=" << n;
  os << "\n\n";

  os << "label distribution (count, % of labeled characters in split)\n";
  for (const auto& [dim, by_split] : stats.label_distribution) {
    os << "  " << dim << "\n";
    for (const auto& [split, poles] : by_split) {
      std::size_t labeled = 0;
      for (const auto& [pole, count] : poles) labeled += count;
      os << "    " << std::left << std::setw(10) << split << std::right;
      for (const auto& [pole, count] : poles) {
        double pct =
            labeled == 0 ? 0.0 : 100.0 * static_cast<double>(count) / static_cast<double>(labeled);
        os << "  " << pole << "=" << count << " (" << format_double(pct) << "%)";
      }
      os << "\n";
    }
  }
  os << "\n";

  auto moments_row = [&](const std::string& label, const Moments& m) {
    os << "  " << std::left << std::setw(26) << label << std::right << "mean="
       << format_double(m.mean) << " min=" << format_double(m.min)
       << " max=" << format_double(m.max) << " n=" << m.count << "\n";
  };
  os << "content statistics\n";
  moments_row("dialogues/character", stats.dialogues_per_character);
  moments_row("words/dialogue", stats.words_per_dialogue);
  moments_row("scenes/character", stats.scenes_per_character);
  moments_row("words/scene", stats.words_per_scene);
  os << "\n";

  if (!stats.type_distribution.empty()) {
    std::size_t typed = 0;
    for (const auto& [type, count] : stats.type_distribution) typed += count;
    os << "type distribution (over " << typed << " fully labeled characters)\n";
    for (const auto& [type, count] : stats.type_distribution) {
      double pct = 100.0 * static_cast<double>(count) / static_cast<double>(typed);
      os << "  " << type << "  " << count << " (" << format_double(pct) << "%)\n";
    }
    os << "\n";
  }

  os << "agreement by winning pole\n";
  for (const auto& [key, a] : stats.agreement) {
    os << "  " << std::left << std::setw(8) << key << std::right << "mean="
       << format_double(a.mean) << " min=" << format_double(a.min)
       << " max=" << format_double(a.max) << " std=" << format_double(a.stddev)
       << " n=" << a.count << "\n";
  }
  return os.str();
}

void write_split_files(const std::filesystem::path& dir,
                       const std::vector<ir::CharacterRecord>& records) {
  std::map<ir::Split, std::vector<ir::CharacterRecord>> by_split;
  for (const auto& record : records) by_split[record.split].push_back(record);
  for (auto split : {ir::Split::Train, ir::Split::Dev, ir::Split::Test})
    ir::write_records_jsonl(dir / (ir::to_string(split) + ".jsonl"), by_split[split]);
  if (!by_split[ir::Split::Unassigned].empty())
    ir::write_records_jsonl(dir / "unassigned.jsonl", by_split[ir::Split::Unassigned]);
}

}  // namespace sp::data
