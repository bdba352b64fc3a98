#include "sp/model/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "sp/common/error.hpp"
#include "sp/common/text.hpp"

namespace sp::model {

namespace {

// Fixed list, revision 1. Changing it invalidates every stored vocab, so the
// hash travels with the artifact.
const char* const kStopwords[] = {
    "a",       "about", "above",   "after",  "again",   "against", "all",     "am",
    "an",      "and",   "any",     "are",    "as",      "at",      "be",      "because",
    "been",    "before", "being",  "below",  "between", "both",    "but",     "by",
    "can",     "cannot", "could",  "did",    "do",      "does",    "doing",   "down",
    "during",  "each",  "few",     "for",    "from",    "further", "had",     "has",
    "have",    "having", "he",     "her",    "here",    "hers",    "herself", "him",
    "himself", "his",   "how",     "i",      "if",      "in",      "into",    "is",
    "it",      "its",   "itself",  "just",   "me",      "more",    "most",    "my",
    "myself",  "no",    "nor",     "not",    "now",     "of",      "off",     "on",
    "once",    "only",  "or",      "other",  "our",     "ours",    "ourselves", "out",
    "over",    "own",   "same",    "she",    "should",  "so",      "some",    "such",
    "than",    "that",  "the",     "their",  "theirs",  "them",    "themselves", "then",
    "there",   "these", "they",    "this",   "those",   "through", "to",      "too",
    "under",   "until", "up",      "very",   "was",     "we",      "were",    "what",
    "when",    "where", "which",   "while",  "who",     "whom",    "why",     "will",
    "with",    "you",   "your",    "yours",  "yourself", "yourselves"};

bool is_word_token(const std::string& t) {
  return std::any_of(t.begin(), t.end(),
                     [](unsigned char c) { return std::isalnum(c) != 0; });
}

// Lowercased dialogue words with stopwords removed, one stream per dialogue
// so n-grams never cross a dialogue boundary.
std::vector<std::vector<std::string>> dialogue_word_streams(const ir::CharacterRecord& record) {
  static const std::set<std::string> stop(std::begin(kStopwords), std::end(kStopwords));
  std::vector<std::vector<std::string>> streams;
  for (const auto& d : record.dialogues) {
    std::vector<std::string> words;
    for (const auto& t : text::word_punct_tokens(d)) {
      if (!is_word_token(t)) continue;
      std::string w = text::to_lower(t);
      if (stop.count(w)) continue;
      words.push_back(std::move(w));
    }
    streams.push_back(std::move(words));
  }
  return streams;
}

template <typename Fn>
void for_each_ngram(const std::vector<std::vector<std::string>>& streams, Fn&& fn) {
  for (const auto& words : streams) {
    for (std::size_t n = 1; n <= 3; ++n) {
      if (words.size() < n) continue;
      for (std::size_t i = 0; i + n <= words.size(); ++i) {
        std::string key = words[i];
        for (std::size_t k = 1; k < n; ++k) {
          key += ' ';
          key += words[i + k];
        }
        fn(key);
      }
    }
  }
}

}  // namespace

const std::vector<std::string>& stopword_list() {
  static const std::vector<std::string> list(std::begin(kStopwords), std::end(kStopwords));
  return list;
}

std::uint64_t stopword_list_hash() {
  std::string joined;
  for (const auto& w : stopword_list()) {
    joined += w;
    joined += '\n';
  }
  return text::fnv1a64(joined);
}

std::map<std::string, std::int32_t> NgramVocab::index() const {
  std::map<std::string, std::int32_t> idx;
  for (std::size_t i = 0; i < entries.size(); ++i)
    idx[entries[i].first] = static_cast<std::int32_t>(i);
  return idx;
}

NgramVocab build_vocab(const std::vector<ir::CharacterRecord>& train_records,
                       std::size_t max_size) {
  std::map<std::string, std::size_t> counts;
  for (const auto& record : train_records)
    for_each_ngram(dialogue_word_streams(record), [&](const std::string& key) { ++counts[key]; });
  if (counts.empty())
    throw_data("EmptyVocab", "no n-grams survive stopword removal on the train split");

  std::vector<std::pair<std::string, std::size_t>> entries(counts.begin(), counts.end());
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (entries.size() > max_size) entries.resize(max_size);

  NgramVocab vocab;
  vocab.entries = std::move(entries);
  vocab.stopword_hash = stopword_list_hash();
  return vocab;
}

std::vector<std::pair<std::uint32_t, double>> featurize(
    const ir::CharacterRecord& record, const std::map<std::string, std::int32_t>& index) {
  std::map<std::uint32_t, double> acc;
  for_each_ngram(dialogue_word_streams(record), [&](const std::string& key) {
    auto it = index.find(key);
    if (it != index.end()) acc[static_cast<std::uint32_t>(it->second)] += 1.0;
  });
  return {acc.begin(), acc.end()};
}

double BaselineModel::score(
    const std::vector<std::pair<std::uint32_t, double>>& features) const {
  double z = bias;
  for (const auto& [idx, value] : features) z += weights[idx] * value;
  return z;
}

BaselineModel fit_baseline(const std::vector<ir::CharacterRecord>& train,
                           const ir::Dimension& dimension, double C, std::uint64_t seed,
                           int max_epochs, double tol) {
  std::vector<const ir::CharacterRecord*> usable;
  std::size_t n_a = 0, n_b = 0;
  for (const auto& record : train) {
    const auto* vote = record.profile.find_vote(dimension.id);
    if (!vote) continue;
    usable.push_back(&record);
    if (vote->winner == dimension.pole_a_str()) ++n_a;
    else ++n_b;
  }
  if (n_a < 1 || n_b < 1)
    throw_training("DegenerateTrainingSet", dimension.id + ": need both poles, got " +
                                                std::to_string(n_a) + "/" + std::to_string(n_b));

  BaselineModel model;
  model.dimension = dimension;
  model.vocab = build_vocab(train);
  model.meta.C = C;
  model.meta.seed = seed;
  const auto index = model.vocab.index();

  std::vector<std::vector<std::pair<std::uint32_t, double>>> features;
  std::vector<double> labels;
  features.reserve(usable.size());
  for (const auto* record : usable) {
    features.push_back(featurize(*record, index));
    labels.push_back(record->profile.find_vote(dimension.id)->winner == dimension.pole_a_str()
                         ? 1.0
                         : -1.0);
  }

  const double n = static_cast<double>(features.size());
  const double lambda = 1.0 / (C * n);
  model.weights.assign(model.vocab.size(), 0.0);

  auto objective = [&]() {
    double hinge = 0.0;
    for (std::size_t i = 0; i < features.size(); ++i)
      hinge += std::max(0.0, 1.0 - labels[i] * model.score(features[i]));
    double reg = 0.0;
    for (double w : model.weights) reg += w * w;
    return hinge / n + 0.5 * lambda * reg;
  };

  double prev = objective();
  std::vector<double> grad(model.weights.size());
  for (int epoch = 1; epoch <= max_epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_bias = 0.0;
    for (std::size_t i = 0; i < features.size(); ++i) {
      if (labels[i] * model.score(features[i]) < 1.0) {
        for (const auto& [idx, value] : features[i]) grad[idx] -= labels[i] * value;
        grad_bias -= labels[i];
      }
    }
    double lr = 0.5 / (1.0 + 0.05 * epoch);
    for (std::size_t k = 0; k < model.weights.size(); ++k)
      model.weights[k] -= lr * (grad[k] / n + lambda * model.weights[k]);
    model.bias -= lr * grad_bias / n;

    double now = objective();
    model.meta.epochs_run = epoch;
    if (std::abs(prev - now) < tol) {
      model.meta.converged = true;
      break;
    }
    prev = now;
  }
  return model;
}

std::string predict_baseline(const BaselineModel& model, const ir::CharacterRecord& record) {
  if (!model.trained()) throw_training("UntrainedModel", "predict_baseline needs a fitted model");
  double z = model.score(featurize(record, model.vocab.index()));
  return z > 0.0 ? model.dimension.pole_a_str() : model.dimension.pole_b_str();
}

void save_baseline(const BaselineModel& model, const std::filesystem::path& path) {
  nlohmann::ordered_json j;
  j["dimension"] = model.dimension.id;
  j["C"] = model.meta.C;
  j["seed"] = model.meta.seed;
  j["epochs_run"] = model.meta.epochs_run;
  j["converged"] = model.meta.converged;
  j["stopword_hash"] = model.vocab.stopword_hash;
  j["bias"] = model.bias;
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& [ngram, freq] : model.vocab.entries) entries.push_back({ngram, freq});
  j["vocab"] = std::move(entries);
  j["weights"] = model.weights;

  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_data("FileOpen", "cannot write " + path.string());
  out << j.dump() << '\n';
}

BaselineModel load_baseline(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_data("FileOpen", "cannot read " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw_data("BadModelFile", path.string() + ": " + e.what());
  }

  BaselineModel model;
  auto dim = ir::find_dimension(j.at("dimension").get<std::string>());
  if (!dim) throw_data("BadModelFile", path.string() + ": unknown dimension");
  model.dimension = *dim;
  model.meta.C = j.at("C").get<double>();
  model.meta.seed = j.at("seed").get<std::uint64_t>();
  model.meta.epochs_run = j.at("epochs_run").get<int>();
  model.meta.converged = j.at("converged").get<bool>();
  model.vocab.stopword_hash = j.at("stopword_hash").get<std::uint64_t>();
  for (const auto& entry : j.at("vocab"))
    model.vocab.entries.emplace_back(entry.at(0).get<std::string>(),
                                     entry.at(1).get<std::size_t>());
  model.weights = j.at("weights").get<std::vector<double>>();
  model.bias = j.at("bias").get<double>();
  if (model.weights.size() != model.vocab.size())
    throw_data("BadModelFile", path.string() + ": weight/vocab size mismatch");
  return model;
}

}  // namespace sp::model
