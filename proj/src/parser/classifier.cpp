#include "sp/parser/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <string>

#include "sp/common/error.hpp"
#include "sp/common/text.hpp"

namespace sp::parser {

namespace {

constexpr char kModelMagic[8] = {'S', 'P', 'S', 'E', 'C', 'M', '0', '1'};

std::uint32_t slot_of(const std::string& feature) {
  return static_cast<std::uint32_t>(text::fnv1a64(feature) & (kFeatureDim - 1));
}

void add_feature(std::map<std::uint32_t, double>& acc, const std::string& name, double value) {
  acc[slot_of(name)] += value;
}

void add_ngrams(std::map<std::uint32_t, double>& acc, const std::string& prefix,
                const std::vector<std::string>& tokens) {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    add_feature(acc, prefix + "1|" + tokens[i], 1.0);
    if (i + 1 < tokens.size()) add_feature(acc, prefix + "2|" + tokens[i] + "_" + tokens[i + 1], 1.0);
  }
}

std::string casing_pattern(const std::string& title) {
  if (title.empty()) return "none";
  if (text::is_all_caps(title)) return "allcaps";
  bool title_case = true;
  bool saw_word = false;
  for (const auto& tok : text::whitespace_tokens(title)) {
    for (char c : tok) {
      if (std::isalpha(static_cast<unsigned char>(c))) {
        saw_word = true;
        if (!std::isupper(static_cast<unsigned char>(c))) title_case = false;
        break;
      }
    }
  }
  return (saw_word && title_case) ? "titlecase" : "other";
}

bool starts_int_ext(const std::string& title) {
  std::string upper = text::to_upper(text::trim(title));
  for (const char* prefix : {"INT", "EXT"}) {
    if (upper.rfind(prefix, 0) == 0) {
      // Require a boundary so "INTERIOR" or name-like tokens do not count.
      if (upper.size() == 3) return true;
      char next = upper[3];
      if (!std::isalnum(static_cast<unsigned char>(next))) return true;
    }
  }
  return false;
}

int line_count_bucket(std::size_t n) {
  if (n <= 3) return static_cast<int>(n);
  if (n <= 7) return 4;
  if (n <= 15) return 5;
  return 6;
}

int punct_bucket(const std::string& body) {
  if (body.empty()) return 0;
  std::size_t punct = 0, total = 0;
  for (char c : body) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    ++total;
    if (std::ispunct(static_cast<unsigned char>(c))) ++punct;
  }
  if (total == 0) return 0;
  double density = static_cast<double>(punct) / static_cast<double>(total);
  if (density < 0.02) return 1;
  if (density < 0.05) return 2;
  if (density < 0.10) return 3;
  if (density < 0.20) return 4;
  return 5;
}

double indent_zscore(const ir::Section& section, const ir::ParsedScript& context) {
  std::vector<double> indents;
  indents.reserve(context.sections.size());
  for (const auto& s : context.sections) indents.push_back(static_cast<double>(s.indent()));
  double mu = text::mean_of(indents);
  double sigma = text::population_std(indents);
  if (sigma == 0.0) return 0.0;
  return (static_cast<double>(section.indent()) - mu) / sigma;
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

SectionFeatures extract_features(const ir::Section& section, const ir::ParsedScript& context) {
  if (!section.title && section.body.empty())
    throw_data("EmptySection", context.movie_name + ": section with no title and no body");

  std::map<std::uint32_t, double> acc;
  const std::string title = section.title_text();
  const std::string body = section.body_text();

  add_ngrams(acc, "t", text::word_punct_tokens(text::to_lower(title)));
  add_ngrams(acc, "b", text::word_punct_tokens(text::to_lower(body)));
  add_feature(acc, "num|indent_z", indent_zscore(section, context));
  add_feature(acc, "cas|" + casing_pattern(title), 1.0);
  add_feature(acc, "len|" + std::to_string(line_count_bucket(section.body.size())), 1.0);
  if (starts_int_ext(title)) add_feature(acc, "meta|intext", 1.0);
  add_feature(acc, "punct|" + std::to_string(punct_bucket(body)), 1.0);

  SectionFeatures out;
  out.slots.assign(acc.begin(), acc.end());
  return out;
}

double LinearSectionModel::score(const SectionFeatures& features) const {
  double z = bias;
  for (const auto& [idx, value] : features.slots) z += weights[idx] * value;
  return z;
}

LinearSectionModel train_classifier(const LabeledFeatures& silver, std::uint64_t seed,
                                    int epochs) {
  std::size_t n_dialogue = 0, n_scene = 0;
  for (const auto& [features, kind] : silver) {
    if (kind == ir::SectionKind::Dialogue) ++n_dialogue;
    if (kind == ir::SectionKind::Scene) ++n_scene;
  }
  if (n_dialogue < 2 || n_scene < 2)
    throw_training("DegenerateTrainingSet",
                   "need >= 2 examples per class, got dialogue=" + std::to_string(n_dialogue) +
                       " scene=" + std::to_string(n_scene));

  text::Rng rng(seed);
  std::vector<std::size_t> order(silver.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  text::shuffle(order, rng);

  // Deterministic 90/10 split; the holdout keeps at least one example.
  std::size_t holdout = std::max<std::size_t>(1, silver.size() / 10);
  std::vector<std::size_t> train(order.begin(), order.end() - static_cast<long>(holdout));
  std::vector<std::size_t> held(order.end() - static_cast<long>(holdout), order.end());

  LinearSectionModel model;
  model.weights.assign(kFeatureDim, 0.0);
  for (int epoch = 0; epoch < epochs; ++epoch) {
    double lr = 0.5 / (1.0 + 0.2 * epoch);
    text::shuffle(train, rng);
    for (std::size_t idx : train) {
      const auto& [features, kind] = silver[idx];
      double y = kind == ir::SectionKind::Dialogue ? 1.0 : 0.0;
      double g = sigmoid(model.score(features)) - y;
      for (const auto& [slot, value] : features.slots) model.weights[slot] -= lr * g * value;
      model.bias -= lr * g;
    }
  }

  std::size_t correct = 0;
  for (std::size_t idx : held) {
    const auto& [features, kind] = silver[idx];
    bool predicted_dialogue = model.score(features) > 0.0;
    if (predicted_dialogue == (kind == ir::SectionKind::Dialogue)) ++correct;
  }

  model.meta.seed = seed;
  model.meta.epochs = epochs;
  model.meta.train_size = train.size();
  model.meta.holdout_size = held.size();
  model.meta.holdout_accuracy =
      static_cast<double>(correct) / static_cast<double>(held.size());
  return model;
}

ir::ParsedScript classify_sections(const LinearSectionModel& model, ir::ParsedScript script) {
  if (!model.trained()) throw_training("UntrainedModel", "classify_sections needs a fitted model");
  for (auto& section : script.sections) {
    double z = model.score(extract_features(section, script));
    section.kind = z > 0.0 ? ir::SectionKind::Dialogue : ir::SectionKind::Scene;
    section.source = ir::LabelSource::Classifier;
  }
  return script;
}

void save_section_model(const LinearSectionModel& model, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_data("FileOpen", "cannot write " + path.string());
  out.write(kModelMagic, sizeof(kModelMagic));
  auto put64 = [&](std::uint64_t v) { out.write(reinterpret_cast<const char*>(&v), 8); };
  auto putd = [&](double v) { out.write(reinterpret_cast<const char*>(&v), 8); };
  put64(model.meta.seed);
  put64(static_cast<std::uint64_t>(model.meta.epochs));
  put64(model.meta.train_size);
  put64(model.meta.holdout_size);
  putd(model.meta.holdout_accuracy);
  putd(model.bias);
  std::uint64_t nnz = 0;
  for (double w : model.weights)
    if (w != 0.0) ++nnz;
  put64(nnz);
  for (std::uint32_t i = 0; i < model.weights.size(); ++i) {
    if (model.weights[i] != 0.0) {
      out.write(reinterpret_cast<const char*>(&i), 4);
      putd(model.weights[i]);
    }
  }
}

LinearSectionModel load_section_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_data("FileOpen", "cannot read " + path.string());
  char magic[8];
  in.read(magic, 8);
  if (std::memcmp(magic, kModelMagic, 8) != 0)
    throw_data("BadModelFile", path.string() + ": wrong magic");
  auto get64 = [&]() {
    std::uint64_t v = 0;
    in.read(reinterpret_cast<char*>(&v), 8);
    return v;
  };
  auto getd = [&]() {
    double v = 0;
    in.read(reinterpret_cast<char*>(&v), 8);
    return v;
  };
  LinearSectionModel model;
  model.meta.seed = get64();
  model.meta.epochs = static_cast<int>(get64());
  model.meta.train_size = get64();
  model.meta.holdout_size = get64();
  model.meta.holdout_accuracy = getd();
  model.bias = getd();
  model.weights.assign(kFeatureDim, 0.0);
  std::uint64_t nnz = get64();
  for (std::uint64_t k = 0; k < nnz; ++k) {
    std::uint32_t idx = 0;
    in.read(reinterpret_cast<char*>(&idx), 4);
    double w = getd();
    if (idx < model.weights.size()) model.weights[idx] = w;
  }
  if (!in) throw_data("BadModelFile", path.string() + ": truncated");
  return model;
}

}  // namespace sp::parser
