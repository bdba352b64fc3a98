#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sp/ir/types.hpp"

namespace sp::model {

// Version-pinned English stopword list; the hash is stored with every vocab.
const std::vector<std::string>& stopword_list();
std::uint64_t stopword_list_hash();

struct NgramVocab {
  // Sorted by frequency descending, ties lexicographic. Keys are 1..3-gram
  // word sequences joined with single spaces, built after stopword removal.
  std::vector<std::pair<std::string, std::size_t>> entries;
  std::uint64_t stopword_hash = 0;

  std::size_t size() const { return entries.size(); }
  // n-gram -> index into entries, or -1.
  std::map<std::string, std::int32_t> index() const;
};

inline constexpr std::size_t kMaxVocab = 20000;

// Term frequencies over the dialogue view of the train records only.
// Throws EmptyVocab when nothing survives stopword removal.
NgramVocab build_vocab(const std::vector<ir::CharacterRecord>& train_records,
                       std::size_t max_size = kMaxVocab);

// Sparse tf vector in vocab index space.
std::vector<std::pair<std::uint32_t, double>> featurize(
    const ir::CharacterRecord& record, const std::map<std::string, std::int32_t>& index);

struct BaselineModel {
  ir::Dimension dimension;
  NgramVocab vocab;
  std::vector<double> weights;  // aligned with vocab.entries
  double bias = 0.0;

  struct Meta {
    double C = 0.1;
    std::uint64_t seed = 0;
    int epochs_run = 0;
    bool converged = false;
  } meta;

  bool trained() const { return !weights.empty(); }
  double score(const std::vector<std::pair<std::uint32_t, double>>& features) const;
};

// Hinge loss with L2 strength 1/(C*n), full-batch subgradient descent until
// the objective moves < tol or the epoch cap is hit. Records lacking the
// dimension are skipped. Throws DegenerateTrainingSet when a pole is empty.
BaselineModel fit_baseline(const std::vector<ir::CharacterRecord>& train,
                           const ir::Dimension& dimension, double C = 0.1,
                           std::uint64_t seed = 0, int max_epochs = 300, double tol = 1e-4);

// Positive score -> pole A, otherwise pole B (zero-feature records fall back
// to the bias sign). Throws UntrainedModel.
std::string predict_baseline(const BaselineModel& model, const ir::CharacterRecord& record);

void save_baseline(const BaselineModel& model, const std::filesystem::path& path);
BaselineModel load_baseline(const std::filesystem::path& path);

}  // namespace sp::model
