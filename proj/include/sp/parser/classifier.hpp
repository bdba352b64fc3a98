#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "sp/ir/types.hpp"

namespace sp::parser {

inline constexpr int kFeatureBits = 18;  // hashed feature space, version-pinned
inline constexpr std::size_t kFeatureDim = std::size_t(1) << kFeatureBits;

// Sparse hashed feature vector. Slots are sorted by index with duplicates
// accumulated, so equal sections produce identical maps across runs.
struct SectionFeatures {
  std::vector<std::pair<std::uint32_t, double>> slots;
};

// Hashed title/body n-grams plus indent z-score (within the script's own
// section-indent distribution), title casing, body-length bucket,
// INT/EXT prefix flag, and punctuation-density bucket.
// Throws EmptySection for a section with neither title nor body.
SectionFeatures extract_features(const ir::Section& section, const ir::ParsedScript& context);

struct LinearSectionModel {
  std::vector<double> weights;  // dense over the hashed space
  double bias = 0.0;

  struct Meta {
    std::uint64_t seed = 0;
    int epochs = 0;
    std::size_t train_size = 0;   // silver examples used for fitting
    std::size_t holdout_size = 0;
    double holdout_accuracy = 0.0;
  } meta;

  bool trained() const { return !weights.empty(); }
  double score(const SectionFeatures& features) const;
};

using LabeledFeatures = std::vector<std::pair<SectionFeatures, ir::SectionKind>>;

// Logistic-loss linear model, epoch-ordered SGD with a deterministic 90/10
// holdout split by seed. Throws DegenerateTrainingSet when either class has
// fewer than two examples.
LinearSectionModel train_classifier(const LabeledFeatures& silver, std::uint64_t seed,
                                    int epochs = 12);

// Labels every section by the sign of the linear score; exact zero goes to
// Scene. Throws UntrainedModel.
ir::ParsedScript classify_sections(const LinearSectionModel& model, ir::ParsedScript script);

void save_section_model(const LinearSectionModel& model, const std::filesystem::path& path);
LinearSectionModel load_section_model(const std::filesystem::path& path);

}  // namespace sp::parser
