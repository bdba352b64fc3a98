#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sp/ir/types.hpp"

namespace sp::eval {

// Unweighted mean of the two per-pole F1 scores. A pole absent from both gold
// and pred contributes F1 = 0. Throws LengthMismatch / EmptyInput / BadLabels
// (more than two distinct labels).
double macro_f1(const std::vector<std::string>& gold, const std::vector<std::string>& pred);

// The stored winner for the dimension. Throws MissingDimension.
std::string majority_label(const ir::PersonalityProfile& profile, const ir::Dimension& dimension);

struct HumanPerfDimension {
  std::string dimension;
  std::size_t n_characters = 0;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;  // population, across simulated voters
  double mean_f1 = 0.0;
  double std_f1 = 0.0;
};

struct HumanPerfResult {
  std::vector<HumanPerfDimension> dimensions;
};

// Simulates voters_per_character voters per character; each votes the winner
// pole with probability equal to the stored agreement. Every simulated voter
// is scored like a model against the majority ground truth; F1 is averaged
// over voters.
HumanPerfResult human_perf_estimate(const std::vector<ir::CharacterRecord>& records,
                                    std::uint64_t seed, int voters_per_character = 3);

// Dev macro-F1 of a model trained on the given records.
using TrainerFn =
    std::function<double(const std::vector<ir::CharacterRecord>&, const ir::Dimension&)>;
// Same, with a per-view token budget applied before segmentation.
using BudgetTrainerFn = std::function<double(const std::vector<ir::CharacterRecord>&,
                                             const ir::Dimension&, std::size_t)>;

struct CurveRow {
  std::size_t size = 0;
  double dev_f1 = 0.0;
};

// Nested subsets: one seeded shuffle, each size is a prefix of the next.
// Throws SizeExceedsData.
std::vector<CurveRow> learning_curve(const TrainerFn& trainer,
                                     std::vector<ir::CharacterRecord> train,
                                     const std::vector<std::size_t>& sizes,
                                     const ir::Dimension& dimension, std::uint64_t seed);

struct AblationRow {
  std::size_t budget = 0;
  double dev_f1 = 0.0;
};

// Throws BadBudget on a non-positive budget.
std::vector<AblationRow> length_ablation(const BudgetTrainerFn& trainer,
                                         const std::vector<ir::CharacterRecord>& records,
                                         const std::vector<std::size_t>& budgets,
                                         const ir::Dimension& dimension);

}  // namespace sp::eval
