#include "sp/eval/metrics.hpp"

#include <algorithm>
#include <set>

#include "sp/common/error.hpp"
#include "sp/common/text.hpp"

namespace sp::eval {

double macro_f1(const std::vector<std::string>& gold, const std::vector<std::string>& pred) {
  if (gold.size() != pred.size())
    throw_data("LengthMismatch", "gold has " + std::to_string(gold.size()) + " labels, pred " +
                                     std::to_string(pred.size()));
  if (gold.empty()) throw_data("EmptyInput", "no labels to score");

  std::set<std::string> labels(gold.begin(), gold.end());
  labels.insert(pred.begin(), pred.end());
  if (labels.size() > 2)
    throw_data("BadLabels", "expected at most two poles, saw " + std::to_string(labels.size()));

  double f1_sum = 0.0;
  for (const auto& pole : labels) {
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < gold.size(); ++i) {
      const bool g = gold[i] == pole;
      const bool p = pred[i] == pole;
      if (g && p) ++tp;
      if (!g && p) ++fp;
      if (g && !p) ++fn;
    }
    const double precision = tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
    const double recall = tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
    const double f1 =
        precision + recall == 0.0 ? 0.0 : 2.0 * precision * recall / (precision + recall);
    f1_sum += f1;
  }
  // Always two poles; one absent from both sides contributes zero.
  return f1_sum / 2.0;
}

std::string majority_label(const ir::PersonalityProfile& profile,
                           const ir::Dimension& dimension) {
  const auto* vote = profile.find_vote(dimension.id);
  if (!vote)
    throw_data("MissingDimension", profile.character_name + " has no " + dimension.id + " vote");
  return vote->winner;
}

HumanPerfResult human_perf_estimate(const std::vector<ir::CharacterRecord>& records,
                                    std::uint64_t seed, int voters_per_character) {
  HumanPerfResult result;
  text::Rng rng(seed);

  std::vector<ir::Dimension> all_dims = ir::mbti_dimensions();
  for (const auto& dim : ir::global5_dimensions()) all_dims.push_back(dim);

  for (const auto& dim : all_dims) {
    std::vector<const ir::CharacterRecord*> with_dim;
    for (const auto& record : records)
      if (record.profile.find_vote(dim.id)) with_dim.push_back(&record);
    if (with_dim.empty()) continue;

    std::vector<double> accuracies, f1s;
    for (int v = 0; v < voters_per_character; ++v) {
      std::vector<std::string> gold, pred;
      for (const auto* record : with_dim) {
        const auto* vote = record->profile.find_vote(dim.id);
        gold.push_back(vote->winner);
        const bool votes_winner = rng.uniform01() < vote->agreement;
        pred.push_back(votes_winner ? vote->winner : dim.other_pole(vote->winner));
      }
      std::size_t correct = 0;
      for (std::size_t i = 0; i < gold.size(); ++i)
        if (gold[i] == pred[i]) ++correct;
      accuracies.push_back(static_cast<double>(correct) / static_cast<double>(gold.size()));
      f1s.push_back(macro_f1(gold, pred));
    }

    HumanPerfDimension row;
    row.dimension = dim.id;
    row.n_characters = with_dim.size();
    row.mean_accuracy = text::mean_of(accuracies);
    row.std_accuracy = text::population_std(accuracies);
    row.mean_f1 = text::mean_of(f1s);
    row.std_f1 = text::population_std(f1s);
    result.dimensions.push_back(std::move(row));
  }
  return result;
}

std::vector<CurveRow> learning_curve(const TrainerFn& trainer,
                                     std::vector<ir::CharacterRecord> train,
                                     const std::vector<std::size_t>& sizes,
                                     const ir::Dimension& dimension, std::uint64_t seed) {
  for (std::size_t size : sizes)
    if (size > train.size())
      throw_data("SizeExceedsData", "requested " + std::to_string(size) + " of " +
                                        std::to_string(train.size()) + " records");
  text::Rng rng(seed);
  text::shuffle(train, rng);

  std::vector<std::size_t> ordered = sizes;
  std::sort(ordered.begin(), ordered.end());
  std::vector<CurveRow> rows;
  for (std::size_t size : ordered) {
    std::vector<ir::CharacterRecord> subset(train.begin(),
                                            train.begin() + static_cast<long>(size));
    rows.push_back({size, trainer(subset, dimension)});
  }
  return rows;
}

std::vector<AblationRow> length_ablation(const BudgetTrainerFn& trainer,
                                         const std::vector<ir::CharacterRecord>& records,
                                         const std::vector<std::size_t>& budgets,
                                         const ir::Dimension& dimension) {
  std::vector<AblationRow> rows;
  for (std::size_t budget : budgets) {
    if (budget == 0) throw_config("BadBudget", "token budget must be positive");
    rows.push_back({budget, trainer(records, dimension, budget)});
  }
  return rows;
}

}  // namespace sp::eval
