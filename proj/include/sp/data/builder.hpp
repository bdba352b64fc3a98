#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sp/ir/types.hpp"

namespace sp::data {

struct SplitRatios {
  double train = 0.8;
  double dev = 0.1;
  double test = 0.1;
};

// Deterministic movie-grouped assignment: all characters of one movie land in
// the same split, group order shuffled by seed, each group going to the split
// with the largest remaining deficit against ratio * total. Throws
// EmptyDataset / BadSplitRatios.
std::vector<ir::CharacterRecord> split_dataset(std::vector<ir::CharacterRecord> records,
                                               SplitRatios ratios, std::uint64_t seed);

struct Moments {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;
};

struct AgreementStats {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double stddev = 0.0;  // population
  std::size_t count = 0;
};

struct DatasetStats {
  std::size_t n_records = 0;
  std::map<std::string, std::size_t> split_sizes;  // split name -> record count
  // dimension -> split -> pole -> character count; "all" aggregates the splits.
  std::map<std::string, std::map<std::string, std::map<std::string, std::size_t>>>
      label_distribution;
  Moments dialogues_per_character;
  Moments words_per_dialogue;
  Moments scenes_per_character;
  Moments words_per_scene;
  std::map<std::string, std::size_t> type_distribution;  // 4-letter type -> count
  std::map<std::string, AgreementStats> agreement;       // "dim:pole" -> stats
};

DatasetStats compute_stats(const std::vector<ir::CharacterRecord>& records);

nlohmann::ordered_json stats_to_json(const DatasetStats& stats);
std::string stats_to_text(const DatasetStats& stats);

// train.jsonl / dev.jsonl / test.jsonl under dir (unassigned.jsonl only when
// any record still lacks a split).
void write_split_files(const std::filesystem::path& dir,
                       const std::vector<ir::CharacterRecord>& records);

}  // namespace sp::data
