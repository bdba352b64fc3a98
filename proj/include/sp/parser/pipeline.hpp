#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sp/ingest/ingest.hpp"
#include "sp/ir/types.hpp"
#include "sp/parser/classifier.hpp"
#include "sp/parser/silver.hpp"

namespace sp::parser {

struct ParseReportEntry {
  std::string movie_name;
  ir::ParseRoute route = ir::ParseRoute::NoFadeIn;
  std::optional<int> chosen_threshold;
  std::optional<double> achieved_ratio;
  std::size_t n_sections = 0;
};

struct SkippedScript {
  std::string movie_name;
  std::string reason;
};

struct ParseOptions {
  int tab_width = 8;
  std::uint64_t seed = 0;
  int classifier_epochs = 12;
  int jobs = 1;  // per-script normalization fan-out; results merge by index
};

struct CorpusParse {
  std::vector<ir::ParsedScript> scripts;  // fully labeled, input order
  CorpusDialogueStats stats;
  std::optional<LinearSectionModel> model;  // absent when no script needed it
  std::vector<ParseReportEntry> report;     // one entry per retained script
  std::vector<SkippedScript> skipped;       // ingest failures, logged not fatal
  double silver_fraction = 0.0;             // silver successes / retained scripts
};

// Training examples from silver-labeled scripts, one per section.
LabeledFeatures silver_training_features(const std::vector<ir::ParsedScript>& silver_scripts);

// Full labeling pass: anchor rule on FADE-IN scripts, corpus ratio stats,
// statistical thresholding, then a self-trained classifier for the leftover
// failure and no-anchor scripts. Every retained script comes back with all
// sections labeled.
CorpusParse parse_corpus(const std::vector<ingest::RawScript>& raw, const ParseOptions& opts);

}  // namespace sp::parser
