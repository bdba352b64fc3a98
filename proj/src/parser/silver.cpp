#include "sp/parser/silver.hpp"

#include <algorithm>
#include <map>

#include "sp/common/error.hpp"
#include "sp/common/text.hpp"

namespace sp::parser {

std::optional<int> find_fade_in_indent(const ir::ParsedScript& script) {
  for (const auto& section : script.sections) {
    if (section.title && text::starts_with_ci(section.title->text, "FADE IN"))
      return section.title->indent;
    for (const auto& line : section.body) {
      if (text::starts_with_ci(line.text, "FADE IN")) return line.indent;
    }
  }
  return std::nullopt;
}

ir::ParsedScript rule_label(ir::ParsedScript script, std::optional<int> anchor) {
  if (!anchor) throw_data("MissingAnchor", script.movie_name + ": no FADE-IN anchor");
  script.fade_in_indent = anchor;
  for (auto& section : script.sections) {
    section.kind =
        section.indent() > *anchor ? ir::SectionKind::Dialogue : ir::SectionKind::Scene;
    section.source = ir::LabelSource::Rule;
  }
  return script;
}

CorpusDialogueStats corpus_dialogue_stats(const std::vector<ir::ParsedScript>& rule_labeled) {
  std::vector<double> ratios;
  for (const auto& script : rule_labeled) {
    if (script.sections.empty()) continue;  // excluded; caller logs
    std::size_t dialogues = 0;
    for (const auto& section : script.sections)
      if (section.kind == ir::SectionKind::Dialogue) ++dialogues;
    ratios.push_back(static_cast<double>(dialogues) /
                     static_cast<double>(script.sections.size()));
  }
  if (ratios.empty()) throw_data("EmptyCorpus", "no rule-labeled scripts with sections");
  CorpusDialogueStats stats;
  stats.mu = text::mean_of(ratios);
  stats.sigma = text::population_std(ratios);
  stats.n_scripts = static_cast<int>(ratios.size());
  return stats;
}

SilverResult silver_parse(ir::ParsedScript script, const CorpusDialogueStats& stats) {
  SilverResult result;
  const double lo = stats.mu - stats.sigma;
  const double hi = stats.mu + stats.sigma;

  // Section count per distinct indent, walked deepest-first.
  std::map<int, std::size_t, std::greater<int>> levels;
  for (const auto& section : script.sections) ++levels[section.indent()];

  const auto total = static_cast<double>(script.sections.size());
  std::size_t cumulative = 0;
  std::optional<int> threshold;
  double ratio = 0.0;
  for (const auto& [indent, count] : levels) {
    cumulative += count;
    ratio = static_cast<double>(cumulative) / total;
    if (ratio >= lo && ratio <= hi) {
      threshold = indent;
      break;
    }
    if (ratio > hi) break;  // jumped over the band
  }

  if (threshold) {
    for (auto& section : script.sections) {
      section.kind = section.indent() >= *threshold ? ir::SectionKind::Dialogue
                                                    : ir::SectionKind::Scene;
      section.source = ir::LabelSource::Silver;
    }
    script.route = ir::ParseRoute::SilverSuccess;
    result.outcome = SilverOutcome::Success;
    result.chosen_threshold = threshold;
  } else {
    for (auto& section : script.sections) {
      section.kind = ir::SectionKind::Unlabeled;
      section.source = ir::LabelSource::None;
    }
    script.route = ir::ParseRoute::SilverFailure;
    result.outcome = SilverOutcome::Failure;
  }
  result.achieved_ratio = ratio;
  result.script = std::move(script);
  return result;
}

}  // namespace sp::parser
