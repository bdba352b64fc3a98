#include "sp/parser/pipeline.hpp"

#include <algorithm>
#include <functional>
#include <thread>

#include "sp/common/error.hpp"

namespace sp::parser {

namespace {

// Deterministic fan-out: fn(i) is pure per index, results land in slot i.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

LabeledFeatures silver_training_features(const std::vector<ir::ParsedScript>& silver_scripts) {
  LabeledFeatures out;
  for (const auto& script : silver_scripts) {
    for (const auto& section : script.sections) {
      if (section.kind == ir::SectionKind::Unlabeled) continue;
      out.emplace_back(extract_features(section, script), section.kind);
    }
  }
  return out;
}

CorpusParse parse_corpus(const std::vector<ingest::RawScript>& raw, const ParseOptions& opts) {
  struct Slot {
    std::optional<ir::ParsedScript> script;
    std::string error;
  };
  std::vector<Slot> slots(raw.size());
  parallel_for(raw.size(), opts.jobs, [&](std::size_t i) {
    try {
      ir::ParsedScript script;
      script.movie_name = raw[i].movie_name;
      script.sections = ingest::split_sections(ingest::normalize_lines(raw[i], opts.tab_width));
      script.fade_in_indent = find_fade_in_indent(script);
      slots[i].script = std::move(script);
    } catch (const Error& e) {
      slots[i].error = e.what();
    }
  });

  CorpusParse result;
  std::vector<ir::ParsedScript> retained;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].script) {
      retained.push_back(std::move(*slots[i].script));
    } else {
      result.skipped.push_back({raw[i].movie_name, slots[i].error});
    }
  }
  if (retained.empty()) throw_data("EmptyCorpus", "no script survived ingestion");

  std::vector<ir::ParsedScript> rule_labeled;
  for (const auto& script : retained) {
    if (script.fade_in_indent)
      rule_labeled.push_back(rule_label(script, script.fade_in_indent));
  }
  if (rule_labeled.empty())
    throw_data("EmptyCorpus", "no script carries a FADE IN anchor; ratio stats undefined");
  result.stats = corpus_dialogue_stats(rule_labeled);

  std::vector<ir::ParsedScript> silver_set;
  std::vector<std::size_t> needs_classifier;  // indices into result.scripts
  result.scripts.resize(retained.size());
  result.report.resize(retained.size());
  std::size_t n_silver = 0;
  for (std::size_t i = 0; i < retained.size(); ++i) {
    auto& entry = result.report[i];
    entry.movie_name = retained[i].movie_name;
    entry.n_sections = retained[i].sections.size();
    if (!retained[i].fade_in_indent) {
      retained[i].route = ir::ParseRoute::NoFadeIn;
      entry.route = ir::ParseRoute::NoFadeIn;
      result.scripts[i] = std::move(retained[i]);
      needs_classifier.push_back(i);
      continue;
    }
    std::optional<int> anchor = retained[i].fade_in_indent;
    SilverResult sr = silver_parse(rule_label(std::move(retained[i]), anchor), result.stats);
    entry.route = sr.script.route;
    entry.achieved_ratio = sr.achieved_ratio;
    entry.chosen_threshold = sr.chosen_threshold;
    if (sr.outcome == SilverOutcome::Success) {
      ++n_silver;
      silver_set.push_back(sr.script);
      result.scripts[i] = std::move(sr.script);
    } else {
      result.scripts[i] = std::move(sr.script);
      needs_classifier.push_back(i);
    }
  }
  result.silver_fraction =
      static_cast<double>(n_silver) / static_cast<double>(result.scripts.size());

  LabeledFeatures silver_features = silver_training_features(silver_set);
  bool trainable = false;
  {
    std::size_t d = 0, s = 0;
    for (const auto& [f, k] : silver_features) {
      if (k == ir::SectionKind::Dialogue) ++d;
      if (k == ir::SectionKind::Scene) ++s;
    }
    trainable = d >= 2 && s >= 2;
  }
  if (!needs_classifier.empty() && !trainable)
    throw_training("DegenerateTrainingSet",
                   "scripts need the section classifier but the silver set lacks two "
                   "examples per class");
  if (trainable) {
    result.model = train_classifier(silver_features, opts.seed, opts.classifier_epochs);
    for (std::size_t i : needs_classifier)
      result.scripts[i] = classify_sections(*result.model, std::move(result.scripts[i]));
  }
  return result;
}

}  // namespace sp::parser
