#pragma once

#include <optional>
#include <vector>

#include "sp/ir/types.hpp"

namespace sp::parser {

// Mean and population standard deviation of the per-script dialogue ratio,
// computed over rule-labeled scripts.
struct CorpusDialogueStats {
  double mu = 0.0;
  double sigma = 0.0;
  int n_scripts = 0;
};

enum class SilverOutcome { Success, Failure };

struct SilverResult {
  ir::ParsedScript script;
  SilverOutcome outcome = SilverOutcome::Failure;
  std::optional<int> chosen_threshold;  // present iff Success
  double achieved_ratio = 0.0;          // in [mu-sigma, mu+sigma] iff Success
};

// Indent of the first line whose text starts with "FADE IN" (case-insensitive),
// scanning titles and body lines in source order.
std::optional<int> find_fade_in_indent(const ir::ParsedScript& script);

// Sections strictly deeper than the anchor become Dialogue, the rest Scene;
// ties go to Scene. Throws MissingAnchor when the anchor is absent.
ir::ParsedScript rule_label(ir::ParsedScript script, std::optional<int> anchor);

// Per-script ratio = dialogue sections / all sections. Zero-section scripts
// are excluded. Throws EmptyCorpus when nothing is left.
CorpusDialogueStats corpus_dialogue_stats(const std::vector<ir::ParsedScript>& rule_labeled);

// Walks distinct indents in descending order, accumulating each level into the
// dialogue set. The first cumulative ratio inside [mu-sigma, mu+sigma] wins;
// overshooting the band (or exhausting the levels below it) is a Failure and
// leaves every section Unlabeled.
SilverResult silver_parse(ir::ParsedScript script, const CorpusDialogueStats& stats);

}  // namespace sp::parser
