#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sp/common/text.hpp"
#include "sp/ingest/ingest.hpp"
#include "sp/ir/types.hpp"

namespace sp::synth {

struct ScriptCorpusConfig {
  int n_success = 22;  // FADE-IN scripts whose ratio sits inside the band
  int n_failure = 3;   // FADE-IN scripts whose first ratio overshoots it
  int n_no_fade = 3;   // scripts without the anchor
  std::uint64_t seed = 11;
};

struct GoldScript {
  std::string filename;
  ingest::RawScript raw;
  std::vector<ir::SectionKind> gold;  // aligned with the section split
  ir::ParseRoute expected_route = ir::ParseRoute::SilverSuccess;
};

struct ScriptCorpus {
  std::vector<GoldScript> scripts;
  std::vector<ir::PersonalityProfile> profiles;
};

// Scripts with known section labels: one dialogue indent level per script,
// scene text at the anchor level, bold titles, mixed HTML and plain text.
// Failure scripts carry an out-of-band dialogue ratio; the rest sit inside.
ScriptCorpus make_script_corpus(const ScriptCorpusConfig& config);

// dir/scripts/<file>, dir/profiles.jsonl, dir/gold.json.
void write_script_corpus(const ScriptCorpus& corpus, const std::filesystem::path& dir);

// Records whose pole is decided by a marker token planted in the dialogues.
std::vector<ir::CharacterRecord> make_marker_records(int n, const ir::Dimension& dimension,
                                                     std::uint64_t seed);

// Records whose pole signal lives only in scene text next to the name
// mentions; dialogues are pole-independent filler.
std::vector<ir::CharacterRecord> make_scene_signal_records(int n, const ir::Dimension& dimension,
                                                           std::uint64_t seed);

// Random structured script for property suites: random indents, optional
// titles, non-empty sections, all Unlabeled.
ir::ParsedScript random_script(text::Rng& rng);

}  // namespace sp::synth
