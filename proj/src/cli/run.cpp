#include "sp/cli/run.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "sp/common/error.hpp"
#include "sp/common/text.hpp"
#include "sp/data/builder.hpp"
#include "sp/eval/metrics.hpp"
#include "sp/ingest/ingest.hpp"
#include "sp/ir/json_io.hpp"
#include "sp/ir/types.hpp"
#include "sp/ir/validate.hpp"
#include "sp/match/matcher.hpp"
#include "sp/model/baseline.hpp"
#include "sp/model/fusion.hpp"
#include "sp/parser/pipeline.hpp"
#include "sp/synth/synth.hpp"

namespace sp::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_data("FileOpen", "cannot write " + path.string());
  out << content;
}

void write_json_file(const fs::path& path, const ordered_json& j) {
  write_file(path, j.dump(2) + "\n");
}

// Table printers set float formatting on std::cout; restore it on scope exit
// so repeated in-process invocations start from the same stream state.
struct CoutFormatGuard {
  std::ios::fmtflags flags = std::cout.flags();
  std::streamsize precision = std::cout.precision();
  ~CoutFormatGuard() {
    std::cout.flags(flags);
    std::cout.precision(precision);
  }
};

ir::Dimension need_dimension(const std::string& id) {
  auto dim = ir::find_dimension(id);
  if (!dim) throw_config("UnknownDimension", "not a personality dimension: " + id);
  return *dim;
}

std::string dim_slug(const ir::Dimension& dim) {
  return dim.pole_a_str() + "-" + dim.pole_b_str();
}

fs::path out_dir(const PipelineConfig& cfg) {
  fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  return dir;
}

struct SplitData {
  std::vector<ir::CharacterRecord> train, dev, test, unassigned;

  std::vector<ir::CharacterRecord> all() const {
    std::vector<ir::CharacterRecord> out = train;
    out.insert(out.end(), dev.begin(), dev.end());
    out.insert(out.end(), test.begin(), test.end());
    out.insert(out.end(), unassigned.begin(), unassigned.end());
    return out;
  }
};

SplitData load_splits(const std::string& data_dir) {
  if (data_dir.empty()) throw_config("MissingPath", "--data is required");
  fs::path dir(data_dir);
  SplitData out;
  out.train = ir::read_records_jsonl(dir / "train.jsonl");
  out.dev = ir::read_records_jsonl(dir / "dev.jsonl");
  out.test = ir::read_records_jsonl(dir / "test.jsonl");
  if (fs::exists(dir / "unassigned.jsonl")) {
    out.unassigned = ir::read_records_jsonl(dir / "unassigned.jsonl");
  }
  return out;
}

model::FusionConfig fusion_config(const PipelineConfig& cfg) {
  model::FusionConfig fc;
  fc.d = cfg.d;
  fc.L_max = cfg.l_max;
  fc.R_max = cfg.r_max;
  fc.vocab_size = cfg.vocab_size;
  fc.lr = cfg.lr;
  fc.epochs = cfg.epochs;
  fc.runs = cfg.runs;
  fc.batch = cfg.batch;
  fc.multiview = !cfg.dialogue_only;
  fc.seed = cfg.seed;
  if (cfg.token_budget > 0) fc.token_budget = cfg.token_budget;
  return fc;
}

// Macro F1 plus the number of records that actually carry the dimension.
std::pair<double, std::size_t> baseline_f1(const model::BaselineModel& model,
                                           const std::vector<ir::CharacterRecord>& records) {
  std::vector<std::string> gold, pred;
  for (const auto& r : records) {
    const auto* vote = r.profile.find_vote(model.dimension.id);
    if (!vote) continue;
    gold.push_back(vote->winner);
    pred.push_back(model::predict_baseline(model, r));
  }
  if (gold.empty()) return {0.0, 0};
  return {eval::macro_f1(gold, pred), gold.size()};
}

std::pair<double, std::size_t> fusion_f1(const model::FusionParams& params,
                                         const std::vector<ir::CharacterRecord>& records,
                                         const ir::Dimension& dim,
                                         const model::FusionConfig& fc) {
  std::vector<std::string> gold, pred;
  for (const auto& r : records) {
    const auto* vote = r.profile.find_vote(dim.id);
    if (!vote) continue;
    gold.push_back(vote->winner);
    pred.push_back(model::predict_fusion(params, r, dim, fc));
  }
  if (gold.empty()) return {0.0, 0};
  return {eval::macro_f1(gold, pred), gold.size()};
}

int cmd_synth(const PipelineConfig& cfg, bool seed_given) {
  synth::ScriptCorpusConfig sc;
  sc.n_success = cfg.synth_success;
  sc.n_failure = cfg.synth_failure;
  sc.n_no_fade = cfg.synth_no_fade;
  if (seed_given) sc.seed = cfg.seed;
  auto corpus = synth::make_script_corpus(sc);
  synth::write_script_corpus(corpus, cfg.out_dir);
  std::cout << "wrote " << corpus.scripts.size() << " scripts and " << corpus.profiles.size()
            << " profiles under " << cfg.out_dir << "\n";
  return 0;
}

int cmd_parse(const PipelineConfig& cfg) {
  if (cfg.scripts_dir.empty()) throw_config("MissingPath", "--scripts is required");
  auto out = out_dir(cfg);
  auto raw = ingest::read_script_dir(cfg.scripts_dir);

  parser::ParseOptions opts;
  opts.tab_width = cfg.tab_width;
  opts.seed = cfg.seed;
  opts.classifier_epochs = cfg.classifier_epochs;
  opts.jobs = cfg.jobs;
  auto corpus = parser::parse_corpus(raw, opts);

  ir::write_parses_jsonl(out / "parses.jsonl", corpus.scripts);

  std::vector<std::string> lines;
  std::size_t n_success = 0, n_failure = 0, n_no_fade = 0;
  for (const auto& e : corpus.report) {
    switch (e.route) {
      case ir::ParseRoute::SilverSuccess: ++n_success; break;
      case ir::ParseRoute::SilverFailure: ++n_failure; break;
      case ir::ParseRoute::NoFadeIn: ++n_no_fade; break;
    }
    ordered_json j;
    j["movie"] = e.movie_name;
    j["route"] = ir::to_string(e.route);
    j["chosen_threshold"] =
        e.chosen_threshold ? ordered_json(*e.chosen_threshold) : ordered_json(nullptr);
    j["achieved_ratio"] =
        e.achieved_ratio ? ordered_json(*e.achieved_ratio) : ordered_json(nullptr);
    j["n_sections"] = e.n_sections;
    lines.push_back(j.dump());
  }
  ir::write_lines(out / "silver_report.jsonl", lines);

  ordered_json stats;
  stats["n_input"] = raw.size();
  stats["n_parsed"] = corpus.scripts.size();
  stats["n_skipped"] = corpus.skipped.size();
  stats["dialogue_ratio"] = {{"mu", corpus.stats.mu},
                             {"sigma", corpus.stats.sigma},
                             {"n_scripts", corpus.stats.n_scripts}};
  stats["silver_fraction"] = corpus.silver_fraction;
  stats["routes"] = {{"silver_success", n_success},
                     {"silver_failure", n_failure},
                     {"no_fade_in", n_no_fade}};
  ordered_json cls;
  cls["trained"] = corpus.model.has_value();
  if (corpus.model) {
    cls["seed"] = corpus.model->meta.seed;
    cls["epochs"] = corpus.model->meta.epochs;
    cls["train_size"] = corpus.model->meta.train_size;
    cls["holdout_size"] = corpus.model->meta.holdout_size;
    cls["holdout_accuracy"] = corpus.model->meta.holdout_accuracy;
  }
  stats["classifier"] = cls;
  ordered_json skipped = ordered_json::array();
  for (const auto& s : corpus.skipped) {
    skipped.push_back({{"movie", s.movie_name}, {"reason", s.reason}});
  }
  stats["skipped"] = skipped;
  write_json_file(out / "corpus_stats.json", stats);

  if (corpus.model) parser::save_section_model(*corpus.model, out / "section_model.bin");

  std::cout << "parsed " << corpus.scripts.size() << "/" << raw.size() << " scripts: "
            << n_success << " by threshold, " << n_failure + n_no_fade
            << " by classifier (ratio mu " << corpus.stats.mu << ", sigma "
            << corpus.stats.sigma << ")\n";
  return 0;
}

int cmd_build(const PipelineConfig& cfg) {
  if (cfg.parses_file.empty()) throw_config("MissingPath", "--parses is required");
  if (cfg.profiles_file.empty()) throw_config("MissingPath", "--profiles is required");
  auto out = out_dir(cfg);

  auto parses = ir::read_parses_jsonl(cfg.parses_file);
  auto profiles = ir::read_profiles_jsonl(cfg.profiles_file);
  auto kept = match::filter_profiles(profiles, cfg.min_voters, cfg.min_agreement);
  auto outcome = match::match_corpus(kept, parses);

  data::SplitRatios ratios{cfg.train_ratio, cfg.dev_ratio, cfg.test_ratio};
  auto records = data::split_dataset(std::move(outcome.records), ratios, cfg.seed);

  std::size_t violations = 0;
  for (const auto& r : records) violations += ir::validate_record(r).size();
  if (violations > 0) {
    throw_data("InvalidRecord",
               std::to_string(violations) + " invariant violations in assembled records");
  }

  data::write_split_files(out, records);
  auto stats = data::compute_stats(records);
  write_json_file(out / "dataset_stats.json", data::stats_to_json(stats));
  write_file(out / "dataset_stats.txt", data::stats_to_text(stats));
  ir::write_lines(out / "unmatched.txt", outcome.unmatched);

  std::cout << "matched " << records.size() << "/" << profiles.size() << " profiles ("
            << kept.size() - records.size() << " without script content, "
            << profiles.size() - kept.size() << " filtered)\n";
  return 0;
}

int cmd_stats(const PipelineConfig& cfg) {
  auto splits = load_splits(cfg.data_dir);
  auto stats = data::compute_stats(splits.all());
  auto out = out_dir(cfg);
  write_json_file(out / "dataset_stats.json", data::stats_to_json(stats));
  auto text = data::stats_to_text(stats);
  write_file(out / "dataset_stats.txt", text);
  std::cout << text;
  return 0;
}

int cmd_train_baseline(const PipelineConfig& cfg) {
  auto dim = need_dimension(cfg.dimension);
  auto splits = load_splits(cfg.data_dir);
  auto out = out_dir(cfg);

  auto model = model::fit_baseline(splits.train, dim, cfg.svm_c, cfg.seed, cfg.svm_epochs);
  auto slug = dim_slug(dim);
  model::save_baseline(model, out / ("baseline_" + slug + ".json"));

  auto [train_f1, n_train] = baseline_f1(model, splits.train);
  auto [dev_f1, n_dev] = baseline_f1(model, splits.dev);
  auto [test_f1, n_test] = baseline_f1(model, splits.test);

  ordered_json j;
  j["model"] = "baseline";
  j["dimension"] = dim.id;
  j["C"] = cfg.svm_c;
  j["seed"] = cfg.seed;
  j["epochs_run"] = model.meta.epochs_run;
  j["converged"] = model.meta.converged;
  j["vocab_size"] = model.vocab.size();
  j["train"] = {{"n", n_train}, {"macro_f1", train_f1}};
  j["dev"] = {{"n", n_dev}, {"macro_f1", dev_f1}};
  j["test"] = {{"n", n_test}, {"macro_f1", test_f1}};
  write_json_file(out / ("baseline_" + slug + "_metrics.json"), j);

  std::cout << "baseline " << dim.id << ": train F1 " << train_f1 << ", dev F1 " << dev_f1
            << ", test F1 " << test_f1 << "\n";
  return 0;
}

int cmd_train_fusion(const PipelineConfig& cfg) {
  auto dim = need_dimension(cfg.dimension);
  auto splits = load_splits(cfg.data_dir);
  auto out = out_dir(cfg);
  auto fc = fusion_config(cfg);

  auto result = model::train_fusion(splits.train, splits.dev, dim, fc);
  auto slug = dim_slug(dim);

  std::vector<double> test_f1s;
  test_f1s.reserve(result.runs.size());
  for (const auto& run : result.runs) {
    test_f1s.push_back(fusion_f1(run.params, splits.test, dim, fc).first);
  }

  ordered_json j;
  j["model"] = "fusion";
  j["dimension"] = dim.id;
  j["config"] = {{"d", fc.d},
                 {"L_max", fc.L_max},
                 {"R_max", fc.R_max},
                 {"vocab_size", fc.vocab_size},
                 {"lr", fc.lr},
                 {"epochs", fc.epochs},
                 {"runs", fc.runs},
                 {"batch", fc.batch},
                 {"multiview", fc.multiview},
                 {"seed", fc.seed},
                 {"token_budget", fc.token_budget ? ordered_json(*fc.token_budget)
                                                  : ordered_json(nullptr)}};
  ordered_json runs = ordered_json::array();
  for (std::size_t i = 0; i < result.runs.size(); ++i) {
    const auto& m = result.runs[i].metrics;
    runs.push_back({{"run", m.run},
                    {"seed", m.seed},
                    {"best_epoch", m.best_epoch},
                    {"best_dev_f1", m.best_dev_f1},
                    {"final_train_f1", m.final_train_f1},
                    {"test_f1", test_f1s[i]},
                    {"epoch_dev_f1", m.epoch_dev_f1}});
  }
  j["runs"] = runs;
  j["aggregate"] = {{"mean_dev_f1", result.mean_dev_f1},
                    {"std_dev_f1", result.std_dev_f1},
                    {"mean_test_f1", text::mean_of(test_f1s)},
                    {"std_test_f1", text::population_std(test_f1s)}};
  write_json_file(out / ("fusion_" + slug + "_metrics.json"), j);

  std::ostringstream csv;
  csv << std::setprecision(17);
  csv << "run,seed,best_epoch,dev_f1,test_f1,final_train_f1\n";
  for (std::size_t i = 0; i < result.runs.size(); ++i) {
    const auto& m = result.runs[i].metrics;
    csv << m.run << ',' << m.seed << ',' << m.best_epoch << ',' << m.best_dev_f1 << ','
        << test_f1s[i] << ',' << m.final_train_f1 << '\n';
  }
  write_file(out / ("fusion_" + slug + "_runs.csv"), csv.str());

  std::size_t best = 0;
  for (std::size_t i = 1; i < result.runs.size(); ++i) {
    if (result.runs[i].metrics.best_dev_f1 > result.runs[best].metrics.best_dev_f1) best = i;
  }
  model::save_fusion(result.runs[best].params, out / ("fusion_" + slug + ".bin"));

  std::cout << "fusion " << dim.id << ": dev F1 " << result.mean_dev_f1 << " +/- "
            << result.std_dev_f1 << ", test F1 " << text::mean_of(test_f1s) << " +/- "
            << text::population_std(test_f1s) << " over " << result.runs.size() << " runs\n";
  return 0;
}

int cmd_eval(const PipelineConfig& cfg) {
  if (cfg.model_file.empty()) throw_config("MissingPath", "--model is required");
  auto splits = load_splits(cfg.data_dir);

  const std::vector<ir::CharacterRecord>* records = nullptr;
  if (cfg.split == "train") records = &splits.train;
  else if (cfg.split == "dev") records = &splits.dev;
  else if (cfg.split == "test") records = &splits.test;
  else throw_config("BadSplit", "unknown split: " + cfg.split);

  fs::path model_path(cfg.model_file);
  ordered_json j;
  double f1 = 0.0;
  std::size_t n = 0;
  std::string dim_id;
  if (model_path.extension() == ".json") {
    auto model = model::load_baseline(model_path);
    std::tie(f1, n) = baseline_f1(model, *records);
    dim_id = model.dimension.id;
    j["model"] = "baseline";
  } else {
    auto dim = need_dimension(cfg.dimension);
    auto params = model::load_fusion(model_path);
    std::tie(f1, n) = fusion_f1(params, *records, dim, fusion_config(cfg));
    dim_id = dim.id;
    j["model"] = "fusion";
  }
  if (n == 0) {
    throw_data("MissingDimension", "no " + dim_id + " labels in split " + cfg.split);
  }

  j["dimension"] = dim_id;
  j["split"] = cfg.split;
  j["n_records"] = n;
  j["macro_f1"] = f1;
  auto out = out_dir(cfg);
  write_json_file(out / "eval.json", j);
  std::cout << "macro F1 (" << dim_id << ", " << cfg.split << ", n=" << n << "): " << f1 << "\n";
  return 0;
}

int cmd_human_perf(const PipelineConfig& cfg) {
  auto splits = load_splits(cfg.data_dir);
  auto result = eval::human_perf_estimate(splits.all(), cfg.seed, cfg.voters);
  auto out = out_dir(cfg);

  ordered_json j;
  j["seed"] = cfg.seed;
  j["voters"] = cfg.voters;
  ordered_json dims = ordered_json::array();
  for (const auto& d : result.dimensions) {
    dims.push_back({{"dimension", d.dimension},
                    {"n_characters", d.n_characters},
                    {"mean_accuracy", d.mean_accuracy},
                    {"std_accuracy", d.std_accuracy},
                    {"mean_f1", d.mean_f1},
                    {"std_f1", d.std_f1}});
  }
  j["dimensions"] = dims;
  write_json_file(out / "human_perf.json", j);

  std::ostringstream csv;
  csv << std::setprecision(17);
  csv << "dimension,n_characters,mean_accuracy,std_accuracy,mean_f1,std_f1\n";
  for (const auto& d : result.dimensions) {
    csv << d.dimension << ',' << d.n_characters << ',' << d.mean_accuracy << ','
        << d.std_accuracy << ',' << d.mean_f1 << ',' << d.std_f1 << '\n';
  }
  write_file(out / "human_perf.csv", csv.str());

  CoutFormatGuard guard;
  std::cout << std::left << std::setw(11) << "dimension" << std::right << std::setw(7) << "chars"
            << std::setw(19) << "accuracy" << std::setw(19) << "macro F1" << "\n";
  std::cout << std::fixed << std::setprecision(4);
  for (const auto& d : result.dimensions) {
    std::ostringstream acc, f1;
    acc << std::fixed << std::setprecision(4) << d.mean_accuracy << " +/- " << d.std_accuracy;
    f1 << std::fixed << std::setprecision(4) << d.mean_f1 << " +/- " << d.std_f1;
    std::cout << std::left << std::setw(11) << d.dimension << std::right << std::setw(7)
              << d.n_characters << std::setw(19) << acc.str() << std::setw(19) << f1.str()
              << "\n";
  }
  return 0;
}

int cmd_curve(const PipelineConfig& cfg) {
  auto dim = need_dimension(cfg.dimension);
  auto splits = load_splits(cfg.data_dir);
  auto out = out_dir(cfg);

  std::vector<std::size_t> sizes = cfg.sizes;
  if (sizes.empty()) {
    for (std::size_t s : {std::size_t{1000}, std::size_t{1500}, std::size_t{2000}}) {
      if (s < splits.train.size()) sizes.push_back(s);
    }
    sizes.push_back(splits.train.size());
  }

  eval::TrainerFn trainer;
  if (cfg.model_kind == "baseline") {
    trainer = [&cfg, &splits](const std::vector<ir::CharacterRecord>& subset,
                              const ir::Dimension& d) {
      auto m = model::fit_baseline(subset, d, cfg.svm_c, cfg.seed, cfg.svm_epochs);
      return baseline_f1(m, splits.dev).first;
    };
  } else if (cfg.model_kind == "fusion") {
    trainer = [&cfg, &splits](const std::vector<ir::CharacterRecord>& subset,
                              const ir::Dimension& d) {
      auto fc = fusion_config(cfg);
      fc.runs = 1;
      return model::train_fusion(subset, splits.dev, d, fc).mean_dev_f1;
    };
  } else {
    throw_config("BadModelKind", "curve supports baseline or fusion, got " + cfg.model_kind);
  }

  auto rows = eval::learning_curve(trainer, splits.train, sizes, dim, cfg.seed);
  auto slug = dim_slug(dim);

  ordered_json j;
  j["dimension"] = dim.id;
  j["model"] = cfg.model_kind;
  j["seed"] = cfg.seed;
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) arr.push_back({{"size", r.size}, {"dev_f1", r.dev_f1}});
  j["rows"] = arr;
  write_json_file(out / ("curve_" + slug + ".json"), j);

  std::ostringstream csv;
  csv << std::setprecision(17);
  csv << "size,dev_f1\n";
  for (const auto& r : rows) csv << r.size << ',' << r.dev_f1 << '\n';
  write_file(out / ("curve_" + slug + ".csv"), csv.str());

  CoutFormatGuard guard;
  std::cout << std::right << std::setw(8) << "size" << std::setw(10) << "dev F1" << "\n";
  for (const auto& r : rows) {
    std::cout << std::setw(8) << r.size << std::setw(10) << std::fixed << std::setprecision(4)
              << r.dev_f1 << "\n";
  }
  return 0;
}

int cmd_ablate(const PipelineConfig& cfg) {
  auto dim = need_dimension(cfg.dimension);
  auto splits = load_splits(cfg.data_dir);
  auto out = out_dir(cfg);

  std::vector<std::size_t> budgets = cfg.budgets;
  if (budgets.empty()) budgets = {500, 1000, 2000, 4000};

  eval::BudgetTrainerFn trainer = [&cfg, &splits](const std::vector<ir::CharacterRecord>& train,
                                                  const ir::Dimension& d, std::size_t budget) {
    auto fc = fusion_config(cfg);
    fc.runs = 1;
    fc.token_budget = budget;
    return model::train_fusion(train, splits.dev, d, fc).mean_dev_f1;
  };

  auto rows = eval::length_ablation(trainer, splits.train, budgets, dim);
  auto slug = dim_slug(dim);

  ordered_json j;
  j["dimension"] = dim.id;
  j["model"] = "fusion";
  j["seed"] = cfg.seed;
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) arr.push_back({{"budget", r.budget}, {"dev_f1", r.dev_f1}});
  j["rows"] = arr;
  write_json_file(out / ("ablation_" + slug + ".json"), j);

  std::ostringstream csv;
  csv << std::setprecision(17);
  csv << "budget,dev_f1\n";
  for (const auto& r : rows) csv << r.budget << ',' << r.dev_f1 << '\n';
  write_file(out / ("ablation_" + slug + ".csv"), csv.str());

  CoutFormatGuard guard;
  std::cout << std::right << std::setw(8) << "budget" << std::setw(10) << "dev F1" << "\n";
  for (const auto& r : rows) {
    std::cout << std::setw(8) << r.budget << std::setw(10) << std::fixed << std::setprecision(4)
              << r.dev_f1 << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  PipelineConfig cfg;
  CLI::App app{"Screenplay dialogue corpus and personality prediction pipeline"};
  app.set_config("--config", "", "Config file with key=value lines; explicit flags win");
  app.require_subcommand(1);

  app.add_option("--scripts", cfg.scripts_dir, "Directory of raw screenplay files")
      ->group("Paths");
  app.add_option("--profiles", cfg.profiles_file, "Personality profiles JSONL")->group("Paths");
  app.add_option("--parses", cfg.parses_file, "Labeled parses JSONL (output of parse)")
      ->group("Paths");
  app.add_option("--data", cfg.data_dir, "Directory holding train/dev/test.jsonl")
      ->group("Paths");
  app.add_option("--out", cfg.out_dir, "Output directory")
      ->capture_default_str()
      ->group("Paths");
  app.add_option("--model", cfg.model_file, "Model file to evaluate (.json = n-gram linear)")
      ->group("Paths");

  auto* seed_opt =
      app.add_option("--seed", cfg.seed, "Master RNG seed")->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "Worker threads for per-script parsing")
      ->capture_default_str();
  app.add_option("--tab-width", cfg.tab_width, "Spaces per tab when normalizing scripts")
      ->capture_default_str();
  app.add_option("--classifier-epochs", cfg.classifier_epochs,
                 "Section classifier training epochs")
      ->capture_default_str();
  app.add_option("--dimension", cfg.dimension,
                 "Personality axis: E/I N/S T/F J/P or S/R L/C O/U A/E N/I")
      ->capture_default_str();
  app.add_option("--split", cfg.split, "Split to evaluate: train, dev or test")
      ->capture_default_str();

  app.add_option("--min-voters", cfg.min_voters, "Profile voter floor")
      ->capture_default_str()
      ->group("Dataset");
  app.add_option("--min-agreement", cfg.min_agreement, "Per-dimension agreement floor")
      ->capture_default_str()
      ->group("Dataset");
  app.add_option("--train-ratio", cfg.train_ratio, "Train split share")
      ->capture_default_str()
      ->group("Dataset");
  app.add_option("--dev-ratio", cfg.dev_ratio, "Dev split share")
      ->capture_default_str()
      ->group("Dataset");
  app.add_option("--test-ratio", cfg.test_ratio, "Test split share")
      ->capture_default_str()
      ->group("Dataset");

  app.add_option("--c", cfg.svm_c, "Hinge-loss regularization C")
      ->capture_default_str()
      ->group("Training");
  app.add_option("--svm-epochs", cfg.svm_epochs, "Hinge-loss epoch cap")
      ->capture_default_str()
      ->group("Training");
  app.add_option("--embed-dim", cfg.d, "Encoder width")->capture_default_str()->group("Training");
  app.add_option("--l-max", cfg.l_max, "Tokens per row")->capture_default_str()->group("Training");
  app.add_option("--r-max", cfg.r_max, "Rows kept per view")
      ->capture_default_str()
      ->group("Training");
  app.add_option("--vocab-size", cfg.vocab_size, "Hashed embedding vocabulary size")
      ->capture_default_str()
      ->group("Training");
  app.add_option("--lr", cfg.lr, "Adam learning rate")->capture_default_str()->group("Training");
  app.add_option("--epochs", cfg.epochs, "Fusion training epochs")
      ->capture_default_str()
      ->group("Training");
  app.add_option("--runs", cfg.runs, "Seeded repetitions to aggregate")
      ->capture_default_str()
      ->group("Training");
  app.add_option("--batch", cfg.batch, "Minibatch size")->capture_default_str()->group("Training");
  app.add_flag("--dialogue-only", cfg.dialogue_only, "Drop the scene view (ablation)")
      ->group("Training");
  app.add_option("--token-budget", cfg.token_budget, "Per-view token cap, 0 = unlimited")
      ->capture_default_str()
      ->group("Training");

  app.add_option("--voters", cfg.voters, "Simulated voters per character")
      ->capture_default_str()
      ->group("Evaluation");
  app.add_option("--sizes", cfg.sizes, "Curve train sizes (default 1000,1500,2000,all)")
      ->delimiter(',')
      ->group("Evaluation");
  app.add_option("--budgets", cfg.budgets, "Ablation token budgets (default 500,1000,2000,4000)")
      ->delimiter(',')
      ->group("Evaluation");
  app.add_option("--trainer", cfg.model_kind, "Curve trainer: baseline or fusion")
      ->capture_default_str()
      ->group("Evaluation");

  app.add_option("--synth-success", cfg.synth_success, "Synthetic scripts inside the ratio band")
      ->capture_default_str()
      ->group("Synthesis");
  app.add_option("--synth-failure", cfg.synth_failure, "Synthetic scripts overshooting the band")
      ->capture_default_str()
      ->group("Synthesis");
  app.add_option("--synth-no-fade", cfg.synth_no_fade, "Synthetic scripts without the anchor")
      ->capture_default_str()
      ->group("Synthesis");

  auto* c_parse = app.add_subcommand("parse", "Label screenplay sections as dialogue or scene");
  auto* c_build =
      app.add_subcommand("build", "Match profiles to parses and emit the split dataset");
  auto* c_stats = app.add_subcommand("stats", "Describe an existing dataset");
  auto* c_base = app.add_subcommand("train-baseline", "Fit the n-gram hinge-loss baseline");
  auto* c_fusion = app.add_subcommand("train-fusion", "Train the two-view attention model");
  auto* c_eval = app.add_subcommand("eval", "Score a saved model on one split");
  auto* c_human = app.add_subcommand("human-perf", "Simulate voter-level human performance");
  auto* c_curve = app.add_subcommand("curve", "Learning curve over nested train subsets");
  auto* c_ablate = app.add_subcommand("ablate", "Token-budget ablation of the fusion model");
  auto* c_synth = app.add_subcommand("synth", "Generate the synthetic screenplay corpus");
  for (auto* sub : {c_parse, c_build, c_stats, c_base, c_fusion, c_eval, c_human, c_curve,
                    c_ablate, c_synth}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (c_synth->parsed()) return cmd_synth(cfg, seed_opt->count() > 0);
    if (c_parse->parsed()) return cmd_parse(cfg);
    if (c_build->parsed()) return cmd_build(cfg);
    if (c_stats->parsed()) return cmd_stats(cfg);
    if (c_base->parsed()) return cmd_train_baseline(cfg);
    if (c_fusion->parsed()) return cmd_train_fusion(cfg);
    if (c_eval->parsed()) return cmd_eval(cfg);
    if (c_human->parsed()) return cmd_human_perf(cfg);
    if (c_curve->parsed()) return cmd_curve(cfg);
    if (c_ablate->parsed()) return cmd_ablate(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace sp::cli
