#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sp::cli {

// Everything the subcommands consume. Defaults mirror the pipeline's
// reference configuration; a config file (key=value) can override them and
// explicit flags win over the file.
struct PipelineConfig {
  std::string scripts_dir;
  std::string profiles_file;
  std::string parses_file;
  std::string data_dir;
  std::string out_dir = "out";
  std::string model_file;
  std::string dimension = "E/I";
  std::string split = "dev";
  std::string model_kind = "baseline";  // curve / ablate trainer

  int tab_width = 8;
  int jobs = 1;
  std::uint64_t seed = 0;
  int classifier_epochs = 12;

  int min_voters = 3;
  double min_agreement = 0.60;
  double train_ratio = 0.8;
  double dev_ratio = 0.1;
  double test_ratio = 0.1;

  double svm_c = 0.1;
  int svm_epochs = 300;

  int d = 8;
  int l_max = 16;
  int r_max = 20;
  std::uint32_t vocab_size = 4096;
  double lr = 1e-2;
  int epochs = 20;
  int runs = 5;
  int batch = 16;
  bool dialogue_only = false;
  std::size_t token_budget = 0;  // 0 = no truncation

  int voters = 3;
  std::vector<std::size_t> sizes;    // curve; empty = 1000,1500,2000,all
  std::vector<std::size_t> budgets;  // ablate; empty = 500,1000,2000,4000

  int synth_success = 22;
  int synth_failure = 3;
  int synth_no_fade = 3;
};

// Full argv entry point. 0 success, 1 config error, 2 data error,
// 3 training error.
int run_cli(int argc, const char* const* argv);

}  // namespace sp::cli
