#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "sp/cli/run.hpp"
#include "sp/common/text.hpp"
#include "sp/data/builder.hpp"
#include "sp/ir/json_io.hpp"
#include "sp/ir/validate.hpp"
#include "sp/synth/synth.hpp"

using namespace sp;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("sp_cli_" + std::to_string(text::Rng(std::random_device{}()).next_u64()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv = {"scriptpersona"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli::run_cli(static_cast<int>(argv.size()), argv.data());
}

nlohmann::json read_json(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  nlohmann::json j;
  in >> j;
  return j;
}

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// synth -> parse -> build under root; returns the data directory.
fs::path run_chain(const fs::path& root) {
  REQUIRE(run({"synth", "--out", (root / "corpus").string()}) == 0);
  REQUIRE(run({"parse", "--scripts", (root / "corpus" / "scripts").string(), "--out",
               (root / "parsed").string()}) == 0);
  REQUIRE(run({"build", "--parses", (root / "parsed" / "parses.jsonl").string(), "--profiles",
               (root / "corpus" / "profiles.jsonl").string(), "--out",
               (root / "data").string()}) == 0);
  return root / "data";
}

}  // namespace

TEST_CASE("help and usage errors map to the documented codes") {
  CHECK(run({"--help"}) == 0);
  CHECK(run({}) == 1);
  CHECK(run({"no-such-command"}) == 1);
  CHECK(run({"parse", "--no-such-flag"}) == 1);
}

TEST_CASE("the full pipeline runs end to end") {
  TempDir dir;
  auto data = run_chain(dir.path);

  CHECK(fs::exists(dir.path / "corpus" / "profiles.jsonl"));
  CHECK(fs::exists(dir.path / "corpus" / "gold.json"));
  CHECK(fs::exists(dir.path / "parsed" / "silver_report.jsonl"));
  CHECK(fs::exists(dir.path / "parsed" / "section_model.bin"));

  auto stats = read_json(dir.path / "parsed" / "corpus_stats.json");
  CHECK(stats["n_parsed"] == 28);
  CHECK(stats["routes"]["silver_success"] == 22);
  CHECK(stats["routes"]["silver_failure"] == 3);
  CHECK(stats["routes"]["no_fade_in"] == 3);
  CHECK(stats["classifier"]["trained"] == true);

  auto train = ir::read_records_jsonl(data / "train.jsonl");
  auto dev = ir::read_records_jsonl(data / "dev.jsonl");
  auto test = ir::read_records_jsonl(data / "test.jsonl");
  CHECK(train.size() > dev.size());
  CHECK(train.size() > test.size());
  CHECK_FALSE(dev.empty());
  CHECK_FALSE(test.empty());
  for (const auto& r : train) CHECK(ir::validate_record(r).empty());

  auto unmatched = read_bytes(data / "unmatched.txt");
  CHECK(unmatched.find("Unseen Movie 99") != std::string::npos);

  CHECK(run({"stats", "--data", data.string()}) == 0);

  // Dialogue n-gram baseline.
  auto models = dir.path / "models";
  REQUIRE(run({"train-baseline", "--data", data.string(), "--dimension", "E/I", "--out",
               models.string()}) == 0);
  CHECK(fs::exists(models / "baseline_E-I.json"));
  auto base_metrics = read_json(models / "baseline_E-I_metrics.json");
  CHECK(base_metrics["train"]["macro_f1"].get<double>() > 0.9);

  auto eval1 = dir.path / "eval_base";
  REQUIRE(run({"eval", "--model", (models / "baseline_E-I.json").string(), "--data",
               data.string(), "--split", "dev", "--out", eval1.string()}) == 0);
  auto ej = read_json(eval1 / "eval.json");
  CHECK(ej["model"] == "baseline");
  CHECK(ej["dimension"] == "E/I");
  CHECK(ej["split"] == "dev");
  CHECK(ej["n_records"].get<std::size_t>() > 0);

  // Two-view model, sized down for test speed.
  std::vector<std::string> tiny = {"--embed-dim", "4",  "--l-max", "8",     "--r-max", "4",
                                   "--vocab-size", "512", "--epochs", "3",  "--runs",  "1",
                                   "--batch",      "8"};
  std::vector<std::string> fuse = {"train-fusion", "--data", data.string(), "--dimension",
                                   "N/S",          "--out",  models.string()};
  fuse.insert(fuse.end(), tiny.begin(), tiny.end());
  REQUIRE(run(fuse) == 0);
  CHECK(fs::exists(models / "fusion_N-S.bin"));
  CHECK(fs::exists(models / "fusion_N-S_runs.csv"));
  auto fusion_metrics = read_json(models / "fusion_N-S_metrics.json");
  CHECK(fusion_metrics["runs"].size() == 1);
  CHECK(fusion_metrics["config"]["epochs"] == 3);

  auto eval2 = dir.path / "eval_fusion";
  std::vector<std::string> feval = {"eval",  "--model", (models / "fusion_N-S.bin").string(),
                                    "--data", data.string(), "--dimension", "N/S",
                                    "--split", "test", "--out", eval2.string()};
  feval.insert(feval.end(), tiny.begin(), tiny.end());
  REQUIRE(run(feval) == 0);
  CHECK(read_json(eval2 / "eval.json")["model"] == "fusion");

  auto hdir = dir.path / "human";
  REQUIRE(run({"human-perf", "--data", data.string(), "--out", hdir.string()}) == 0);
  CHECK(fs::exists(hdir / "human_perf.json"));
  CHECK(fs::exists(hdir / "human_perf.csv"));

  auto cdir = dir.path / "curve";
  REQUIRE(run({"curve", "--data", data.string(), "--trainer", "baseline", "--dimension", "E/I",
               "--sizes", "16", "--sizes", "32", "--out", cdir.string()}) == 0);
  auto curve = read_json(cdir / "curve_E-I.json");
  REQUIRE(curve["rows"].size() == 2);
  CHECK(curve["rows"][0]["size"] == 16);
  CHECK(curve["rows"][1]["size"] == 32);

  auto adir = dir.path / "ablate";
  std::vector<std::string> ablate = {"ablate", "--data", data.string(), "--dimension", "N/S",
                                     "--budgets", "30", "--budgets", "60",
                                     "--out", adir.string()};
  ablate.insert(ablate.end(), tiny.begin(), tiny.end());
  REQUIRE(run(ablate) == 0);
  auto ablation = read_json(adir / "ablation_N-S.json");
  REQUIRE(ablation["rows"].size() == 2);
  CHECK(ablation["rows"][0]["budget"] == 30);
}

TEST_CASE("repeated runs produce identical artifacts") {
  TempDir dir;
  auto data1 = run_chain(dir.path / "one");
  auto data2 = run_chain(dir.path / "two");

  for (const char* name : {"train.jsonl", "dev.jsonl", "test.jsonl", "dataset_stats.json"})
    CHECK(read_bytes(data1 / name) == read_bytes(data2 / name));
  CHECK(read_bytes(dir.path / "one" / "parsed" / "parses.jsonl") ==
        read_bytes(dir.path / "two" / "parsed" / "parses.jsonl"));
  CHECK(read_bytes(dir.path / "one" / "parsed" / "corpus_stats.json") ==
        read_bytes(dir.path / "two" / "parsed" / "corpus_stats.json"));
}

TEST_CASE("config file values load and explicit flags win") {
  TempDir dir;
  auto data = run_chain(dir.path);
  auto models = dir.path / "models";
  REQUIRE(run({"train-baseline", "--data", data.string(), "--dimension", "E/I", "--out",
               models.string()}) == 0);

  auto config = dir.path / "run.cfg";
  std::ofstream(config) << "data=" << data.string() << "\n"
                        << "model=" << (models / "baseline_E-I.json").string() << "\n"
                        << "split=train\n"
                        << "out=" << (dir.path / "from_config").string() << "\n";

  REQUIRE(run({"eval", "--config", config.string()}) == 0);
  CHECK(read_json(dir.path / "from_config" / "eval.json")["split"] == "train");

  REQUIRE(run({"eval", "--config", config.string(), "--split", "dev", "--out",
               (dir.path / "flag_wins").string()}) == 0);
  CHECK(read_json(dir.path / "flag_wins" / "eval.json")["split"] == "dev");
}

TEST_CASE("data problems exit with code 2") {
  TempDir dir;
  CHECK(run({"parse", "--scripts", (dir.path / "missing").string(), "--out",
             (dir.path / "out").string()}) == 2);
  CHECK(run({"build", "--parses", (dir.path / "nope.jsonl").string(), "--profiles",
             (dir.path / "nope2.jsonl").string(), "--out", (dir.path / "out").string()}) == 2);
  CHECK(run({"eval", "--model", (dir.path / "ghost.json").string(), "--data",
             (dir.path / "data").string(), "--out", (dir.path / "out").string()}) == 2);

  std::ofstream(dir.path / "bad.jsonl") << "{ definitely not json\n";
  CHECK(run({"build", "--parses", (dir.path / "bad.jsonl").string(), "--profiles",
             (dir.path / "bad.jsonl").string(), "--out", (dir.path / "out").string()}) == 2);
}

TEST_CASE("configuration problems exit with code 1") {
  TempDir dir;
  auto data = run_chain(dir.path);

  CHECK(run({"build", "--parses", (dir.path / "parsed" / "parses.jsonl").string(),
             "--profiles", (dir.path / "corpus" / "profiles.jsonl").string(), "--out",
             (dir.path / "d2").string(), "--train-ratio", "0.5", "--dev-ratio", "0.4",
             "--test-ratio", "0.2"}) == 1);
  CHECK(run({"train-baseline", "--data", data.string(), "--dimension", "X/Y", "--out",
             (dir.path / "m2").string()}) == 1);
  CHECK(run({"eval", "--model", "whatever.json", "--data", data.string(), "--split",
             "weird", "--out", (dir.path / "e2").string()}) == 1);
}

TEST_CASE("training problems exit with code 3") {
  TempDir dir;
  const ir::Dimension dim = *ir::find_dimension("E/I");
  std::vector<ir::CharacterRecord> one_pole;
  for (auto& r : synth::make_marker_records(12, dim, 3))
    if (r.profile.find_vote("E/I")->winner == "E") {
      r.split = one_pole.size() < 4 ? ir::Split::Dev : ir::Split::Train;
      one_pole.push_back(std::move(r));
    }
  auto data = dir.path / "data";
  data::write_split_files(data, one_pole);

  CHECK(run({"train-baseline", "--data", data.string(), "--dimension", "E/I", "--out",
             (dir.path / "m").string()}) == 3);
  CHECK(run({"train-fusion", "--data", data.string(), "--dimension", "E/I", "--out",
             (dir.path / "m").string(), "--epochs", "2", "--runs", "1"}) == 3);
}
