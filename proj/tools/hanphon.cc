// Copyright (c) 2026 The hanphon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// hanphon: Cantonese pronunciation prediction from logograph structure.
//
//   hanphon ingest    --out data/run1
//   hanphon decompose 懾
//   hanphon train     --config configs/mlp_bor.json --data data/run1 --out runs/mlp
//   hanphon eval      --run runs/mlp --data data/run1 --split test
//   hanphon predict   --run runs/mlp --data data/run1 懾
//   hanphon gradcheck --config configs/gradcheck_multimodal.json --data data/run1
//   hanphon compare   runs/*/report_test.json

#include <unistd.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "hanphon/common/error.h"
#include "hanphon/common/hash.h"
#include "hanphon/common/utf8.h"
#include "hanphon/eval/eval.h"
#include "hanphon/ids/ids.h"
#include "hanphon/nn/optim.h"
#include "hanphon/pipeline/experiment.h"
#include "hanphon/unihan/dataset.h"

namespace fs = std::filesystem;
using hanphon::Error;
using hanphon::ErrorCode;
using nlohmann::ordered_json;

namespace {

constexpr const char* kToolVersion = "0.3.0";
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

// Usage and configuration problems, reported with exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string DataRoot() {
  if (const char* env = std::getenv("HANPHON_DATA_DIR"); env && *env) return env;
  return HANPHON_DEFAULT_DATA_DIR;
}

std::string DefaultDatasetDir() {
  if (const char* env = std::getenv("HANPHON_DATASET_DIR"); env && *env) return env;
  return "dataset";
}

std::string UtcNow() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void RequireFile(const std::string& path, const char* what) {
  if (!fs::is_regular_file(path)) throw UsageError(std::string(what) + " not found: " + path);
}

void RequireDir(const std::string& path, const char* what) {
  if (!fs::is_directory(path)) throw UsageError(std::string(what) + " not found: " + path);
}

// Output directories must be new (or empty) so that every run directory holds
// artifacts from exactly one run.
void RequireFreshDir(const std::string& path) {
  if (fs::exists(path) && !(fs::is_directory(path) && fs::is_empty(path))) {
    throw UsageError("output directory already exists and is not empty: " + path);
  }
}

// Builds artifacts in a sibling staging directory and moves it into place
// only when everything succeeded.
class StagingDir {
 public:
  explicit StagingDir(std::string final_path) : final_(std::move(final_path)) {
    fs::path p(final_);
    staging_ = (p.parent_path() / ("." + p.filename().string() + ".partial-" +
                                   std::to_string(::getpid())))
                   .string();
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    fs::remove_all(staging_);
    fs::create_directories(staging_);
  }
  ~StagingDir() {
    if (!committed_) {
      std::error_code ec;
      fs::remove_all(staging_, ec);
    }
  }
  const std::string& path() const { return staging_; }
  std::string File(const std::string& name) const { return (fs::path(staging_) / name).string(); }
  void Commit() {
    if (fs::exists(final_)) fs::remove(final_);  // empty directory
    fs::rename(staging_, final_);
    committed_ = true;
  }

 private:
  std::string final_;
  std::string staging_;
  bool committed_ = false;
};

nlohmann::json ReadJsonFile(const std::string& path) {
  RequireFile(path, "file");
  auto j = nlohmann::json::parse(hanphon::unihan::ReadFile(path), nullptr, false);
  if (j.is_discarded()) throw UsageError(path + ": not valid JSON");
  return j;
}

hanphon::models::TrainConfig LoadConfig(const std::string& path) {
  try {
    return hanphon::models::TrainConfig::FromJson(ReadJsonFile(path));
  } catch (const Error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

hanphon::unihan::Dataset LoadDatasetChecked(const std::string& dir) {
  RequireDir(dir, "dataset directory");
  RequireFile((fs::path(dir) / "manifest.json").string(), "dataset manifest");
  return hanphon::unihan::LoadDataset(dir);
}

// ---------------------------------------------------------------------------
// ingest

struct IngestArgs {
  std::string unihan;
  std::string ids;
  std::string tables;
  std::string out;
  std::string config;
  uint64_t seed = 42;
};

int RunIngest(const IngestArgs& a) {
  hanphon::unihan::IngestOptions opt;
  opt.unihan_path = a.unihan.empty() ? DataRoot() + "/snapshot/Unihan_Readings.txt" : a.unihan;
  opt.ids_path = a.ids.empty() ? DataRoot() + "/snapshot/ids.txt" : a.ids;
  opt.tables_dir = a.tables.empty() ? DataRoot() + "/tables" : a.tables;
  opt.seed = a.seed;
  RequireFile(opt.unihan_path, "Unihan readings file");
  RequireFile(opt.ids_path, "IDS file");
  RequireFile((fs::path(opt.tables_dir) / hanphon::unihan::kSegmentationTableFile).string(),
              "segmentation table");
  if (!a.config.empty()) {
    try {
      hanphon::unihan::ApplyIngestConfig(ReadJsonFile(a.config), opt);
    } catch (const Error& e) {
      throw UsageError(a.config + ": " + e.what());
    }
  }
  RequireFreshDir(a.out);

  const hanphon::unihan::Dataset ds = hanphon::unihan::BuildDataset(opt);
  StagingDir stage(a.out);
  hanphon::unihan::WriteDataset(ds, stage.path());
  stage.Commit();

  const auto& m = ds.manifest;
  std::cout << "entries: train " << ds.split.train.size() << ", dev " << ds.split.dev.size()
            << ", test " << ds.split.test.size() << "\n"
            << "radical inventory: " << ds.inventory.size() << " (+UNK)\n"
            << "test coverage: " << m["test_coverage"].dump() << "\n"
            << "manifest sha256: " << ds.ManifestHash() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// decompose

struct DecomposeArgs {
  std::string target;
  std::string ids;
  std::string data;
  // Empty: frequent with --data, full without.
  std::string granularity;
};

int RunDecompose(const DecomposeArgs& a) {
  const std::string ids_path = a.ids.empty() ? DataRoot() + "/snapshot/ids.txt" : a.ids;
  RequireFile(ids_path, "IDS file");
  hanphon::unihan::Granularity granularity;
  try {
    granularity = hanphon::unihan::ParseGranularity(
        a.granularity.empty() ? (a.data.empty() ? "full" : "frequent") : a.granularity);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (granularity == hanphon::unihan::Granularity::kFrequent && a.data.empty()) {
    throw UsageError("--granularity frequent needs --data for the terminal set");
  }
  std::u32string chars;
  if (fs::is_regular_file(a.target)) {
    for (char32_t cp : hanphon::DecodeUtf8(hanphon::unihan::ReadFile(a.target))) {
      if (cp > 0x20) chars.push_back(cp);
    }
  } else {
    chars = hanphon::DecodeUtf8(a.target);
  }
  if (chars.empty()) throw UsageError("nothing to decompose");

  std::optional<hanphon::ids::RadicalInventory> inventory;
  std::set<char32_t> terminals;
  if (!a.data.empty()) {
    const std::string path = (fs::path(a.data) / "inventory.json").string();
    RequireFile(path, "radical inventory");
    const std::string text = hanphon::unihan::ReadFile(path);
    inventory = hanphon::unihan::InventoryFromJson(text);
    terminals = hanphon::unihan::TerminalsFromJson(text);
  }
  const auto db = hanphon::ids::IdsDatabase::Load(ids_path);
  for (char32_t cp : chars) {
    if (db.Find(cp) == nullptr) {
      throw Error(ErrorCode::kUnknownLogograph,
                  hanphon::EncodeUtf8(cp) + " (" + hanphon::CodepointLabel(cp) +
                      ") has no decomposition");
    }
  }
  for (char32_t cp : chars) {
    const hanphon::ids::GeoDSequence& listed = *db.Find(cp);
    hanphon::ids::GeoDSequence seq = listed;
    if (granularity != hanphon::unihan::Granularity::kSource) {
      const std::set<char32_t> none;
      seq = hanphon::ids::Flatten(hanphon::ids::ExpandToGranularity(
          hanphon::ids::Reconstruct(listed), db.table(),
          granularity == hanphon::unihan::Granularity::kFull ? none : terminals));
    }
    if (hanphon::ids::Flatten(hanphon::ids::Reconstruct(seq)) != seq) {
      throw Error(ErrorCode::kInvalidPrefix, "round trip failed for " + hanphon::EncodeUtf8(cp));
    }
    std::cout << hanphon::EncodeUtf8(cp) << "\t" << hanphon::CodepointLabel(cp) << "\t"
              << hanphon::ids::FormatTokens(seq) << "\n";
    std::map<char32_t, int> counts;
    for (char32_t t : seq) {
      if (!hanphon::ids::IdsOperator::IsOperator(t)) ++counts[t];
    }
    std::cout << "  radicals:";
    for (const auto& [r, n] : counts) std::cout << " " << hanphon::EncodeUtf8(r) << "x" << n;
    std::cout << "\n";
    if (inventory) {
      const hanphon::ids::BoRVector bor = hanphon::ids::ToBor(seq, *inventory);
      std::cout << "  bor[" << bor.counts.size() + 1 << "]:";
      for (size_t i = 0; i < bor.counts.size(); ++i) {
        if (bor.counts[i]) std::cout << " " << i << ":" << bor.counts[i];
      }
      if (bor.unk) std::cout << " UNK:" << bor.unk;
      std::cout << "\n";
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// train

struct TrainArgs {
  std::string config;
  std::string data;
  std::string out;
  std::optional<uint64_t> seed;
};

int RunTrain(const TrainArgs& a) {
  hanphon::models::TrainConfig cfg = LoadConfig(a.config);
  if (a.seed) cfg.seed = *a.seed;
  RequireFreshDir(a.out);
  const auto ds = LoadDatasetChecked(a.data);

  auto space = hanphon::pipeline::MakeFeatureSpace(ds, cfg);
  const auto train = space->EncodeAll(hanphon::pipeline::TrainingEntries(ds, cfg));
  const auto dev = space->EncodeAll(ds.split.dev);

  StagingDir stage(a.out);
  std::ofstream log(stage.File("train_log.jsonl"));
  hanphon::models::TrainHooks hooks;
  hooks.on_epoch = [&](const hanphon::models::EpochRecord& r) {
    log << r.ToJson().dump() << "\n";
    log.flush();
    std::cerr << "epoch " << r.epoch << "  loss " << r.train_loss << "  dev SER " << r.dev_ser
              << "  TER " << r.dev_ter << (r.improved ? "  *" : "") << "\n";
  };
  hanphon::pipeline::Predictor predictor(cfg, space);
  const auto result = predictor.Fit(train, dev, hooks);
  log.close();
  const std::string model_path = predictor.Save(stage.path(), result.best_epoch);
  hanphon::unihan::WriteFile(stage.File("config.json"), cfg.ToJson().dump(2) + "\n");

  ordered_json manifest;
  manifest["tool"] = "hanphon";
  manifest["version"] = kToolVersion;
  manifest["command"] = "train";
  manifest["created_utc"] = UtcNow();
  manifest["config"] = cfg.ToJson();
  manifest["seed"] = cfg.seed;
  manifest["data"] = {{"dir", fs::absolute(a.data).string()},
                      {"manifest_sha256", ds.ManifestHash()},
                      {"feature_sha256", space->Fingerprint()}};
  manifest["result"] = {{"best_epoch", result.best_epoch},
                        {"epochs_run", result.log.size()},
                        {"best_dev_ser", result.best_dev_ser},
                        {"best_dev_ter", result.best_dev_ter}};
  ordered_json files;
  for (const char* f : {"config.json", "train_log.jsonl"}) {
    files[f] = hanphon::Sha256File(stage.File(f));
  }
  files[fs::path(model_path).filename().string()] = hanphon::Sha256File(model_path);
  manifest["files"] = files;
  hanphon::unihan::WriteFile(stage.File("manifest.json"), manifest.dump(2) + "\n");
  stage.Commit();
  std::cout << "trained " << cfg.DisplayName() << ": best epoch " << result.best_epoch
            << ", dev SER " << result.best_dev_ser << ", dev TER " << result.best_dev_ter
            << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// eval / predict

struct RunArgs {
  std::string run;
  std::string data;
  std::string split = "test";
  std::string report;
  std::vector<std::string> chars;
};

struct LoadedRun {
  hanphon::unihan::Dataset dataset;
  std::optional<hanphon::pipeline::Predictor> predictor;
};

LoadedRun LoadRun(const RunArgs& a) {
  RequireDir(a.run, "run directory");
  const auto manifest = ReadJsonFile((fs::path(a.run) / "manifest.json").string());
  const hanphon::models::TrainConfig cfg = LoadConfig((fs::path(a.run) / "config.json").string());
  LoadedRun lr{LoadDatasetChecked(a.data), std::nullopt};
  if (manifest.at("data").value("manifest_sha256", "") != lr.dataset.ManifestHash()) {
    throw UsageError("run " + a.run + " was trained on a different dataset than " + a.data);
  }
  lr.predictor.emplace(hanphon::pipeline::Predictor::Load(
      a.run, cfg, hanphon::pipeline::MakeFeatureSpace(lr.dataset, cfg)));
  return lr;
}

int RunEval(const RunArgs& a) {
  if (a.split != "train" && a.split != "dev" && a.split != "test") {
    throw UsageError("--split must be train|dev|test");
  }
  LoadedRun lr = LoadRun(a);
  const auto report = hanphon::pipeline::EvaluateEntries(
      *lr.predictor, hanphon::pipeline::SplitEntries(lr.dataset, a.split),
      lr.dataset.ManifestHash());
  const std::string out =
      a.report.empty() ? (fs::path(a.run) / ("report_" + a.split + ".json")).string() : a.report;
  hanphon::unihan::WriteFile(out, report.ToJson().dump(2) + "\n");
  std::cout << hanphon::eval::Compare({report}).text;
  if (report.excluded_references) {
    std::cout << report.excluded_references << " unparsable references excluded\n";
  }
  std::cout << "report: " << out << "\n";
  return 0;
}

int RunPredict(const RunArgs& a) {
  std::u32string chars;
  for (const auto& s : a.chars) chars += hanphon::DecodeUtf8(s);
  if (chars.empty()) throw UsageError("no logographs given");
  LoadedRun lr = LoadRun(a);
  std::map<char32_t, const hanphon::phonology::LexiconEntry*> index;
  for (const auto* split : {&lr.dataset.split.train, &lr.dataset.split.dev, &lr.dataset.split.test}) {
    for (const auto& e : *split) index[e.logograph] = &e;
  }
  std::vector<hanphon::phonology::LexiconEntry> entries;
  for (char32_t cp : chars) {
    auto it = index.find(cp);
    if (it == index.end()) {
      throw Error(ErrorCode::kUnknownLogograph,
                  hanphon::EncodeUtf8(cp) + " (" + hanphon::CodepointLabel(cp) +
                      ") is not in the dataset");
    }
    entries.push_back(*it->second);
  }
  const auto examples = lr.predictor->space().EncodeAll(entries);
  const auto preds = lr.predictor->Predict(examples);
  for (size_t i = 0; i < entries.size(); ++i) {
    std::cout << hanphon::EncodeUtf8(entries[i].logograph) << "\t"
              << hanphon::CodepointLabel(entries[i].logograph) << "\t" << preds[i].ToString()
              << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// gradcheck

struct GradCheckArgs {
  std::string config;
  std::string data;
  size_t entries = 6;
  size_t samples = 200;
  double tolerance = 1e-5;
  double floor = 1e-4;
  double step = 1e-5;
};

int RunGradCheck(const GradCheckArgs& a) {
  hanphon::models::TrainConfig cfg = LoadConfig(a.config);
  if (cfg.model == hanphon::models::ModelKind::kDecisionTree) {
    throw UsageError("gradcheck needs a neural model config");
  }
  cfg.disable_dropout = true;
  const auto ds = LoadDatasetChecked(a.data);
  auto space = hanphon::pipeline::MakeFeatureSpace(ds, cfg);
  hanphon::models::PronunciationModel model(cfg, space->dims());
  model.Init(cfg.seed);

  // Sequence models need equal-length batches; take the first length with
  // enough entries.
  std::map<size_t, std::vector<hanphon::models::Example>> by_len;
  std::vector<hanphon::models::Example> batch_store;
  for (const auto& e : ds.split.train) {
    auto ex = space->Encode(e);
    auto& group = by_len[model.uses_sequences() ? ex.tokens.size() : 0];
    group.push_back(std::move(ex));
    if (group.size() == a.entries) {
      batch_store = group;
      break;
    }
  }
  if (batch_store.empty()) throw UsageError("not enough training entries for gradcheck");
  std::vector<const hanphon::models::Example*> batch;
  for (const auto& ex : batch_store) batch.push_back(&ex);

  const auto params = model.Params();
  hanphon::nn::GradCheckOptions opt;
  opt.samples = a.samples;
  opt.floor = a.floor;
  opt.step = a.step;
  const auto rep = hanphon::nn::GradCheck(
      [&](bool grad) { return model.Loss(batch, nullptr, grad).total; }, params, opt);
  ordered_json j;
  j["model"] = cfg.DisplayName();
  j["parameters"] = hanphon::nn::CountScalars(params);
  j["coordinates"] = rep.coordinates;
  j["max_rel_error"] = rep.max_rel_error;
  j["worst_param"] = rep.worst_param;
  j["worst_index"] = rep.worst_index;
  j["worst_analytic"] = rep.worst_analytic;
  j["worst_numeric"] = rep.worst_numeric;
  j["tolerance"] = a.tolerance;
  j["pass"] = rep.max_rel_error < a.tolerance;
  std::cout << j.dump(2) << "\n";
  return rep.max_rel_error < a.tolerance ? 0 : kExitRuntime;
}

// ---------------------------------------------------------------------------
// compare

int RunCompare(const std::vector<std::string>& paths, const std::string& json_out) {
  std::vector<hanphon::eval::EvalReport> reports;
  for (const auto& p : paths) {
    try {
      reports.push_back(hanphon::eval::EvalReport::FromJson(ReadJsonFile(p)));
    } catch (const Error& e) {
      throw UsageError(p + ": " + e.what());
    }
  }
  const auto table = hanphon::eval::Compare(reports);
  std::cout << table.text;
  if (!json_out.empty()) hanphon::unihan::WriteFile(json_out, table.json.dump(2) + "\n");
  return 0;
}

int ExitCodeFor(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kInvalidConfig:
    case ErrorCode::kUnknownLogograph:
      return kExitUsage;
    default:
      return kExitRuntime;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cantonese pronunciation prediction from logograph decompositions"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  IngestArgs ingest;
  auto* c_ingest = app.add_subcommand("ingest", "Build the train/dev/test dataset");
  c_ingest->add_option("--unihan", ingest.unihan, "Unihan_Readings.txt");
  c_ingest->add_option("--ids", ingest.ids, "IDS database");
  c_ingest->add_option("--tables", ingest.tables, "Directory with segmentation.tsv");
  c_ingest->add_option("--config", ingest.config, "Ingest options (JSON)");
  c_ingest->add_option("--seed", ingest.seed, "Split seed")->capture_default_str();
  c_ingest->add_option("--out", ingest.out, "Output dataset directory")->required();

  DecomposeArgs dec;
  auto* c_dec = app.add_subcommand("decompose", "Print GeoD tokens and radical counts");
  c_dec->add_option("target", dec.target, "Logograph(s) or a file of logographs")->required();
  c_dec->add_option("--ids", dec.ids, "IDS database");
  c_dec->add_option("--data", dec.data, "Dataset directory (adds the BoR vector)");
  c_dec->add_option("--granularity", dec.granularity,
                    "source|full|frequent (default: frequent with --data, else full)");

  TrainArgs train;
  train.data = DefaultDatasetDir();
  auto* c_train = app.add_subcommand("train", "Train a model into a new run directory");
  c_train->add_option("--config", train.config, "Model config (JSON)")->required();
  c_train->add_option("--data", train.data, "Dataset directory")->capture_default_str();
  c_train->add_option("--out", train.out, "Run directory")->required();
  c_train->add_option("--seed", train.seed, "Override the config seed");

  RunArgs ev;
  ev.data = DefaultDatasetDir();
  auto* c_eval = app.add_subcommand("eval", "Score a run on a split");
  c_eval->add_option("--run", ev.run, "Run directory")->required();
  c_eval->add_option("--data", ev.data, "Dataset directory")->capture_default_str();
  c_eval->add_option("--split", ev.split, "train|dev|test")->capture_default_str();
  c_eval->add_option("--report", ev.report, "Report path (default: <run>/report_<split>.json)");

  RunArgs pred;
  pred.data = DefaultDatasetDir();
  auto* c_pred = app.add_subcommand("predict", "Predict onset/nucleus/coda for logographs");
  c_pred->add_option("--run", pred.run, "Run directory")->required();
  c_pred->add_option("--data", pred.data, "Dataset directory")->capture_default_str();
  c_pred->add_option("chars", pred.chars, "Logographs")->required();

  GradCheckArgs gc;
  gc.data = DefaultDatasetDir();
  auto* c_gc = app.add_subcommand("gradcheck", "Compare analytic and numeric gradients");
  c_gc->add_option("--config", gc.config, "Model config (JSON)")->required();
  c_gc->add_option("--data", gc.data, "Dataset directory")->capture_default_str();
  c_gc->add_option("--entries", gc.entries, "Batch size")->capture_default_str();
  c_gc->add_option("--samples", gc.samples, "Coordinates to check (0 = all)")
      ->capture_default_str();
  c_gc->add_option("--tolerance", gc.tolerance, "Maximum relative error")
      ->capture_default_str();
  c_gc->add_option("--step", gc.step, "Central-difference step")->capture_default_str();
  c_gc->add_option("--floor", gc.floor, "Smallest denominator of the relative error")
      ->capture_default_str();

  std::vector<std::string> reports;
  std::string compare_json;
  auto* c_cmp = app.add_subcommand("compare", "Tabulate evaluation reports");
  c_cmp->add_option("reports", reports, "Report JSON files")->required();
  c_cmp->add_option("--json", compare_json, "Also write the table as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*c_ingest) return RunIngest(ingest);
    if (*c_dec) return RunDecompose(dec);
    if (*c_train) return RunTrain(train);
    if (*c_eval) return RunEval(ev);
    if (*c_pred) return RunPredict(pred);
    if (*c_gc) return RunGradCheck(gc);
    if (*c_cmp) return RunCompare(reports, compare_json);
  } catch (const UsageError& e) {
    std::cerr << "hanphon: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "hanphon: " << e.what() << "\n";
    return ExitCodeFor(e);
  } catch (const std::exception& e) {
    std::cerr << "hanphon: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
