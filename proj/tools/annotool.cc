// Copyright 2026 Motion Annotation Authors.
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

// annotool: command line front end for the annotation platform.

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "annot/analysis/heatmap.h"
#include "annot/analysis/ranking.h"
#include "annot/analysis/report.h"
#include "annot/analysis/simulator.h"
#include "annot/analysis/timeline.h"
#include "annot/api/config.h"
#include "annot/api/http_server.h"
#include "annot/api/platform.h"
#include "annot/common/file_io.h"
#include "annot/ingest/c3d.h"
#include "annot/ingest/motion_document.h"
#include "annot/lm/ngram_model.h"
#include "annot/lm/sentence.h"
#include "annot/selection/selector.h"
#include "annot/store/corpus_stats.h"
#include "annot/store/dataset_archive.h"
#include "annot/store/store.h"
#include "json.hpp"

namespace annot {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

int Fail(const absl::Status& status) {
  std::cerr << "annotool: " << status << "\n";
  return 1;
}

// Writes to `path`, or to stdout when it is empty or "-".
absl::Status Emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return absl::OkStatus();
  }
  return WriteFileAtomically(path, content);
}

absl::StatusOr<store::StoreState> LoadStoreOrEmpty(const fs::path& dir) {
  if (!fs::exists(dir / "store.json")) return store::StoreState{};
  return store::Store::Load(dir);
}

// Corpus for the analysis commands: a store directory or a dataset archive.
struct CorpusSource {
  std::string store_dir;
  std::string archive;

  void Register(CLI::App* app) {
    auto* s = app->add_option("--store", store_dir, "store directory");
    auto* a = app->add_option("--archive", archive, "dataset archive (ZIP)");
    s->excludes(a);
  }

  absl::StatusOr<store::StoreState> Load() const {
    if (!archive.empty()) {
      auto bytes = ReadFile(archive);
      if (!bytes.ok()) return bytes.status();
      auto imported = store::ImportDataset(*bytes);
      if (!imported.ok()) return imported.status();
      for (const std::string& w : imported->warnings) {
        std::cerr << "annotool: warning: " << w << "\n";
      }
      return std::move(imported->state);
    }
    if (!store_dir.empty()) return store::Store::Load(store_dir);
    return absl::InvalidArgumentError("either --store or --archive is required");
  }
};

std::vector<std::string> Texts(const store::StoreState& state) {
  std::vector<std::string> texts;
  for (const auto& [id, record] : state.annotations) texts.push_back(record.text);
  return texts;
}

absl::StatusOr<lm::NGramModel> TrainOn(const std::vector<std::string>& texts,
                                       const lm::TrainingOptions& options) {
  std::vector<lm::SentenceTokens> corpus;
  for (const std::string& t : texts) {
    auto tokens = lm::Normalize(t);
    if (tokens.ok()) corpus.push_back(*std::move(tokens));
  }
  if (corpus.empty()) {
    return absl::FailedPreconditionError("corpus has no scorable annotations");
  }
  return lm::NGramModel::Train(corpus, options);
}

absl::Status CheckFormat(const std::string& format) {
  if (format == "csv" || format == "json") return absl::OkStatus();
  return absl::InvalidArgumentError("--format must be csv or json");
}

// ---- serve ----------------------------------------------------------------

struct ServeOptions {
  std::string config;
  std::string host;
  int port = -1;
};

absl::Status Serve(const ServeOptions& options) {
  auto config = api::LoadConfig(options.config);
  if (!config.ok()) return config.status();
  if (!options.host.empty()) config->host = options.host;
  if (options.port >= 0) config->port = options.port;

  store::StoreState state;
  if (!config->store_dir.empty()) {
    auto loaded = LoadStoreOrEmpty(config->store_dir);
    if (!loaded.ok()) return loaded.status();
    state = *std::move(loaded);
  }
  store::Store store(std::move(state));
  auto platform = api::Platform::Create(*config, store);
  if (!platform.ok()) return platform.status();

  auto save = [&] {
    if (config->store_dir.empty()) return;
    if (absl::Status s = store.Save(config->store_dir); !s.ok()) {
      std::cerr << "annotool: saving store: " << s << "\n";
    }
  };

  // Signals are taken synchronously by the main thread; every thread
  // started below inherits the mask.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  api::HttpServer server(**platform);
  auto port = server.Bind(config->host, config->port);
  if (!port.ok()) return port.status();

  selection::PeriodicTrigger recompute(config->recompute_interval, [&] {
    auto summary = (*platform)->Recompute();
    if (summary.ok()) {
      std::cerr << "annotool: recompute generation " << summary->generation
                << " scored " << summary->scored_motions << " motions\n";
    } else if (summary.status().code() !=
               absl::StatusCode::kFailedPrecondition) {
      std::cerr << "annotool: recompute failed: " << summary.status() << "\n";
    }
    save();
  });
  recompute.Trigger();

  server.Start();
  std::cerr << "annotool: listening on " << config->host << ":" << *port
            << "\n";
  int received = 0;
  sigwait(&signals, &received);
  std::cerr << "annotool: shutting down\n";
  server.Stop();
  save();
  return absl::OkStatus();
}

// ---- ingest / export / import / stats -------------------------------------

struct IngestOptions {
  std::string store_dir;
  std::string mmm;
  std::string c3d;
  std::string institution;
  std::string database_id;
  int64_t id = 0;
};

absl::Status Ingest(const IngestOptions& options) {
  auto state = LoadStoreOrEmpty(options.store_dir);
  if (!state.ok()) return state.status();
  store::Store store(*std::move(state));

  auto xml = ReadFile(options.mmm);
  if (!xml.ok()) return xml.status();
  auto motion = ingest::ParseMotionDocument(*xml);
  if (!motion.ok()) return motion.status();
  store::NewMotion entry{EntryId(options.id), std::nullopt, *std::move(motion),
                         options.institution, options.database_id};
  if (!options.c3d.empty()) {
    auto raw = ReadFile(options.c3d);
    if (!raw.ok()) return raw.status();
    if (auto parsed = ingest::ParseC3d(*raw); !parsed.ok()) {
      return parsed.status();
    }
    entry.raw_c3d = *std::move(raw);
  }
  auto id = store.AddMotion(std::move(entry));
  if (!id.ok()) return id.status();
  if (absl::Status s = store.Save(options.store_dir); !s.ok()) return s;
  std::cout << id->value() << "\n";
  return absl::OkStatus();
}

absl::Status Export(const std::string& store_dir, const std::string& date,
                    const std::string& out) {
  auto state = store::Store::Load(store_dir);
  if (!state.ok()) return state.status();
  auto archive = store::ExportDataset(*state, date);
  if (!archive.ok()) return archive.status();
  return Emit(out, *archive);
}

absl::Status Import(const std::string& archive, const std::string& store_dir) {
  if (fs::exists(fs::path(store_dir) / "store.json")) {
    return absl::AlreadyExistsError(
        absl::StrCat(store_dir, " already holds a store"));
  }
  auto bytes = ReadFile(archive);
  if (!bytes.ok()) return bytes.status();
  auto imported = store::ImportDataset(*bytes);
  if (!imported.ok()) return imported.status();
  for (const std::string& w : imported->warnings) {
    std::cerr << "annotool: warning: " << w << "\n";
  }
  store::Store store(std::move(imported->state));
  if (absl::Status s = store.Save(store_dir); !s.ok()) return s;
  std::cerr << "annotool: imported release " << imported->release_date
            << " with " << store.MotionCount() << " motions\n";
  return absl::OkStatus();
}

absl::Status Stats(const CorpusSource& source) {
  auto state = source.Load();
  if (!state.ok()) return state.status();
  std::cout << store::CorpusCountsToJson(store::ComputeCorpusCounts(*state))
                   .dump(2)
            << "\n";
  return absl::OkStatus();
}

// ---- analyze --------------------------------------------------------------

struct AnalyzeOptions {
  CorpusSource source;
  std::string format = "csv";
  std::string out;
  int order = 4;
  double lambda = 0.8;
  // rank
  size_t count = 10;
  std::string direction = "desc";
  // heatmap
  std::vector<std::string> keywords;
  std::vector<double> edges;
  int buckets = 10;
  // timeline
  int64_t cadence = 200;

  lm::TrainingOptions Training() const { return {order, lambda}; }
};

absl::Status Rank(const AnalyzeOptions& options) {
  if (absl::Status s = CheckFormat(options.format); !s.ok()) return s;
  if (options.direction != "asc" && options.direction != "desc") {
    return absl::InvalidArgumentError("--direction must be asc or desc");
  }
  auto state = options.source.Load();
  if (!state.ok()) return state.status();
  const std::vector<std::string> texts = Texts(*state);
  auto model = TrainOn(texts, options.Training());
  if (!model.ok()) return model.status();
  const auto ranking = analysis::RankAnnotations(
      *model, texts, options.count,
      options.direction == "asc" ? analysis::RankDirection::kLowestFirst
                                 : analysis::RankDirection::kHighestFirst);
  return Emit(options.out, options.format == "csv"
                               ? analysis::RankingCsv(ranking)
                               : analysis::RankingJson(ranking).dump(2) + "\n");
}

absl::Status Heatmap(const AnalyzeOptions& options) {
  if (absl::Status s = CheckFormat(options.format); !s.ok()) return s;
  if (options.keywords.empty()) {
    return absl::InvalidArgumentError("--keywords is required");
  }
  auto state = options.source.Load();
  if (!state.ok()) return state.status();
  const std::vector<std::string> texts = Texts(*state);
  auto model = TrainOn(texts, options.Training());
  if (!model.ok()) return model.status();
  const auto scored = analysis::ScoreAnnotations(*model, texts);
  auto spec = options.edges.empty()
                  ? analysis::HeatmapSpec::ForScores(options.keywords, scored,
                                                     options.buckets)
                  : analysis::HeatmapSpec::Create(options.keywords,
                                                  options.edges);
  if (!spec.ok()) return spec.status();
  const analysis::Heatmap map = analysis::KeywordHeatmap(scored, *spec);
  for (const analysis::HeatmapRow& row : map.rows) {
    if (row.empty()) {
      std::cerr << "annotool: keyword \"" << row.keyword
                << "\" does not occur\n";
    }
  }
  return Emit(options.out, options.format == "csv"
                               ? analysis::HeatmapCsv(map)
                               : analysis::HeatmapJson(map).dump(2) + "\n");
}

absl::Status Timeline(const AnalyzeOptions& options) {
  if (absl::Status s = CheckFormat(options.format); !s.ok()) return s;
  auto state = options.source.Load();
  if (!state.ok()) return state.status();
  const auto events = analysis::EventsFromStore(*state);
  auto points = analysis::PerplexityTimeline(events, options.cadence,
                                             options.Training());
  if (!points.ok()) return points.status();
  return Emit(options.out, options.format == "csv"
                               ? analysis::TimelineCsv(*points)
                               : analysis::TimelineJson(*points).dump(2) + "\n");
}

// ---- simulate -------------------------------------------------------------

struct SimulateOptions {
  std::string config;
  std::vector<uint64_t> seeds;
  std::string timeline_out;
  std::string events_out;
  bool print_config = false;
};

absl::Status RunSimulation(const SimulateOptions& options) {
  analysis::SimulationConfig config = analysis::ReferenceSimulationConfig(1);
  if (!options.config.empty()) {
    auto text = ReadFile(options.config);
    if (!text.ok()) return text.status();
    const json j = json::parse(*text, nullptr, false);
    if (j.is_discarded()) {
      return absl::InvalidArgumentError(
          absl::StrCat(options.config, " is not valid JSON"));
    }
    auto parsed = analysis::SimulationConfigFromJson(j, config);
    if (!parsed.ok()) return parsed.status();
    config = *std::move(parsed);
  }
  if (options.print_config) {
    std::cout << analysis::SimulationConfigToJson(config).dump(2) << "\n";
    return absl::OkStatus();
  }
  std::vector<uint64_t> seeds = options.seeds;
  if (seeds.empty()) seeds.push_back(config.seed);
  for (const std::string* out : {&options.timeline_out, &options.events_out}) {
    if (seeds.size() > 1 && !out->empty() &&
        out->find("{seed}") == std::string::npos) {
      return absl::InvalidArgumentError(
          "with several seeds, output paths must contain {seed}");
    }
  }

  auto results = analysis::SimulateSeeds(config, seeds);
  json summary = json::array();
  for (size_t i = 0; i < seeds.size(); ++i) {
    if (!results[i].ok()) return results[i].status();
    const analysis::SimulationResult& r = *results[i];
    auto path = [&](const std::string& pattern) {
      std::string p = pattern;
      const size_t at = p.find("{seed}");
      if (at != std::string::npos) p.replace(at, 6, std::to_string(seeds[i]));
      return p;
    };
    if (!options.timeline_out.empty()) {
      if (absl::Status s = Emit(path(options.timeline_out),
                                analysis::TimelineCsv(r.timeline));
          !s.ok()) {
        return s;
      }
    }
    if (!options.events_out.empty()) {
      if (absl::Status s = Emit(path(options.events_out),
                                analysis::EventLogCsv(r.events));
          !s.ok()) {
        return s;
      }
    }
    json entry = {{"seed", seeds[i]},
                  {"events", r.events.size()},
                  {"error_events", r.error_events},
                  {"final", analysis::TimelineJson(
                                std::span(&r.timeline.back(), 1))[0]}};
    if (config.switch_at) {
      const int64_t at = *config.switch_at;
      if (auto slope = analysis::RelativeStdSlope(r.timeline, at - 1000, at);
          slope.ok()) {
        entry["pre_switch_relative_std_slope"] = *slope;
      }
      if (auto reduction = analysis::StdReductionSince(r.timeline, at);
          reduction.ok()) {
        entry["std_reduction_since_switch"] = *reduction;
      }
    }
    summary.push_back(entry);
  }
  std::cout << summary.dump(2) << "\n";
  return absl::OkStatus();
}

int Main(int argc, char** argv) {
  CLI::App app{"Motion annotation platform tool"};
  app.require_subcommand(1);
  absl::Status status;

  ServeOptions serve;
  auto* serve_cmd = app.add_subcommand("serve", "run the HTTP service");
  serve_cmd->add_option("--config", serve.config, "platform config (JSON)")
      ->required();
  serve_cmd->add_option("--host", serve.host, "override listen host");
  serve_cmd->add_option("--port", serve.port, "override listen port");
  serve_cmd->callback([&] { status = Serve(serve); });

  IngestOptions ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "add a motion to a store");
  ingest_cmd->add_option("--store", ingest.store_dir, "store directory")
      ->required();
  ingest_cmd->add_option("--mmm", ingest.mmm, "motion document (XML)")
      ->required();
  ingest_cmd->add_option("--c3d", ingest.c3d, "raw marker recording");
  ingest_cmd->add_option("--institution", ingest.institution,
                         "source institution");
  ingest_cmd->add_option("--database-id", ingest.database_id,
                         "id in the source database");
  ingest_cmd->add_option("--id", ingest.id, "entry id (default: next free)");
  ingest_cmd->callback([&] { status = Ingest(ingest); });

  std::string export_store, export_date, export_out;
  auto* export_cmd = app.add_subcommand("export", "write a dataset archive");
  export_cmd->add_option("--store", export_store, "store directory")
      ->required();
  export_cmd->add_option("--date", export_date, "release date YYYY-MM-DD")
      ->required();
  export_cmd->add_option("--out", export_out, "archive path (default stdout)");
  export_cmd->callback(
      [&] { status = Export(export_store, export_date, export_out); });

  std::string import_archive, import_store;
  auto* import_cmd =
      app.add_subcommand("import", "create a store from a dataset archive");
  import_cmd->add_option("--archive", import_archive, "dataset archive")
      ->required();
  import_cmd->add_option("--store", import_store, "new store directory")
      ->required();
  import_cmd->callback([&] { status = Import(import_archive, import_store); });

  CorpusSource stats_source;
  auto* stats_cmd = app.add_subcommand("stats", "print corpus statistics");
  stats_source.Register(stats_cmd);
  stats_cmd->callback([&] { status = Stats(stats_source); });

  AnalyzeOptions analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "perplexity analyses");
  analyze_cmd->require_subcommand(1);
  auto add_common = [&](CLI::App* cmd) {
    analyze.source.Register(cmd);
    cmd->add_option("--format", analyze.format, "csv or json");
    cmd->add_option("--out", analyze.out, "output path (default stdout)");
    cmd->add_option("--order", analyze.order, "n-gram order");
    cmd->add_option("--lambda", analyze.lambda, "interpolation weight");
  };
  auto* rank_cmd = analyze_cmd->add_subcommand("rank", "rank annotations");
  add_common(rank_cmd);
  rank_cmd->add_option("-n,--count", analyze.count, "rows to report");
  rank_cmd->add_option("--direction", analyze.direction, "asc or desc");
  rank_cmd->callback([&] { status = Rank(analyze); });
  auto* heatmap_cmd =
      analyze_cmd->add_subcommand("heatmap", "keyword perplexity heatmap");
  add_common(heatmap_cmd);
  heatmap_cmd->add_option("--keywords", analyze.keywords, "keywords")
      ->delimiter(',');
  heatmap_cmd->add_option("--edges", analyze.edges, "bucket edges")
      ->delimiter(',');
  heatmap_cmd->add_option("--buckets", analyze.buckets,
                          "log-spaced bucket count when --edges is absent");
  heatmap_cmd->callback([&] { status = Heatmap(analyze); });
  auto* timeline_cmd =
      analyze_cmd->add_subcommand("timeline", "perplexity over time");
  add_common(timeline_cmd);
  timeline_cmd->add_option("--cadence", analyze.cadence,
                           "events between recomputes");
  timeline_cmd->callback([&] { status = Timeline(analyze); });

  SimulateOptions simulate;
  auto* simulate_cmd =
      app.add_subcommand("simulate", "run the selection experiment");
  simulate_cmd->add_option("--config", simulate.config,
                           "simulation config (JSON, overrides defaults)");
  simulate_cmd->add_option("--seeds", simulate.seeds, "seeds to run")
      ->delimiter(',');
  simulate_cmd->add_option("--timeline-out", simulate.timeline_out,
                           "timeline CSV path; {seed} is replaced");
  simulate_cmd->add_option("--events-out", simulate.events_out,
                           "event log CSV path; {seed} is replaced");
  simulate_cmd->add_flag("--print-config", simulate.print_config,
                         "print the effective config and exit");
  simulate_cmd->callback([&] { status = RunSimulation(simulate); });

  CLI11_PARSE(app, argc, argv);
  return status.ok() ? 0 : Fail(status);
}

}  // namespace
}  // namespace annot

int main(int argc, char** argv) { return annot::Main(argc, argv); }
