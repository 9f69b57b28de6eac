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

#include "annot/api/json_views.h"

#include <string>

#include "absl/strings/str_cat.h"
#include "absl/time/time.h"
#include "annot/store/corpus_stats.h"

namespace annot {
namespace api {
namespace {

using nlohmann::json;

std::string Rfc3339(absl::Time t) {
  return absl::FormatTime(absl::RFC3339_full, t, absl::UTCTimeZone());
}

json Versioned(json body) {
  body["api_version"] = kApiVersion;
  return body;
}

std::string_view ModeName(selection::StrategyMode mode) {
  switch (mode) {
    case selection::StrategyMode::kAuto:
      return "auto";
    case selection::StrategyMode::kRandom:
      return "random";
    case selection::StrategyMode::kPerplexity:
      return "perplexity";
  }
  return "auto";
}

std::string_view ErrorName(absl::StatusCode code) {
  switch (code) {
    case absl::StatusCode::kUnauthenticated:
      return "unauthenticated";
    case absl::StatusCode::kPermissionDenied:
      return "forbidden";
    case absl::StatusCode::kNotFound:
      return "not-found";
    case absl::StatusCode::kInvalidArgument:
      return "bad-request";
    case absl::StatusCode::kAlreadyExists:
    case absl::StatusCode::kFailedPrecondition:
      return "conflict";
    case absl::StatusCode::kUnavailable:
      return "unavailable";
    default:
      return "internal";
  }
}

}  // namespace

json SessionJson(const Session& s) {
  return Versioned({{"token", s.token},
                    {"annotator_id", s.annotator.value()},
                    {"expires_at", Rfc3339(s.expires_at)}});
}

json LevelJson(int64_t count, const engage::LevelStatus& level) {
  json out = {{"annotation_count", count},
              {"title", level.title},
              {"level", level.index},
              {"progress", level.progress},
              {"next_threshold", nullptr}};
  if (level.next_threshold) out["next_threshold"] = *level.next_threshold;
  return out;
}

json NextMotionJson(const NextMotion& n) {
  return Versioned(
      {{"entry_id", n.entry.value()},
       {"strategy", std::string(selection::StrategyName(n.strategy))},
       {"annotation_count", n.annotation_count},
       {"playback",
        {{"frames_url", absl::StrCat("/api/motions/", n.entry.value(), "/frames")},
         {"default_fps", 25},
         {"duration_secs", n.duration_secs},
         {"source_frames", n.source_frames}}},
       {"progress", LevelJson(n.annotator_count, n.level)}});
}

json SubmitJson(const SubmitResult& r) {
  return Versioned({{"annotation_id", r.record->id.value()},
                    {"entry_id", r.record->entry.value()},
                    {"entry_annotation_count", r.entry_annotation_count},
                    {"progress", LevelJson(r.annotator_count, r.level)}});
}

json RejectionJson(const validate::Verdict& v) {
  return Versioned({{"error", "validation"},
                    {"reason", std::string(validate::ReasonCode(v.reason))},
                    {"message", v.message},
                    {"words", v.words},
                    {"known_words", v.known_words},
                    {"terminators", v.terminators}});
}

json ReportJson(const store::ProblemReport& r) {
  return Versioned({{"report_id", r.id}, {"entry_id", r.entry.value()}});
}

json PlaybackJson(const PlaybackData& d) {
  json frames = json::array();
  for (const auto& f : d.frames) {
    frames.push_back({{"t", f.timestamp},
                      {"root_position", f.root_position},
                      {"root_rotation", f.root_rotation},
                      {"joints", f.joint_values}});
  }
  return Versioned({{"entry_id", d.entry.value()},
                    {"fps", d.fps},
                    {"dof_names", d.dof_names},
                    {"frames", std::move(frames)}});
}

json LeaderboardJson(const std::vector<engage::LeaderboardRow>& rows, size_t total,
                     size_t offset) {
  json out = json::array();
  for (const auto& r : rows) {
    json row = LevelJson(r.annotation_count, r.level);
    row["rank"] = r.rank;
    row["annotator_id"] = r.id.value();
    row["display_name"] = r.display_name;
    out.push_back(std::move(row));
  }
  return Versioned({{"total", total}, {"offset", offset}, {"rows", std::move(out)}});
}

json StatsJson(const store::CorpusCounts& counts) {
  return Versioned(store::CorpusCountsToJson(counts));
}

json SelectionJson(const selection::SelectionSnapshot& s, selection::StrategyMode mode) {
  json entries = json::array();
  for (size_t i = 0; i < s.entries.size(); ++i) {
    entries.push_back({{"entry_id", s.entries[i].value()},
                       {"probability", s.probabilities[i]},
                       {"excluded", s.excluded.contains(s.entries[i])}});
  }
  json out = {{"mode", std::string(ModeName(mode))},
              {"generation", s.generation},
              {"created_at", nullptr},
              {"entries", std::move(entries)}};
  if (s.generation > 0) out["created_at"] = Rfc3339(s.created_at);
  return Versioned(std::move(out));
}

json RecomputeJson(const RecomputeSummary& r) {
  return Versioned({{"generation", r.generation},
                    {"created_at", Rfc3339(r.created_at)},
                    {"scored_motions", r.scored_motions},
                    {"annotations", r.annotations}});
}

json ErrorJson(const absl::Status& status) {
  return Versioned({{"error", std::string(ErrorName(status.code()))},
                    {"message", std::string(status.message())}});
}

}  // namespace api
}  // namespace annot
