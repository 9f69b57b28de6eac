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

#include "annot/analysis/report.h"

#include <charconv>

#include "absl/strings/str_cat.h"
#include "absl/time/time.h"

namespace annot {
namespace analysis {
namespace {

// Shortest representation that parses back to the same double.
std::string Number(double value) {
  char buffer[32];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, end);
}

}  // namespace

std::string CsvField(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string RankingCsv(std::span<const ScoredAnnotation> ranking) {
  std::string csv = "rank,perplexity,text\n";
  for (size_t i = 0; i < ranking.size(); ++i) {
    absl::StrAppend(&csv, i + 1, ",", Number(ranking[i].perplexity), ",",
                    CsvField(ranking[i].text), "\n");
  }
  return csv;
}

nlohmann::json RankingJson(std::span<const ScoredAnnotation> ranking) {
  nlohmann::json rows = nlohmann::json::array();
  for (size_t i = 0; i < ranking.size(); ++i) {
    rows.push_back({{"rank", i + 1},
                    {"perplexity", ranking[i].perplexity},
                    {"text", ranking[i].text}});
  }
  return rows;
}

std::string HeatmapCsv(const Heatmap& heatmap) {
  std::string csv = "keyword,occurrences,bucket,lower,upper,fraction\n";
  for (const HeatmapRow& row : heatmap.rows) {
    for (size_t b = 0; b < row.fractions.size(); ++b) {
      absl::StrAppend(&csv, CsvField(row.keyword), ",", row.occurrences, ",",
                      b, ",", Number(heatmap.edges[b]), ",",
                      Number(heatmap.edges[b + 1]), ",",
                      Number(row.fractions[b]), "\n");
    }
  }
  return csv;
}

nlohmann::json HeatmapJson(const Heatmap& heatmap) {
  nlohmann::json rows = nlohmann::json::array();
  for (const HeatmapRow& row : heatmap.rows) {
    rows.push_back({{"keyword", row.keyword},
                    {"occurrences", row.occurrences},
                    {"absent", row.empty()},
                    {"fractions", row.fractions}});
  }
  return {{"edges", heatmap.edges}, {"rows", rows}};
}

std::string TimelineCsv(std::span<const TimelinePoint> points) {
  std::string csv = "events,annotated_motions,mean_mppl,std_mppl\n";
  for (const TimelinePoint& p : points) {
    absl::StrAppend(&csv, p.events, ",", p.annotated_motions, ",",
                    Number(p.mean_mppl), ",", Number(p.std_mppl), "\n");
  }
  return csv;
}

nlohmann::json TimelineJson(std::span<const TimelinePoint> points) {
  nlohmann::json rows = nlohmann::json::array();
  for (const TimelinePoint& p : points) {
    rows.push_back({{"events", p.events},
                    {"annotated_motions", p.annotated_motions},
                    {"mean_mppl", p.mean_mppl},
                    {"std_mppl", p.std_mppl}});
  }
  return rows;
}

std::string EventLogCsv(std::span<const AnnotationEvent> events) {
  std::string csv = "sequence,timestamp,entry_id,strategy,text\n";
  for (const AnnotationEvent& e : events) {
    absl::StrAppend(
        &csv, e.sequence, ",",
        absl::FormatTime("%Y-%m-%dT%H:%M:%SZ", e.timestamp, absl::UTCTimeZone()),
        ",", e.entry.value(), ",",
        e.strategy ? std::string(selection::StrategyName(*e.strategy)) : "",
        ",",
        CsvField(e.text), "\n");
  }
  return csv;
}

}  // namespace analysis
}  // namespace annot
