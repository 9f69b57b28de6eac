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

#ifndef ANNOT_ANALYSIS_REPORT_H_
#define ANNOT_ANALYSIS_REPORT_H_

#include <span>
#include <string>
#include <string_view>

#include "annot/analysis/heatmap.h"
#include "annot/analysis/ranking.h"
#include "annot/analysis/timeline.h"
#include "json.hpp"

namespace annot {
namespace analysis {

// RFC 4180 quoting: fields with commas, quotes or line breaks are quoted.
std::string CsvField(std::string_view field);

// rank,perplexity,text
std::string RankingCsv(std::span<const ScoredAnnotation> ranking);
nlohmann::json RankingJson(std::span<const ScoredAnnotation> ranking);

// keyword,occurrences,bucket,lower,upper,fraction; one line per cell.
// Keywords that never occur keep their all-zero cells.
std::string HeatmapCsv(const Heatmap& heatmap);
nlohmann::json HeatmapJson(const Heatmap& heatmap);

// events,annotated_motions,mean_mppl,std_mppl
std::string TimelineCsv(std::span<const TimelinePoint> points);
nlohmann::json TimelineJson(std::span<const TimelinePoint> points);

// sequence,timestamp,entry_id,strategy,text
std::string EventLogCsv(std::span<const AnnotationEvent> events);

}  // namespace analysis
}  // namespace annot

#endif  // ANNOT_ANALYSIS_REPORT_H_
