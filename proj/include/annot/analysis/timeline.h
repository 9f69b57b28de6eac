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

#ifndef ANNOT_ANALYSIS_TIMELINE_H_
#define ANNOT_ANALYSIS_TIMELINE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/time/time.h"
#include "annot/common/ids.h"
#include "annot/lm/ngram_model.h"
#include "annot/selection/distribution.h"
#include "annot/store/entities.h"

namespace annot {
namespace analysis {

struct AnnotationEvent {
  int64_t sequence = 0;
  absl::Time timestamp;
  EntryId entry;
  std::string text;
  // Unknown for logs rebuilt from a store.
  std::optional<selection::Strategy> strategy;

  friend bool operator==(const AnnotationEvent&,
                         const AnnotationEvent&) = default;
};

// Events of a store in submission order (creation time, then id).
std::vector<AnnotationEvent> EventsFromStore(const store::StoreState& state);

struct TimelinePoint {
  // Events replayed so far.
  int64_t events = 0;
  int64_t annotated_motions = 0;
  double mean_mppl = 0;
  // Population standard deviation.
  double std_mppl = 0;

  friend bool operator==(const TimelinePoint&,
                         const TimelinePoint&) = default;
};

// Replays `events`. After every `cadence` events, and after the last one,
// retrains the language model on everything seen so far and summarizes the
// mean perplexity of every annotated motion. Texts without words are
// ignored. Sequence numbers must be strictly increasing.
absl::StatusOr<std::vector<TimelinePoint>> PerplexityTimeline(
    std::span<const AnnotationEvent> events, int64_t cadence,
    const lm::TrainingOptions& options = {});

// Least-squares slope of std_mppl against event count over the points with
// events in [from, to], per 1000 events and relative to the mean std over
// the same points. Needs two points.
absl::StatusOr<double> RelativeStdSlope(std::span<const TimelinePoint> points,
                                        int64_t from, int64_t to);

// 1 - std(last point) / std(point at `at`).
absl::StatusOr<double> StdReductionSince(std::span<const TimelinePoint> points,
                                         int64_t at);

}  // namespace analysis
}  // namespace annot

#endif  // ANNOT_ANALYSIS_TIMELINE_H_
