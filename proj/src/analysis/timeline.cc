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

#include "annot/analysis/timeline.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "annot/lm/sentence.h"
#include "annot/selection/recompute.h"

namespace annot {
namespace analysis {
namespace {

absl::StatusOr<TimelinePoint> Summarize(
    const selection::AnnotationsByMotion& annotations, int64_t events,
    const lm::TrainingOptions& options) {
  TimelinePoint point;
  point.events = events;
  if (annotations.empty()) return point;
  auto result = selection::Recompute(annotations, options, absl::UnixEpoch());
  if (!result.ok()) return result.status();
  const double n = static_cast<double>(result->mppls.size());
  double sum = 0;
  for (const auto& [entry, mppl] : result->mppls) sum += mppl;
  const double mean = sum / n;
  double squares = 0;
  for (const auto& [entry, mppl] : result->mppls) {
    squares += (mppl - mean) * (mppl - mean);
  }
  point.annotated_motions = static_cast<int64_t>(result->mppls.size());
  point.mean_mppl = mean;
  point.std_mppl = std::sqrt(squares / n);
  return point;
}

}  // namespace

std::vector<AnnotationEvent> EventsFromStore(const store::StoreState& state) {
  std::vector<const store::AnnotationRecord*> records;
  for (const auto& [id, record] : state.annotations) records.push_back(&record);
  std::sort(records.begin(), records.end(),
            [](const store::AnnotationRecord* a,
               const store::AnnotationRecord* b) {
              if (a->created_at != b->created_at) {
                return a->created_at < b->created_at;
              }
              return a->id < b->id;
            });
  std::vector<AnnotationEvent> events;
  events.reserve(records.size());
  for (const store::AnnotationRecord* r : records) {
    events.push_back({static_cast<int64_t>(events.size()) + 1, r->created_at,
                      r->entry, r->text, std::nullopt});
  }
  return events;
}

absl::StatusOr<std::vector<TimelinePoint>> PerplexityTimeline(
    std::span<const AnnotationEvent> events, int64_t cadence,
    const lm::TrainingOptions& options) {
  if (cadence < 1) {
    return absl::InvalidArgumentError("recompute cadence must be positive");
  }
  selection::AnnotationsByMotion annotations;
  std::vector<TimelinePoint> points;
  for (size_t i = 0; i < events.size(); ++i) {
    const AnnotationEvent& event = events[i];
    if (i > 0 && event.sequence <= events[i - 1].sequence) {
      return absl::InvalidArgumentError(absl::StrCat(
          "event sequence numbers must increase; ", event.sequence,
          " follows ", events[i - 1].sequence));
    }
    if (lm::Normalize(event.text).ok()) {
      annotations[event.entry].push_back(
          {AnnotationId(event.sequence), event.text});
    }
    const int64_t replayed = static_cast<int64_t>(i) + 1;
    if (replayed % cadence == 0 || i + 1 == events.size()) {
      auto point = Summarize(annotations, replayed, options);
      if (!point.ok()) return point.status();
      points.push_back(*point);
    }
  }
  return points;
}

absl::StatusOr<double> RelativeStdSlope(std::span<const TimelinePoint> points,
                                        int64_t from, int64_t to) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const TimelinePoint& p : points) {
    if (p.events < from || p.events > to) continue;
    xs.push_back(static_cast<double>(p.events));
    ys.push_back(p.std_mppl);
  }
  if (xs.size() < 2) {
    return absl::FailedPreconditionError(
        "trend needs at least two timeline points in range");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0;
  double my = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0;
  double sxx = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (my == 0) return 0.0;
  return sxy / sxx * 1000.0 / my;
}

absl::StatusOr<double> StdReductionSince(std::span<const TimelinePoint> points,
                                         int64_t at) {
  auto it = std::find_if(points.begin(), points.end(),
                         [at](const TimelinePoint& p) { return p.events == at; });
  if (it == points.end()) {
    return absl::NotFoundError(absl::StrCat("no timeline point at event ", at));
  }
  if (it->std_mppl == 0) {
    return absl::FailedPreconditionError("zero spread at the reference point");
  }
  return 1.0 - points.back().std_mppl / it->std_mppl;
}

}  // namespace analysis
}  // namespace annot
