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

#ifndef ANNOT_STORE_STORE_H_
#define ANNOT_STORE_STORE_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/base/thread_annotations.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/synchronization/mutex.h"
#include "absl/time/time.h"
#include "annot/selection/distribution.h"
#include "annot/selection/recompute.h"
#include "annot/store/corpus_stats.h"
#include "annot/store/entities.h"

namespace annot {
namespace store {

struct NewMotion {
  // Zero asks the store to assign the next free id.
  EntryId id;
  std::optional<std::string> raw_c3d;
  ingest::MotionDocument motion;
  std::string source_institution;
  std::string source_database_id;
};

// In-memory store guarded by one mutex. Every mutation is all-or-nothing.
// Save/Load persist to a directory:
//   store.json                      entities other than blobs
//   blobs/<id>_raw.c3d, <id>_mmm.xml
//   releases/dataset-<date>.zip
class Store {
 public:
  Store() = default;
  explicit Store(StoreState state) : state_(std::move(state)) {}

  absl::StatusOr<EntryId> AddMotion(NewMotion motion);

  // Creates the profile on first sight; later calls may rename it.
  void UpsertAnnotator(const AnnotatorId& id, std::string_view display_name);

  // The text is stored as given; validation is the caller's job.
  absl::StatusOr<AnnotationRecord> AddAnnotation(EntryId entry,
                                                 const AnnotatorId& annotator,
                                                 std::string_view text,
                                                 absl::Time now);

  absl::StatusOr<ProblemReport> ReportProblem(EntryId entry,
                                              const AnnotatorId& annotator,
                                              std::string_view note,
                                              absl::Time now);
  absl::Status ClearProblem(EntryId entry);

  void SetCachedPerplexities(const std::map<AnnotationId, double>& values);

  // Exports the current state and keeps the archive under `release_date`.
  absl::StatusOr<std::string> PublishRelease(std::string_view release_date);
  std::optional<std::string> Release(std::string_view release_date) const;
  std::vector<std::string> ReleaseDates() const;

  std::optional<MotionEntry> Motion(EntryId id) const;
  std::optional<AnnotatorProfile> Annotator(const AnnotatorId& id) const;
  std::vector<AnnotatorProfile> Annotators() const;
  std::vector<EntryId> MotionIds() const;
  size_t MotionCount() const;

  // Inputs for the selection module.
  selection::CountMap AnnotationCounts() const;
  selection::EntrySet FlaggedEntries() const;
  selection::AnnotationsByMotion AnnotationTexts() const;

  CorpusCounts Counts() const;
  StoreState Snapshot() const;

  absl::Status Save(const std::filesystem::path& dir) const;
  static absl::StatusOr<StoreState> Load(const std::filesystem::path& dir);

 private:
  mutable absl::Mutex mu_;
  StoreState state_ ABSL_GUARDED_BY(mu_);
};

}  // namespace store
}  // namespace annot

#endif  // ANNOT_STORE_STORE_H_
