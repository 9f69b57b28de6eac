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

#ifndef ANNOT_STORE_ENTITIES_H_
#define ANNOT_STORE_ENTITIES_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "absl/time/time.h"
#include "annot/common/ids.h"
#include "annot/ingest/metadata.h"
#include "annot/ingest/motion_document.h"

namespace annot {
namespace store {

struct MotionEntry {
  EntryId id;
  // Raw capture file; absent for synthetic entries.
  std::optional<std::string> raw_c3d;
  std::shared_ptr<const ingest::MotionDocument> motion;
  // metadata.entry_id == id and metadata.annotation_ids lists this entry's
  // annotations in submission order.
  ingest::MotionMetadata metadata;
  bool problem_flag = false;

  const std::vector<AnnotationId>& annotation_ids() const {
    return metadata.annotation_ids;
  }
  int64_t annotation_count() const {
    return static_cast<int64_t>(metadata.annotation_ids.size());
  }
  double duration() const { return motion ? motion->duration() : 0.0; }
};

struct AnnotationRecord {
  AnnotationId id;
  EntryId entry;
  AnnotatorId annotator;
  std::string text;
  absl::Time created_at = absl::UnixEpoch();
  std::optional<double> cached_perplexity;

  friend bool operator==(const AnnotationRecord&, const AnnotationRecord&) = default;
};

struct AnnotatorProfile {
  AnnotatorId id;
  std::string display_name;
  int64_t annotation_count = 0;
  std::optional<absl::Time> first_annotation_at;

  friend bool operator==(const AnnotatorProfile&, const AnnotatorProfile&) = default;
};

struct ProblemReport {
  int64_t id = 0;
  EntryId entry;
  AnnotatorId annotator;
  std::string note;
  absl::Time created_at = absl::UnixEpoch();
};

// Everything the store holds. Copies are cheap enough for export snapshots;
// motion documents are shared.
struct StoreState {
  std::map<EntryId, MotionEntry> motions;
  std::map<AnnotationId, AnnotationRecord> annotations;
  std::map<AnnotatorId, AnnotatorProfile> annotators;
  std::vector<ProblemReport> problem_reports;
  // Published archives by release date (YYYY-MM-DD).
  std::map<std::string, std::string> releases;
  int64_t next_entry_id = 1;
  int64_t next_annotation_id = 1;
  int64_t next_report_id = 1;
};

}  // namespace store
}  // namespace annot

#endif  // ANNOT_STORE_ENTITIES_H_
