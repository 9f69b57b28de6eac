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

#ifndef ANNOT_INGEST_METADATA_H_
#define ANNOT_INGEST_METADATA_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "annot/common/ids.h"
#include "json.hpp"

namespace annot {
namespace ingest {

// Per-entry metadata file:
//   {"motion_annotation_tool": {"id": 42, "annotation_ids": [7, 9]},
//    "source": {"institution": "CMU", "id": "02_03"}}
struct MotionMetadata {
  EntryId entry_id;
  std::vector<AnnotationId> annotation_ids;
  std::string source_institution;
  std::string source_database_id;
  // Everything not listed above, kept verbatim and written back out.
  nlohmann::json extra = nlohmann::json::object();

  friend bool operator==(const MotionMetadata&, const MotionMetadata&) = default;
};

absl::StatusOr<MotionMetadata> ParseMetadata(std::string_view text);
absl::StatusOr<MotionMetadata> MetadataFromJson(const nlohmann::json& json);
nlohmann::json MetadataToJson(const MotionMetadata& metadata);
std::string SerializeMetadata(const MotionMetadata& metadata);

}  // namespace ingest
}  // namespace annot

#endif  // ANNOT_INGEST_METADATA_H_
