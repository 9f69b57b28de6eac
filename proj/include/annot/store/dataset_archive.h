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

#ifndef ANNOT_STORE_DATASET_ARCHIVE_H_
#define ANNOT_STORE_DATASET_ARCHIVE_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "annot/store/entities.h"

namespace annot {
namespace store {

inline constexpr int kDatasetFormatVersion = 1;
inline constexpr char kManifestName[] = "manifest.json";

// Member path of one per-entry file, e.g. MemberPath(EntryId(7), "mmm.xml")
// is "7/7_mmm.xml".
std::string MemberPath(EntryId id, std::string_view suffix);

// True for YYYY-MM-DD.
bool IsReleaseDate(std::string_view date);

// Builds the release archive: manifest.json at the root and, per entry,
// raw.c3d (when present), mmm.xml, annotations.json (array of raw texts) and
// meta.json. Fails on an empty store or a malformed date.
absl::StatusOr<std::string> ExportDataset(const StoreState& state,
                                          std::string_view release_date);

struct ImportedDataset {
  std::string release_date;
  // Entries and annotations only. Annotator ids, timestamps and problem flags
  // are not part of the published format.
  StoreState state;
  std::vector<std::string> warnings;
};

absl::StatusOr<ImportedDataset> ImportDataset(std::string_view archive);

}  // namespace store
}  // namespace annot

#endif  // ANNOT_STORE_DATASET_ARCHIVE_H_
