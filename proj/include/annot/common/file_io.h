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

#ifndef ANNOT_COMMON_FILE_IO_H_
#define ANNOT_COMMON_FILE_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace annot {

absl::StatusOr<std::string> ReadFile(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it over `path`.
absl::Status WriteFileAtomically(const std::filesystem::path& path,
                                 std::string_view contents);

}  // namespace annot

#endif  // ANNOT_COMMON_FILE_IO_H_
