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

#ifndef ANNOT_STORE_ZIP_H_
#define ANNOT_STORE_ZIP_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace annot {
namespace store {

struct ZipMember {
  std::string name;
  std::string data;

  friend bool operator==(const ZipMember&, const ZipMember&) = default;
};

// Writes a deflate-compressed archive. Every member carries the same fixed
// modification time (1980-01-01 00:00), so equal input gives equal bytes.
absl::StatusOr<std::string> WriteZip(std::span<const ZipMember> members);

// Reads stored or deflated members in central-directory order. A member that
// fails to inflate or whose CRC-32 does not match is reported by name.
absl::StatusOr<std::vector<ZipMember>> ReadZip(std::string_view archive);

}  // namespace store
}  // namespace annot

#endif  // ANNOT_STORE_ZIP_H_
