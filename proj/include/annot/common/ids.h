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

#ifndef ANNOT_COMMON_IDS_H_
#define ANNOT_COMMON_IDS_H_

#include <compare>
#include <cstdint>
#include <string>
#include <utility>

namespace annot {

// Thin wrapper that keeps identifiers of different entities apart at compile
// time. `Tag` is never defined.
template <typename Tag, typename Rep>
class StrongId {
 public:
  using rep_type = Rep;

  StrongId() = default;
  explicit StrongId(Rep value) : value_(std::move(value)) {}

  const Rep& value() const { return value_; }

  friend auto operator<=>(const StrongId&, const StrongId&) = default;
  friend bool operator==(const StrongId&, const StrongId&) = default;

  template <typename H>
  friend H AbslHashValue(H h, const StrongId& id) {
    return H::combine(std::move(h), id.value_);
  }

 private:
  Rep value_{};
};

using EntryId = StrongId<struct EntryIdTag, int64_t>;
using AnnotationId = StrongId<struct AnnotationIdTag, int64_t>;
using AnnotatorId = StrongId<struct AnnotatorIdTag, std::string>;

}  // namespace annot

#endif  // ANNOT_COMMON_IDS_H_
