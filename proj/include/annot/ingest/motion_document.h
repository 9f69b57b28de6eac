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

#ifndef ANNOT_INGEST_MOTION_DOCUMENT_H_
#define ANNOT_INGEST_MOTION_DOCUMENT_H_

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace annot {
namespace ingest {

// Names of the six root pose degrees of freedom, always the first entries of
// MotionDocument::dof_names.
inline constexpr std::array<std::string_view, 6> kRootDofNames = {
    "RootPositionX", "RootPositionY", "RootPositionZ",
    "RootRotationX", "RootRotationY", "RootRotationZ"};

// The 44 body joints of the reference model, in canonical order.
const std::vector<std::string>& ReferenceBodyJoints();

struct MotionFrame {
  double timestamp = 0.0;                 // seconds
  std::array<double, 3> root_position{};  // meters
  std::array<double, 3> root_rotation{};  // radians
  std::vector<double> joint_values;       // radians, one per body joint

  friend bool operator==(const MotionFrame&, const MotionFrame&) = default;
};

// Joint-angle trajectory of the reference model.
struct MotionDocument {
  std::string motion_name;
  std::string model_name;
  // Root names followed by body joint names.
  std::vector<std::string> dof_names;
  std::vector<MotionFrame> frames;

  size_t body_dof_count() const {
    return dof_names.size() < 6 ? 0 : dof_names.size() - 6;
  }
  double duration() const {
    return frames.empty() ? 0.0
                          : frames.back().timestamp - frames.front().timestamp;
  }

  friend bool operator==(const MotionDocument&, const MotionDocument&) = default;
};

// Parses the XML subset documented in docs/FORMATS.md. Unknown elements and
// attributes are ignored. Schema violations fail with InvalidArgument and name
// the offending element path; an empty or non-increasing timeline fails with
// FailedPrecondition.
absl::StatusOr<MotionDocument> ParseMotionDocument(std::string_view xml);

// Checks the frame-shape and timeline invariants.
absl::Status ValidateMotionDocument(const MotionDocument& document);

// Inverse of ParseMotionDocument. Numbers use shortest round-trip form.
std::string SerializeMotionDocument(const MotionDocument& document);

}  // namespace ingest
}  // namespace annot

#endif  // ANNOT_INGEST_MOTION_DOCUMENT_H_
