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

#ifndef ANNOT_INGEST_C3D_H_
#define ANNOT_INGEST_C3D_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"

namespace annot {
namespace ingest {

// One marker sample. Coordinates are in millimeters.
struct MarkerPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  // Residual in millimeters; meaningless when !valid.
  double residual = 0.0;
  uint8_t camera_mask = 0;
  bool valid = true;

  friend bool operator==(const MarkerPoint&, const MarkerPoint&) = default;
};

// 3D point content of a C3D file. Analog channels and events are skipped.
struct C3dDocument {
  std::vector<std::string> marker_labels;
  double sample_rate = 0.0;
  // POINT:SCALE. Negative means floating-point storage; its magnitude scales
  // residuals (and, for integer storage, coordinates).
  double scale = -1.0;
  int first_frame = 1;
  // frames[f][m] is marker m in frame f.
  std::vector<std::vector<MarkerPoint>> frames;

  friend bool operator==(const C3dDocument&, const C3dDocument&) = default;
};

// Decodes header, parameter section and 3D point data. Only Intel
// (little-endian) files are supported; DEC and MIPS files fail with
// Unimplemented. Structural problems fail with InvalidArgument.
absl::StatusOr<C3dDocument> ParseC3d(std::span<const uint8_t> bytes);
absl::StatusOr<C3dDocument> ParseC3d(const std::string& bytes);

// Writes an Intel-format file with a POINT and an empty ANALOG group.
// Integer storage rounds coordinates to the nearest multiple of `scale`.
absl::StatusOr<std::string> SerializeC3d(const C3dDocument& document);

}  // namespace ingest
}  // namespace annot

#endif  // ANNOT_INGEST_C3D_H_
