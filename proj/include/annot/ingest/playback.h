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

#ifndef ANNOT_INGEST_PLAYBACK_H_
#define ANNOT_INGEST_PLAYBACK_H_

#include <vector>

#include "annot/ingest/motion_document.h"

namespace annot {
namespace ingest {

// Picks, for every multiple of 1/target_fps inside the motion, the source
// frame nearest in time. The first and last source frames are always kept and
// timestamps are shifted so the first frame is at 0. A target at or above the
// source rate returns every frame. target_fps must be positive.
std::vector<MotionFrame> PlaybackFrames(const MotionDocument& motion,
                                        double target_fps);

}  // namespace ingest
}  // namespace annot

#endif  // ANNOT_INGEST_PLAYBACK_H_
