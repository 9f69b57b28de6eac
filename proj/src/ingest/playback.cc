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

#include "annot/ingest/playback.h"

#include <algorithm>
#include <cmath>

namespace annot {
namespace ingest {
namespace {

size_t NearestFrame(const std::vector<MotionFrame>& frames, double t) {
  auto it = std::lower_bound(
      frames.begin(), frames.end(), t,
      [](const MotionFrame& f, double value) { return f.timestamp < value; });
  if (it == frames.end()) return frames.size() - 1;
  const size_t hi = it - frames.begin();
  if (hi == 0) return 0;
  // Ties go to the earlier frame.
  return t - frames[hi - 1].timestamp <= it->timestamp - t ? hi - 1 : hi;
}

}  // namespace

std::vector<MotionFrame> PlaybackFrames(const MotionDocument& motion,
                                        double target_fps) {
  const auto& src = motion.frames;
  std::vector<size_t> picks;
  const double start = src.empty() ? 0.0 : src.front().timestamp;
  const double duration = motion.duration();
  const double source_fps =
      duration > 0.0 ? (src.size() - 1) / duration : 0.0;

  if (src.size() <= 1 || !(target_fps > 0.0) || target_fps >= source_fps) {
    for (size_t i = 0; i < src.size(); ++i) picks.push_back(i);
  } else {
    const auto steps = static_cast<size_t>(std::floor(duration * target_fps + 1e-9));
    for (size_t k = 0; k <= steps; ++k) {
      const size_t i = NearestFrame(src, start + k / target_fps);
      if (picks.empty() || picks.back() != i) picks.push_back(i);
    }
    if (picks.back() != src.size() - 1) picks.push_back(src.size() - 1);
  }

  std::vector<MotionFrame> out;
  out.reserve(picks.size());
  for (size_t i : picks) {
    out.push_back(src[i]);
    out.back().timestamp -= start;
  }
  return out;
}

}  // namespace ingest
}  // namespace annot
