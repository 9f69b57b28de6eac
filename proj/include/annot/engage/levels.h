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

#ifndef ANNOT_ENGAGE_LEVELS_H_
#define ANNOT_ENGAGE_LEVELS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/time/time.h"
#include "annot/common/ids.h"

namespace annot {
namespace engage {

struct Level {
  int64_t threshold = 0;
  std::string title;
};

class LevelLadder {
 public:
  // Thresholds must start at 0 and increase strictly.
  static absl::StatusOr<LevelLadder> Create(std::vector<Level> levels);
  // Novice, Research Assistant (10), Junior Scientist (30), Senior Scientist
  // (75), Principal Scientist (150), Distinguished Scientist (300).
  static const LevelLadder& Default();

  const std::vector<Level>& levels() const { return levels_; }

 private:
  explicit LevelLadder(std::vector<Level> levels) : levels_(std::move(levels)) {}
  std::vector<Level> levels_;
};

struct LevelStatus {
  std::string title;
  int index = 0;
  // (count - threshold) / (next - threshold); 1 at the top level.
  double progress = 0.0;
  std::optional<int64_t> next_threshold;
};

LevelStatus LevelFor(int64_t count, const LevelLadder& ladder);

struct LeaderboardInput {
  AnnotatorId id;
  std::string display_name;
  int64_t annotation_count = 0;
  std::optional<absl::Time> first_annotation_at;
};

struct LeaderboardRow {
  int rank = 0;  // 1-based position
  AnnotatorId id;
  std::string display_name;
  int64_t annotation_count = 0;
  LevelStatus level;
};

// Descending by count; ties go to the earlier first annotation (annotators
// without one last), then to the smaller id.
std::vector<LeaderboardRow> Leaderboard(std::span<const LeaderboardInput> profiles,
                                        const LevelLadder& ladder);

}  // namespace engage
}  // namespace annot

#endif  // ANNOT_ENGAGE_LEVELS_H_
