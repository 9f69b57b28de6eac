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

#include "annot/engage/levels.h"

#include <algorithm>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace annot {
namespace engage {

absl::StatusOr<LevelLadder> LevelLadder::Create(std::vector<Level> levels) {
  if (levels.empty() || levels.front().threshold != 0) {
    return absl::InvalidArgumentError("the first level must start at 0");
  }
  for (size_t i = 1; i < levels.size(); ++i) {
    if (levels[i].threshold <= levels[i - 1].threshold) {
      return absl::InvalidArgumentError(absl::StrCat(
          "level thresholds must increase strictly (", levels[i].title, ")"));
    }
  }
  return LevelLadder(std::move(levels));
}

const LevelLadder& LevelLadder::Default() {
  static const LevelLadder* ladder = new LevelLadder({{0, "Novice"},
                                                      {10, "Research Assistant"},
                                                      {30, "Junior Scientist"},
                                                      {75, "Senior Scientist"},
                                                      {150, "Principal Scientist"},
                                                      {300, "Distinguished Scientist"}});
  return *ladder;
}

LevelStatus LevelFor(int64_t count, const LevelLadder& ladder) {
  const auto& levels = ladder.levels();
  count = std::max<int64_t>(count, 0);
  auto next = std::upper_bound(
      levels.begin(), levels.end(), count,
      [](int64_t c, const Level& level) { return c < level.threshold; });
  const auto current = std::prev(next);
  LevelStatus s;
  s.title = current->title;
  s.index = static_cast<int>(current - levels.begin());
  if (next == levels.end()) {
    s.progress = 1.0;
  } else {
    s.next_threshold = next->threshold;
    s.progress = static_cast<double>(count - current->threshold) /
                 static_cast<double>(next->threshold - current->threshold);
  }
  return s;
}

std::vector<LeaderboardRow> Leaderboard(std::span<const LeaderboardInput> profiles,
                                        const LevelLadder& ladder) {
  std::vector<const LeaderboardInput*> order;
  for (const auto& p : profiles) order.push_back(&p);
  std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
    if (a->annotation_count != b->annotation_count) {
      return a->annotation_count > b->annotation_count;
    }
    if (a->first_annotation_at != b->first_annotation_at) {
      if (!a->first_annotation_at) return false;
      if (!b->first_annotation_at) return true;
      return *a->first_annotation_at < *b->first_annotation_at;
    }
    return a->id < b->id;
  });
  std::vector<LeaderboardRow> rows;
  for (const LeaderboardInput* p : order) {
    rows.push_back({static_cast<int>(rows.size()) + 1, p->id, p->display_name,
                    p->annotation_count, LevelFor(p->annotation_count, ladder)});
  }
  return rows;
}

}  // namespace engage
}  // namespace annot
