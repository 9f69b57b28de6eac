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

#ifndef ANNOT_API_PLATFORM_H_
#define ANNOT_API_PLATFORM_H_

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/base/thread_annotations.h"
#include "absl/status/statusor.h"
#include "absl/synchronization/mutex.h"
#include "absl/time/time.h"
#include "annot/api/config.h"
#include "annot/common/rng.h"
#include "annot/engage/levels.h"
#include "annot/ingest/motion_document.h"
#include "annot/selection/selector.h"
#include "annot/store/store.h"
#include "annot/validate/validator.h"

namespace annot {
namespace api {

struct Session {
  std::string token;
  AnnotatorId annotator;
  absl::Time expires_at;
};

struct NextMotion {
  EntryId entry;
  selection::Strategy strategy;
  int64_t annotation_count = 0;
  double duration_secs = 0.0;
  size_t source_frames = 0;
  int64_t annotator_count = 0;
  engage::LevelStatus level;
};

struct SubmitResult {
  // Set when the text was rejected; nothing was stored then.
  std::optional<validate::Verdict> rejection;
  std::optional<store::AnnotationRecord> record;
  int64_t entry_annotation_count = 0;
  int64_t annotator_count = 0;
  engage::LevelStatus level;
};

struct RecomputeSummary {
  uint64_t generation = 0;
  absl::Time created_at;
  size_t scored_motions = 0;
  size_t annotations = 0;
};

struct PlaybackData {
  EntryId entry;
  double fps = 0.0;
  std::vector<std::string> dof_names;
  std::vector<ingest::MotionFrame> frames;
};

// The annotation workflow behind the HTTP layer. All methods are thread-safe.
// Mutations either complete or leave counts, exclusions, sessions and
// profiles untouched.
class Platform {
 public:
  using Clock = std::function<absl::Time()>;

  Platform(PlatformConfig config, store::Store& store,
           validate::Dictionary dictionary, Clock clock = &absl::Now);

  // Loads the dictionary named in the config.
  static absl::StatusOr<std::unique_ptr<Platform>> Create(PlatformConfig config,
                                                          store::Store& store,
                                                          Clock clock = &absl::Now);

  absl::StatusOr<Session> CreateSession(const AnnotatorId& annotator,
                                        std::string_view display_name);
  // Unauthenticated for unknown or expired tokens.
  absl::StatusOr<AnnotatorId> Authenticate(std::string_view token);

  // Unavailable when no motion can be served.
  absl::StatusOr<NextMotion> Next(std::string_view token);
  absl::StatusOr<SubmitResult> Submit(std::string_view token, EntryId entry,
                                      std::string_view text);
  absl::Status Skip(std::string_view token, EntryId entry);
  absl::StatusOr<store::ProblemReport> Report(std::string_view token, EntryId entry,
                                              std::string_view note);

  absl::StatusOr<PlaybackData> Frames(EntryId entry, double fps) const;
  // Rows [offset, offset + limit) and the total row count.
  std::pair<std::vector<engage::LeaderboardRow>, size_t> Leaderboard(size_t limit,
                                                                     size_t offset) const;
  store::CorpusCounts Stats() const;

  // Retrains and republishes the selection distribution. Runs one at a time;
  // requests keep being served from the previous snapshot meanwhile.
  absl::StatusOr<RecomputeSummary> Recompute();
  selection::SelectionSnapshot Selection() const;
  selection::StrategyMode strategy_mode() const;

  absl::Status ClearProblem(EntryId entry);
  absl::StatusOr<std::string> PublishRelease(std::string_view date);
  std::optional<std::string> Release(std::string_view date) const;
  std::vector<std::string> ReleaseDates() const;

  const PlatformConfig& config() const { return config_; }
  store::Store& store() { return store_; }

 private:
  struct SessionState {
    Session session;
    selection::EntrySet skips;
  };

  absl::StatusOr<SessionState*> FindSession(std::string_view token)
      ABSL_EXCLUSIVE_LOCKS_REQUIRED(mu_);

  const PlatformConfig config_;
  store::Store& store_;
  const validate::Dictionary dictionary_;
  const Clock clock_;
  selection::Selector selector_;

  mutable absl::Mutex mu_;
  std::map<std::string, SessionState, std::less<>> sessions_ ABSL_GUARDED_BY(mu_);
  Rng token_rng_ ABSL_GUARDED_BY(mu_);
  // Entries annotated while a recompute is running; their exclusion has to
  // survive the publication of the new snapshot.
  bool recomputing_ ABSL_GUARDED_BY(mu_) = false;
  std::vector<EntryId> annotated_during_recompute_ ABSL_GUARDED_BY(mu_);

  absl::Mutex recompute_mu_;
};

}  // namespace api
}  // namespace annot

#endif  // ANNOT_API_PLATFORM_H_
