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

#include "annot/api/platform.h"

#include <random>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "annot/ingest/playback.h"
#include "annot/selection/recompute.h"

namespace annot {
namespace api {
namespace {

uint64_t RandomSeed() {
  std::random_device device;
  return (static_cast<uint64_t>(device()) << 32) ^ device();
}

}  // namespace

Platform::Platform(PlatformConfig config, store::Store& store,
                   validate::Dictionary dictionary, Clock clock)
    : config_(std::move(config)),
      store_(store),
      dictionary_(std::move(dictionary)),
      clock_(std::move(clock)),
      selector_({config_.strategy, config_.seed}),
      token_rng_(RandomSeed()) {}

absl::StatusOr<std::unique_ptr<Platform>> Platform::Create(PlatformConfig config,
                                                           store::Store& store,
                                                           Clock clock) {
  if (config.dictionary_path.empty()) {
    return absl::InvalidArgumentError("config needs a dictionary_path");
  }
  auto dictionary = validate::Dictionary::Load(config.dictionary_path);
  if (!dictionary.ok()) return dictionary.status();
  return std::make_unique<Platform>(std::move(config), store, *std::move(dictionary),
                                    std::move(clock));
}

absl::StatusOr<Session> Platform::CreateSession(const AnnotatorId& annotator,
                                                std::string_view display_name) {
  if (annotator.value().empty() || annotator.value().size() > 128) {
    return absl::InvalidArgumentError("annotator_id must have 1 to 128 characters");
  }
  store_.UpsertAnnotator(annotator, display_name.empty() ? annotator.value()
                                                         : display_name);
  absl::MutexLock lock(&mu_);
  Session session;
  session.token = absl::StrFormat("%016x%016x", token_rng_.Next(), token_rng_.Next());
  session.annotator = annotator;
  session.expires_at = clock_() + config_.session_ttl;
  sessions_[session.token] = {session, {}};
  return session;
}

absl::StatusOr<Platform::SessionState*> Platform::FindSession(std::string_view token) {
  auto it = sessions_.find(token);
  if (it == sessions_.end()) return absl::UnauthenticatedError("unknown session");
  if (clock_() >= it->second.session.expires_at) {
    sessions_.erase(it);
    return absl::UnauthenticatedError("session expired");
  }
  return &it->second;
}

absl::StatusOr<AnnotatorId> Platform::Authenticate(std::string_view token) {
  absl::MutexLock lock(&mu_);
  auto session = FindSession(token);
  if (!session.ok()) return session.status();
  return (*session)->session.annotator;
}

absl::StatusOr<NextMotion> Platform::Next(std::string_view token) {
  AnnotatorId annotator;
  selection::EntrySet skips;
  {
    absl::MutexLock lock(&mu_);
    auto session = FindSession(token);
    if (!session.ok()) return session.status();
    annotator = (*session)->session.annotator;
    skips = (*session)->skips;
  }
  const selection::CountMap counts = store_.AnnotationCounts();
  if (counts.empty()) return absl::UnavailableError("the store holds no motions");
  auto choice = selector_.Next(counts, skips, store_.FlaggedEntries());
  if (!choice.ok()) {
    if (selection::IsNoCandidate(choice.status())) {
      return absl::UnavailableError("every motion is flagged as broken");
    }
    return choice.status();
  }
  auto entry = store_.Motion(choice->entry);
  if (!entry) return absl::InternalError("selected motion vanished");

  NextMotion out;
  out.entry = choice->entry;
  out.strategy = choice->strategy;
  out.annotation_count = entry->annotation_count();
  out.duration_secs = entry->duration();
  out.source_frames = entry->motion ? entry->motion->frames.size() : 0;
  const auto profile = store_.Annotator(annotator);
  out.annotator_count = profile ? profile->annotation_count : 0;
  out.level = engage::LevelFor(out.annotator_count, config_.ladder);
  return out;
}

absl::StatusOr<SubmitResult> Platform::Submit(std::string_view token, EntryId entry,
                                              std::string_view text) {
  auto annotator = Authenticate(token);
  if (!annotator.ok()) return annotator.status();
  if (!store_.Motion(entry)) {
    return absl::NotFoundError(absl::StrCat("unknown entry ", entry.value()));
  }
  SubmitResult result;
  validate::Verdict verdict =
      validate::ValidateAnnotation(text, config_.validation, dictionary_);
  if (!verdict.accepted) {
    result.rejection = std::move(verdict);
    return result;
  }
  auto record = store_.AddAnnotation(entry, *annotator, text, clock_());
  if (!record.ok()) return record.status();
  {
    absl::MutexLock lock(&mu_);
    selector_.MarkAnnotated(entry);
    if (recomputing_) annotated_during_recompute_.push_back(entry);
  }
  result.record = *std::move(record);
  result.entry_annotation_count = store_.Motion(entry)->annotation_count();
  result.annotator_count = store_.Annotator(*annotator)->annotation_count;
  result.level = engage::LevelFor(result.annotator_count, config_.ladder);
  return result;
}

absl::Status Platform::Skip(std::string_view token, EntryId entry) {
  if (!store_.Motion(entry)) {
    // Authentication still comes first in the error order.
    if (auto a = Authenticate(token); !a.ok()) return a.status();
    return absl::NotFoundError(absl::StrCat("unknown entry ", entry.value()));
  }
  absl::MutexLock lock(&mu_);
  auto session = FindSession(token);
  if (!session.ok()) return session.status();
  (*session)->skips.insert(entry);
  return absl::OkStatus();
}

absl::StatusOr<store::ProblemReport> Platform::Report(std::string_view token,
                                                      EntryId entry,
                                                      std::string_view note) {
  auto annotator = Authenticate(token);
  if (!annotator.ok()) return annotator.status();
  return store_.ReportProblem(entry, *annotator, note, clock_());
}

absl::StatusOr<PlaybackData> Platform::Frames(EntryId entry, double fps) const {
  if (!(fps > 0.0) || !std::isfinite(fps)) {
    return absl::InvalidArgumentError("fps must be positive");
  }
  auto motion = store_.Motion(entry);
  if (!motion || !motion->motion) {
    return absl::NotFoundError(absl::StrCat("unknown entry ", entry.value()));
  }
  PlaybackData out;
  out.entry = entry;
  out.fps = fps;
  out.dof_names = motion->motion->dof_names;
  out.frames = ingest::PlaybackFrames(*motion->motion, fps);
  return out;
}

std::pair<std::vector<engage::LeaderboardRow>, size_t> Platform::Leaderboard(
    size_t limit, size_t offset) const {
  std::vector<engage::LeaderboardInput> inputs;
  for (const auto& p : store_.Annotators()) {
    inputs.push_back({p.id, p.display_name, p.annotation_count, p.first_annotation_at});
  }
  auto rows = engage::Leaderboard(inputs, config_.ladder);
  const size_t total = rows.size();
  if (offset >= rows.size()) return {{}, total};
  rows.erase(rows.begin(), rows.begin() + offset);
  if (rows.size() > limit) rows.resize(limit);
  return {std::move(rows), total};
}

store::CorpusCounts Platform::Stats() const { return store_.Counts(); }

absl::StatusOr<RecomputeSummary> Platform::Recompute() {
  absl::MutexLock recompute_lock(&recompute_mu_);
  {
    absl::MutexLock lock(&mu_);
    recomputing_ = true;
    annotated_during_recompute_.clear();
  }
  auto finish = [this] {
    absl::MutexLock lock(&mu_);
    recomputing_ = false;
    annotated_during_recompute_.clear();
  };
  const selection::AnnotationsByMotion texts = store_.AnnotationTexts();
  if (texts.empty()) {
    finish();
    return absl::FailedPreconditionError("no annotations to learn from yet");
  }
  auto result = selection::Recompute(texts, config_.language_model, clock_());
  if (!result.ok()) {
    finish();
    return result.status();
  }
  store_.SetCachedPerplexities(result->annotation_perplexities);

  RecomputeSummary summary;
  {
    absl::MutexLock lock(&mu_);
    selector_.Publish(result->snapshot);
    for (EntryId e : annotated_during_recompute_) selector_.MarkAnnotated(e);
    recomputing_ = false;
    annotated_during_recompute_.clear();
  }
  const selection::SelectionSnapshot published = selector_.Current();
  summary.generation = published.generation;
  summary.created_at = published.created_at;
  summary.scored_motions = result->mppls.size();
  summary.annotations = result->annotation_perplexities.size();
  return summary;
}

selection::SelectionSnapshot Platform::Selection() const { return selector_.Current(); }

selection::StrategyMode Platform::strategy_mode() const { return selector_.mode(); }

absl::Status Platform::ClearProblem(EntryId entry) { return store_.ClearProblem(entry); }

absl::StatusOr<std::string> Platform::PublishRelease(std::string_view date) {
  return store_.PublishRelease(date);
}

std::optional<std::string> Platform::Release(std::string_view date) const {
  return store_.Release(date);
}

std::vector<std::string> Platform::ReleaseDates() const { return store_.ReleaseDates(); }

}  // namespace api
}  // namespace annot
