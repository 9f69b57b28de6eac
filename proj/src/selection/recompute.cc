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

#include "annot/selection/recompute.h"

#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace annot {
namespace selection {

absl::StatusOr<RecomputeResult> Recompute(
    const AnnotationsByMotion& annotations, const lm::TrainingOptions& options,
    absl::Time now) {
  struct Scorable {
    EntryId entry;
    AnnotationId id;
    size_t sentence;
  };
  std::vector<lm::SentenceTokens> corpus;
  std::vector<Scorable> scorable;
  for (const auto& [entry, texts] : annotations) {
    bool any = false;
    for (const AnnotationText& annotation : texts) {
      auto tokens = lm::Normalize(annotation.text);
      if (!tokens.ok()) continue;
      scorable.push_back({entry, annotation.id, corpus.size()});
      corpus.push_back(*std::move(tokens));
      any = true;
    }
    if (!any) {
      return absl::FailedPreconditionError(absl::StrCat(
          "motion ", entry.value(), " has no scorable annotation"));
    }
  }

  auto model = lm::NGramModel::Train(corpus, options);
  if (!model.ok()) return model.status();

  RecomputeResult result;
  result.model = std::make_shared<const lm::NGramModel>(*std::move(model));
  std::map<EntryId, std::vector<lm::PerplexityScore>> by_motion;
  for (const Scorable& s : scorable) {
    const lm::PerplexityScore ppl =
        lm::Perplexity(*result.model, corpus[s.sentence]);
    result.annotation_perplexities[s.id] = ppl.value();
    by_motion[s.entry].push_back(ppl);
  }
  for (const auto& [entry, scores] : by_motion) {
    auto mppl = MeanMotionPerplexity(scores);
    if (!mppl.ok()) return mppl.status();
    result.mppls[entry] = *mppl;
  }

  auto snapshot = BuildDistribution(result.mppls);
  if (!snapshot.ok()) return snapshot.status();
  result.snapshot = *std::move(snapshot);
  result.snapshot.created_at = now;
  result.snapshot.strategy = Strategy::kPerplexityProportional;
  return result;
}

}  // namespace selection
}  // namespace annot
