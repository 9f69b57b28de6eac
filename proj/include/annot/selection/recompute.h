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

#ifndef ANNOT_SELECTION_RECOMPUTE_H_
#define ANNOT_SELECTION_RECOMPUTE_H_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/time/time.h"
#include "annot/common/ids.h"
#include "annot/lm/ngram_model.h"
#include "annot/selection/distribution.h"

namespace annot {
namespace selection {

struct AnnotationText {
  AnnotationId id;
  std::string text;
};

using AnnotationsByMotion = std::map<EntryId, std::vector<AnnotationText>>;

struct RecomputeResult {
  SelectionSnapshot snapshot;
  MpplMap mppls;
  std::map<AnnotationId, double> annotation_perplexities;
  std::shared_ptr<const lm::NGramModel> model;
};

// Retrains the language model on every annotation text, rescores every
// annotation, averages per motion and builds a fresh distribution with an
// empty exclusion set. Texts that normalize to nothing are left out of both
// training and scoring; a motion left without any scorable annotation is a
// FailedPrecondition error.
absl::StatusOr<RecomputeResult> Recompute(
    const AnnotationsByMotion& annotations,
    const lm::TrainingOptions& options = {},
    absl::Time now = absl::Now());

}  // namespace selection
}  // namespace annot

#endif  // ANNOT_SELECTION_RECOMPUTE_H_
