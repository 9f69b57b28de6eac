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

#ifndef ANNOT_SELECTION_DISTRIBUTION_H_
#define ANNOT_SELECTION_DISTRIBUTION_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "absl/container/flat_hash_set.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/time/time.h"
#include "annot/common/ids.h"
#include "annot/common/rng.h"
#include "annot/lm/language_model.h"

namespace annot {
namespace selection {

enum class Strategy {
  // Uniform over the motions with the fewest annotations. While some motion
  // is still unannotated this is the bootstrap pass.
  kFewestUniform,
  // Probability proportional to mean annotation perplexity.
  kPerplexityProportional,
};

enum class StrategyMode { kAuto, kRandom, kPerplexity };

std::string_view StrategyName(Strategy strategy);
absl::StatusOr<StrategyMode> ParseStrategyMode(std::string_view name);

// Membership-only sets; never iterated where order matters.
using EntrySet = absl::flat_hash_set<EntryId>;
using CountMap = std::map<EntryId, int64_t>;
using MpplMap = std::map<EntryId, double>;

// Arithmetic mean of the perplexities of one motion's annotations.
absl::StatusOr<double> MeanMotionPerplexity(
    std::span<const lm::PerplexityScore> perplexities);

struct SelectionSnapshot {
  Strategy strategy = Strategy::kPerplexityProportional;
  absl::Time created_at = absl::InfinitePast();
  // Incremented by every publication; 0 means "never computed".
  uint64_t generation = 0;
  // Ascending, aligned with `probabilities`.
  std::vector<EntryId> entries;
  std::vector<double> probabilities;
  // Motions annotated since this snapshot was computed.
  EntrySet excluded;

  std::optional<double> ProbabilityOf(EntryId entry) const;
};

// P(j) = mppl_j / sum_k mppl_k. Values must be finite and positive; mean
// perplexities are >= 1, scaled copies of them need not be.
absl::StatusOr<SelectionSnapshot> BuildDistribution(const MpplMap& mppls);

// Draws from the snapshot distribution restricted to motions outside
// `snapshot.excluded`, `skips` and `blocked`, renormalized. Uses one
// Rng::Uniform() draw and inverse-transform sampling over the restriction in
// ascending id order. Fails with FailedPrecondition when nothing is eligible.
absl::StatusOr<EntryId> SampleNext(const SelectionSnapshot& snapshot,
                                   Rng& rng, const EntrySet& skips,
                                   const EntrySet& blocked = {});

// SampleNext(), retried without `skips` and then also without the exclusion
// set when nothing is eligible. `blocked` is never relaxed.
absl::StatusOr<EntryId> SampleWithFallback(const SelectionSnapshot& snapshot,
                                           Rng& rng, const EntrySet& skips,
                                           const EntrySet& blocked = {});

// Uniform draw among the motions whose count equals the minimum count.
absl::StatusOr<EntryId> BootstrapNext(const CountMap& counts, Rng& rng);

// kAuto picks kFewestUniform while any motion has no annotation and
// kPerplexityProportional once every motion has at least one.
Strategy ChooseStrategy(const CountMap& counts, StrategyMode mode);

bool IsNoCandidate(const absl::Status& status);

}  // namespace selection
}  // namespace annot

#endif  // ANNOT_SELECTION_DISTRIBUTION_H_
