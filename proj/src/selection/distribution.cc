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

#include "annot/selection/distribution.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"

namespace annot {
namespace selection {
namespace {

constexpr absl::string_view kNoCandidate = "no eligible motion";

}  // namespace

std::string_view StrategyName(Strategy strategy) {
  switch (strategy) {
    case Strategy::kFewestUniform:
      return "fewest-uniform";
    case Strategy::kPerplexityProportional:
      return "perplexity-proportional";
  }
  return "unknown";
}

absl::StatusOr<StrategyMode> ParseStrategyMode(std::string_view name) {
  if (name == "auto") return StrategyMode::kAuto;
  if (name == "random") return StrategyMode::kRandom;
  if (name == "perplexity") return StrategyMode::kPerplexity;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown selection strategy '",
                   absl::string_view(name.data(), name.size()),
                   "' (expected auto, random or perplexity)"));
}

absl::StatusOr<double> MeanMotionPerplexity(
    std::span<const lm::PerplexityScore> perplexities) {
  if (perplexities.empty()) {
    return absl::InvalidArgumentError("motion has no annotations");
  }
  double sum = 0.0;
  for (const lm::PerplexityScore& p : perplexities) sum += p.value();
  return sum / static_cast<double>(perplexities.size());
}

std::optional<double> SelectionSnapshot::ProbabilityOf(EntryId entry) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), entry);
  if (it == entries.end() || *it != entry) return std::nullopt;
  return probabilities[it - entries.begin()];
}

absl::StatusOr<SelectionSnapshot> BuildDistribution(const MpplMap& mppls) {
  if (mppls.empty()) {
    return absl::InvalidArgumentError("cannot build a distribution over zero motions");
  }
  long double total = 0.0L;
  for (const auto& [entry, mppl] : mppls) {
    if (!std::isfinite(mppl) || !(mppl > 0.0)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "motion ", entry.value(), " has invalid weight ", mppl));
    }
    total += mppl;
  }
  SelectionSnapshot snapshot;
  snapshot.entries.reserve(mppls.size());
  snapshot.probabilities.reserve(mppls.size());
  for (const auto& [entry, mppl] : mppls) {
    snapshot.entries.push_back(entry);
    snapshot.probabilities.push_back(static_cast<double>(mppl / total));
  }
  return snapshot;
}

absl::StatusOr<EntryId> SampleNext(const SelectionSnapshot& snapshot,
                                   Rng& rng, const EntrySet& skips,
                                   const EntrySet& blocked) {
  auto eligible = [&](EntryId e) {
    return !snapshot.excluded.contains(e) && !skips.contains(e) &&
           !blocked.contains(e);
  };
  long double total = 0.0L;
  for (size_t i = 0; i < snapshot.entries.size(); ++i) {
    if (eligible(snapshot.entries[i])) total += snapshot.probabilities[i];
  }
  if (total <= 0.0L) return absl::FailedPreconditionError(kNoCandidate);

  const long double target = rng.Uniform() * total;
  long double cumulative = 0.0L;
  std::optional<EntryId> last;
  for (size_t i = 0; i < snapshot.entries.size(); ++i) {
    if (!eligible(snapshot.entries[i])) continue;
    cumulative += snapshot.probabilities[i];
    last = snapshot.entries[i];
    if (target < cumulative) return *last;
  }
  // Rounding can leave target == total.
  return *last;
}

absl::StatusOr<EntryId> SampleWithFallback(const SelectionSnapshot& snapshot,
                                           Rng& rng, const EntrySet& skips,
                                           const EntrySet& blocked) {
  auto choice = SampleNext(snapshot, rng, skips, blocked);
  if (!IsNoCandidate(choice.status())) return choice;
  choice = SampleNext(snapshot, rng, {}, blocked);
  if (!IsNoCandidate(choice.status())) return choice;
  SelectionSnapshot relaxed;
  relaxed.entries = snapshot.entries;
  relaxed.probabilities = snapshot.probabilities;
  return SampleNext(relaxed, rng, {}, blocked);
}

absl::StatusOr<EntryId> BootstrapNext(const CountMap& counts, Rng& rng) {
  if (counts.empty()) return absl::FailedPreconditionError(kNoCandidate);
  int64_t fewest = counts.begin()->second;
  for (const auto& [entry, count] : counts) fewest = std::min(fewest, count);
  std::vector<EntryId> pool;
  for (const auto& [entry, count] : counts) {
    if (count == fewest) pool.push_back(entry);
  }
  return rng.Pick(pool);
}

Strategy ChooseStrategy(const CountMap& counts, StrategyMode mode) {
  switch (mode) {
    case StrategyMode::kRandom:
      return Strategy::kFewestUniform;
    case StrategyMode::kPerplexity:
      return Strategy::kPerplexityProportional;
    case StrategyMode::kAuto:
      break;
  }
  if (counts.empty()) return Strategy::kFewestUniform;
  for (const auto& [entry, count] : counts) {
    if (count == 0) return Strategy::kFewestUniform;
  }
  return Strategy::kPerplexityProportional;
}

bool IsNoCandidate(const absl::Status& status) {
  return status.code() == absl::StatusCode::kFailedPrecondition &&
         status.message() == kNoCandidate;
}

}  // namespace selection
}  // namespace annot
