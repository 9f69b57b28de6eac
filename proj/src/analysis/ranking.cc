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

#include "annot/analysis/ranking.h"

#include <algorithm>

#include "absl/container/flat_hash_set.h"
#include "annot/lm/sentence.h"

namespace annot {
namespace analysis {

std::vector<ScoredAnnotation> ScoreAnnotations(
    const lm::LanguageModel& model, std::span<const std::string> texts) {
  std::vector<ScoredAnnotation> scored;
  scored.reserve(texts.size());
  for (const std::string& text : texts) {
    auto tokens = lm::Normalize(text);
    if (!tokens.ok()) continue;
    scored.push_back({text, lm::Perplexity(model, *tokens).value()});
  }
  return scored;
}

std::vector<ScoredAnnotation> RankAnnotations(
    const lm::LanguageModel& model, std::span<const std::string> texts,
    size_t n, RankDirection direction) {
  std::vector<ScoredAnnotation> scored = ScoreAnnotations(model, texts);
  std::sort(scored.begin(), scored.end(),
            [direction](const ScoredAnnotation& a, const ScoredAnnotation& b) {
              if (a.perplexity != b.perplexity) {
                return direction == RankDirection::kLowestFirst
                           ? a.perplexity < b.perplexity
                           : a.perplexity > b.perplexity;
              }
              return a.text < b.text;
            });
  std::vector<ScoredAnnotation> ranked;
  absl::flat_hash_set<std::string> seen;
  for (ScoredAnnotation& s : scored) {
    if (ranked.size() == n) break;
    if (!seen.insert(lm::Normalize(s.text)->Join()).second) continue;
    ranked.push_back(std::move(s));
  }
  return ranked;
}

}  // namespace analysis
}  // namespace annot
