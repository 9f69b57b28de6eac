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

#ifndef ANNOT_ANALYSIS_RANKING_H_
#define ANNOT_ANALYSIS_RANKING_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "annot/lm/language_model.h"

namespace annot {
namespace analysis {

struct ScoredAnnotation {
  std::string text;
  double perplexity = 1.0;
};

enum class RankDirection { kLowestFirst, kHighestFirst };

// Scores every text that normalizes to at least one word. Order follows
// `texts`; unscorable texts are dropped.
std::vector<ScoredAnnotation> ScoreAnnotations(
    const lm::LanguageModel& model, std::span<const std::string> texts);

// Top `n` annotations by perplexity in `direction`. Texts that normalize to
// the same word sequence are reported once, at their best position. Ties are
// broken by text.
std::vector<ScoredAnnotation> RankAnnotations(
    const lm::LanguageModel& model, std::span<const std::string> texts,
    size_t n, RankDirection direction);

}  // namespace analysis
}  // namespace annot

#endif  // ANNOT_ANALYSIS_RANKING_H_
