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

#include "annot/lm/language_model.h"

#include <cmath>
#include <vector>

namespace annot {
namespace lm {

double LanguageModel::SentenceLogProbability(
    const SentenceTokens& sentence) const {
  const int history = std::max(0, order() - 1);
  std::vector<std::string> padded(history, std::string(kBos));
  padded.insert(padded.end(), sentence.tokens().begin(),
                sentence.tokens().end());
  padded.emplace_back(kEos);

  double log_prob = 0.0;
  for (size_t i = history; i < padded.size(); ++i) {
    std::span<const std::string> context(padded.data() + i - history,
                                         history);
    log_prob += std::log(ConditionalProbability(padded[i], context));
  }
  return log_prob;
}

double SentenceProbability(const LanguageModel& model,
                           const SentenceTokens& sentence) {
  return std::exp(model.SentenceLogProbability(sentence));
}

PerplexityScore Perplexity(const LanguageModel& model,
                           const SentenceTokens& sentence) {
  const double log_prob = model.SentenceLogProbability(sentence);
  return PerplexityScore(
      std::exp(-log_prob / static_cast<double>(sentence.size())));
}

}  // namespace lm
}  // namespace annot
