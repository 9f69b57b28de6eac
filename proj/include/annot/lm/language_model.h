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

#ifndef ANNOT_LM_LANGUAGE_MODEL_H_
#define ANNOT_LM_LANGUAGE_MODEL_H_

#include <algorithm>
#include <span>
#include <string>
#include <string_view>

#include "annot/lm/sentence.h"

namespace annot {
namespace lm {

// Reserved symbols. None of them survive normalization, so they cannot
// collide with a real token.
inline constexpr std::string_view kBos = "<s>";
inline constexpr std::string_view kEos = "</s>";
inline constexpr std::string_view kUnk = "<unk>";

// Per-word perplexity of a sentence; always >= 1.
class PerplexityScore {
 public:
  explicit PerplexityScore(double value) : value_(std::max(1.0, value)) {}

  double value() const { return value_; }

  friend auto operator<=>(const PerplexityScore&,
                          const PerplexityScore&) = default;

 private:
  double value_;
};

// A conditional word distribution over a fixed history length.
//
// Implementations must be immutable after construction; scoring is safe from
// any number of threads.
class LanguageModel {
 public:
  virtual ~LanguageModel() = default;

  virtual int order() const = 0;

  // P(word | context). Only the last order() - 1 context words are used;
  // shorter contexts are left-padded with kBos.
  virtual double ConditionalProbability(
      std::string_view word, std::span<const std::string> context) const = 0;

  // Natural log of P(sentence, kEos) with kBos padding. The default
  // implementation chains ConditionalProbability().
  virtual double SentenceLogProbability(const SentenceTokens& sentence) const;
};

double SentenceProbability(const LanguageModel& model,
                           const SentenceTokens& sentence);

// P(s)^(-1/|s|), where |s| counts the real tokens of `s` (the end-of-sentence
// event is scored in P but not counted in the exponent).
PerplexityScore Perplexity(const LanguageModel& model,
                           const SentenceTokens& sentence);

// Assigns 1/vocabulary_size to every word in every context.
class UniformModel final : public LanguageModel {
 public:
  UniformModel(int order, double vocabulary_size)
      : order_(order), vocabulary_size_(vocabulary_size) {}

  int order() const override { return order_; }
  double ConditionalProbability(
      std::string_view, std::span<const std::string>) const override {
    return 1.0 / vocabulary_size_;
  }

 private:
  int order_;
  double vocabulary_size_;
};

}  // namespace lm
}  // namespace annot

#endif  // ANNOT_LM_LANGUAGE_MODEL_H_
