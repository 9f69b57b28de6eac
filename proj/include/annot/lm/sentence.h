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

#ifndef ANNOT_LM_SENTENCE_H_
#define ANNOT_LM_SENTENCE_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace annot {
namespace lm {

class SentenceTokens;
absl::StatusOr<SentenceTokens> Normalize(std::string_view text);

// Normalized word sequence of one annotation: lowercase, punctuation-free,
// never empty. This is the form that is counted and scored.
class SentenceTokens {
 public:
  // Validates that every token is nonempty, lowercase, free of whitespace and
  // punctuation, and that there is at least one token.
  static absl::StatusOr<SentenceTokens> FromTokens(
      std::vector<std::string> tokens);

  const std::vector<std::string>& tokens() const { return tokens_; }
  size_t size() const { return tokens_.size(); }
  std::string Join() const;

  friend bool operator==(const SentenceTokens&,
                         const SentenceTokens&) = default;

 private:
  friend absl::StatusOr<SentenceTokens> Normalize(std::string_view text);

  explicit SentenceTokens(std::vector<std::string> tokens)
      : tokens_(std::move(tokens)) {}

  std::vector<std::string> tokens_;
};

// Lowercases ASCII letters, deletes ASCII punctuation and splits on
// whitespace. Digits are kept. Bytes outside ASCII are left untouched.
// Fails with InvalidArgument when nothing is left.
absl::StatusOr<SentenceTokens> Normalize(std::string_view text);

// Same transformation without the non-empty requirement.
std::vector<std::string> NormalizeWords(std::string_view text);

}  // namespace lm
}  // namespace annot

#endif  // ANNOT_LM_SENTENCE_H_
