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

#ifndef ANNOT_VALIDATE_VALIDATOR_H_
#define ANNOT_VALIDATE_VALIDATOR_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "absl/container/flat_hash_set.h"
#include "absl/status/statusor.h"

namespace annot {
namespace validate {

// Lowercase word list, one word per line.
class Dictionary {
 public:
  Dictionary() = default;
  explicit Dictionary(const std::vector<std::string>& words);

  static absl::StatusOr<Dictionary> Load(const std::filesystem::path& path);

  bool Contains(std::string_view lowercase_word) const;
  size_t size() const { return words_.size(); }

 private:
  absl::flat_hash_set<std::string> words_;
};

struct ValidationPolicy {
  int min_words = 4;
  int max_words = 80;
  double min_dictionary_fraction = 0.7;
  int max_sentence_terminators = 2;

  absl::Status Check() const;
};

enum class RejectReason {
  kTooFewWords,
  kTooManyWords,
  kTooManySentences,
  kSpellingFraction,
};

// Machine-readable code, e.g. "too-few-words".
std::string_view ReasonCode(RejectReason reason);

struct Verdict {
  bool accepted = true;
  RejectReason reason = RejectReason::kTooFewWords;  // meaningful if rejected
  std::string message;
  int words = 0;
  int known_words = 0;
  int terminators = 0;
};

// Word statistics the checks are based on. A word is a whitespace-separated
// token with at least one letter or digit after trimming punctuation.
struct TextStats {
  int words = 0;
  int known_words = 0;
  int terminators = 0;
};

TextStats Analyze(std::string_view text, const Dictionary& dictionary);

// Checks run in order: word count bounds, sentence terminators, spelling.
// Numbers count as correctly spelled. A run such as "?!" or "..." is one
// terminator and a period between digits ("2.5") is none.
Verdict ValidateAnnotation(std::string_view text, const ValidationPolicy& policy,
                           const Dictionary& dictionary);

}  // namespace validate
}  // namespace annot

#endif  // ANNOT_VALIDATE_VALIDATOR_H_
