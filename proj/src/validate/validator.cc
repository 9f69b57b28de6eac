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

#include "annot/validate/validator.h"

#include <algorithm>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "annot/common/file_io.h"

namespace annot {
namespace validate {
namespace {

bool IsTerminator(char c) { return c == '.' || c == '!' || c == '?'; }
bool IsDigit(char c) { return absl::ascii_isdigit(static_cast<unsigned char>(c)); }

int CountTerminators(std::string_view text) {
  int count = 0;
  for (size_t i = 0; i < text.size(); ++i) {
    if (!IsTerminator(text[i])) continue;
    if (text[i] == '.' && i > 0 && i + 1 < text.size() && IsDigit(text[i - 1]) &&
        IsDigit(text[i + 1])) {
      continue;
    }
    ++count;
    while (i + 1 < text.size() && IsTerminator(text[i + 1])) ++i;
  }
  return count;
}

// "12", "2.5", "1,000", "3rd", "90°" style tokens.
bool IsNumber(std::string_view w) {
  if (w.empty() || !IsDigit(w[0])) return false;
  size_t i = 0;
  while (i < w.size() && (IsDigit(w[i]) || w[i] == '.' || w[i] == ',')) ++i;
  const std::string_view rest = w.substr(i);
  return rest.empty() || rest == "st" || rest == "nd" || rest == "rd" ||
         rest == "th" || rest == "x" || rest == "s";
}

bool IsKnown(const std::string& word, const Dictionary& dictionary) {
  if (IsNumber(word) || dictionary.Contains(word)) return true;
  // Possessives and contractions: "person's", "don't".
  if (word.size() > 2 && word.ends_with("'s") &&
      dictionary.Contains(std::string_view(word).substr(0, word.size() - 2))) {
    return true;
  }
  if (word.find('\'') != std::string::npos) {
    std::string joined = word;
    joined.erase(std::remove(joined.begin(), joined.end(), '\''), joined.end());
    if (dictionary.Contains(joined)) return true;
  }
  // Compounds: "left-hand", "t-pose".
  if (word.find('-') != std::string::npos) {
    for (absl::string_view part : absl::StrSplit(word, '-', absl::SkipEmpty())) {
      const std::string p(part);
      if (!IsNumber(p) && !dictionary.Contains(p)) return false;
    }
    return true;
  }
  return false;
}

}  // namespace

Dictionary::Dictionary(const std::vector<std::string>& words) {
  for (const auto& w : words) words_.insert(absl::AsciiStrToLower(w));
}

absl::StatusOr<Dictionary> Dictionary::Load(const std::filesystem::path& path) {
  auto text = ReadFile(path);
  if (!text.ok()) return text.status();
  Dictionary d;
  for (absl::string_view line : absl::StrSplit(*text, '\n', absl::SkipEmpty())) {
    line = absl::StripAsciiWhitespace(line);
    if (!line.empty() && line[0] != '#') d.words_.insert(absl::AsciiStrToLower(line));
  }
  if (d.words_.empty()) {
    return absl::InvalidArgumentError(absl::StrCat(path.string(), " holds no words"));
  }
  return d;
}

bool Dictionary::Contains(std::string_view word) const {
  return words_.contains(absl::string_view(word.data(), word.size()));
}

absl::Status ValidationPolicy::Check() const {
  if (min_words < 1) return absl::InvalidArgumentError("min_words must be >= 1");
  if (max_words < min_words) {
    return absl::InvalidArgumentError("max_words must be >= min_words");
  }
  if (!(min_dictionary_fraction > 0.0 && min_dictionary_fraction <= 1.0)) {
    return absl::InvalidArgumentError("min_dictionary_fraction must be in (0, 1]");
  }
  if (max_sentence_terminators < 0) {
    return absl::InvalidArgumentError("max_sentence_terminators must be >= 0");
  }
  return absl::OkStatus();
}

std::string_view ReasonCode(RejectReason reason) {
  switch (reason) {
    case RejectReason::kTooFewWords:
      return "too-few-words";
    case RejectReason::kTooManyWords:
      return "too-many-words";
    case RejectReason::kTooManySentences:
      return "too-many-sentences";
    case RejectReason::kSpellingFraction:
      return "spelling-fraction";
  }
  return "unknown";
}

TextStats Analyze(std::string_view text, const Dictionary& dictionary) {
  TextStats stats;
  stats.terminators = CountTerminators(text);
  for (absl::string_view token :
       absl::StrSplit(absl::string_view(text.data(), text.size()),
                      absl::ByAnyChar(" \t\r\n"), absl::SkipEmpty())) {
    const auto keep = [](char c) {
      return absl::ascii_isalnum(static_cast<unsigned char>(c)) || c == '\'' ||
             c == '-' || (c & 0x80);
    };
    size_t b = 0, e = token.size();
    while (b < e && (!keep(token[b]) || token[b] == '\'' || token[b] == '-')) ++b;
    while (e > b && (!keep(token[e - 1]) || token[e - 1] == '\'' || token[e - 1] == '-')) --e;
    std::string word = absl::AsciiStrToLower(token.substr(b, e - b));
    if (std::none_of(word.begin(), word.end(), [](char c) {
          return absl::ascii_isalnum(static_cast<unsigned char>(c)) || (c & 0x80);
        })) {
      continue;
    }
    ++stats.words;
    if (IsKnown(word, dictionary)) ++stats.known_words;
  }
  return stats;
}

Verdict ValidateAnnotation(std::string_view text, const ValidationPolicy& policy,
                           const Dictionary& dictionary) {
  const TextStats stats = Analyze(text, dictionary);
  Verdict v;
  v.words = stats.words;
  v.known_words = stats.known_words;
  v.terminators = stats.terminators;
  auto reject = [&](RejectReason reason, std::string message) {
    v.accepted = false;
    v.reason = reason;
    v.message = std::move(message);
    return v;
  };
  if (stats.words < policy.min_words) {
    return reject(RejectReason::kTooFewWords,
                  absl::StrCat("Please use at least ", policy.min_words,
                               " words; found ", stats.words, "."));
  }
  if (stats.words > policy.max_words) {
    return reject(RejectReason::kTooManyWords,
                  absl::StrCat("Please use at most ", policy.max_words,
                               " words; found ", stats.words, "."));
  }
  if (stats.terminators > policy.max_sentence_terminators) {
    return reject(RejectReason::kTooManySentences,
                  absl::StrCat("Please describe the motion in at most ",
                               policy.max_sentence_terminators, " sentences."));
  }
  const double fraction = static_cast<double>(stats.known_words) / stats.words;
  if (fraction < policy.min_dictionary_fraction) {
    return reject(RejectReason::kSpellingFraction,
                  absl::StrCat("Too many words were not recognized (",
                               stats.known_words, " of ", stats.words,
                               " known). Please check the spelling."));
  }
  return v;
}

}  // namespace validate
}  // namespace annot
