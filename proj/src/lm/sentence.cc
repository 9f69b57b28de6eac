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

#include "annot/lm/sentence.h"

#include <cctype>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace annot {
namespace lm {
namespace {

bool IsAsciiPunct(unsigned char c) { return c < 0x80 && std::ispunct(c); }
bool IsAsciiSpace(unsigned char c) { return c < 0x80 && std::isspace(c); }

}  // namespace

absl::StatusOr<SentenceTokens> SentenceTokens::FromTokens(
    std::vector<std::string> tokens) {
  if (tokens.empty()) {
    return absl::InvalidArgumentError("sentence has no tokens");
  }
  for (const std::string& token : tokens) {
    if (token.empty()) {
      return absl::InvalidArgumentError("empty token");
    }
    for (unsigned char c : token) {
      if (IsAsciiSpace(c) || IsAsciiPunct(c) || std::isupper(c)) {
        return absl::InvalidArgumentError(
            absl::StrCat("token is not normalized: '", token, "'"));
      }
    }
  }
  return SentenceTokens(std::move(tokens));
}

std::string SentenceTokens::Join() const {
  return absl::StrJoin(tokens_, " ");
}

std::vector<std::string> NormalizeWords(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  for (unsigned char c : text) {
    if (IsAsciiSpace(c)) {
      if (!current.empty()) words.push_back(std::move(current));
      current.clear();
    } else if (IsAsciiPunct(c)) {
      continue;
    } else {
      current.push_back(static_cast<char>(c < 0x80 ? std::tolower(c) : c));
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

absl::StatusOr<SentenceTokens> Normalize(std::string_view text) {
  std::vector<std::string> words = NormalizeWords(text);
  if (words.empty()) {
    return absl::InvalidArgumentError(
        "annotation is empty after normalization");
  }
  return SentenceTokens(std::move(words));
}

}  // namespace lm
}  // namespace annot
