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

#ifndef ANNOT_TESTS_ORACLE_FIXTURES_H_
#define ANNOT_TESTS_ORACLE_FIXTURES_H_

#include <string>
#include <vector>

#include "absl/strings/str_split.h"

namespace annot {
namespace testing {

inline std::vector<std::string> Words(const std::string& text) {
  return absl::StrSplit(text, ' ', absl::SkipEmpty());
}

// Ten sentences over a twelve-word vocabulary.
inline std::vector<std::vector<std::string>> SmallLmCorpus() {
  std::vector<std::vector<std::string>> corpus;
  for (const char* s : {
           "a person walks forward",
           "a person walks forward and stops",
           "a person turns left",
           "a person turns right",
           "a person runs forward",
           "a person runs back and stops",
           "person walks slowly",
           "a person walks left and turns right",
           "a person walks forward and turns back",
           "slowly a person runs",
       }) {
    corpus.push_back(Words(s));
  }
  return corpus;
}

// Sentences scored against SmallLmCorpus(): seen, recombined, and one with an
// out-of-vocabulary word.
inline std::vector<std::vector<std::string>> SmallLmQueries() {
  std::vector<std::vector<std::string>> queries = SmallLmCorpus();
  for (const char* s : {"person runs left slowly", "stops", "a person dances",
                        "forward forward forward and back"}) {
    queries.push_back(Words(s));
  }
  return queries;
}

}  // namespace testing
}  // namespace annot

#endif  // ANNOT_TESTS_ORACLE_FIXTURES_H_
