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

#ifndef ANNOT_STORE_CORPUS_STATS_H_
#define ANNOT_STORE_CORPUS_STATS_H_

#include <cstdint>

#include "annot/store/entities.h"
#include "json.hpp"

namespace annot {
namespace store {

// Dataset overview. Standard deviations are population deviations; words are
// counted after the language model's normalization.
struct CorpusCounts {
  int64_t recordings = 0;
  double total_duration_secs = 0.0;
  double mean_duration_secs = 0.0;
  double std_duration_secs = 0.0;
  int64_t annotations = 0;
  int64_t annotators = 0;
  int64_t total_words = 0;
  int64_t vocabulary_size = 0;
  double mean_sentence_length = 0.0;
  double std_sentence_length = 0.0;

  friend bool operator==(const CorpusCounts&, const CorpusCounts&) = default;
};

CorpusCounts ComputeCorpusCounts(const StoreState& state);

nlohmann::json CorpusCountsToJson(const CorpusCounts& counts);

}  // namespace store
}  // namespace annot

#endif  // ANNOT_STORE_CORPUS_STATS_H_
