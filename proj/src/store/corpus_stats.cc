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

#include "annot/store/corpus_stats.h"

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "annot/lm/sentence.h"

namespace annot {
namespace store {
namespace {

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

MeanStd Moments(const std::vector<double>& xs) {
  MeanStd out;
  if (xs.empty()) return out;
  for (double x : xs) out.mean += x;
  out.mean /= xs.size();
  double ss = 0.0;
  for (double x : xs) ss += (x - out.mean) * (x - out.mean);
  out.std = std::sqrt(ss / xs.size());
  return out;
}

}  // namespace

CorpusCounts ComputeCorpusCounts(const StoreState& state) {
  CorpusCounts c;
  std::vector<double> durations;
  for (const auto& [id, entry] : state.motions) {
    durations.push_back(entry.duration());
    c.total_duration_secs += entry.duration();
  }
  c.recordings = static_cast<int64_t>(durations.size());
  const MeanStd d = Moments(durations);
  c.mean_duration_secs = d.mean;
  c.std_duration_secs = d.std;

  std::set<std::string> vocabulary;
  std::set<AnnotatorId> annotators;
  std::vector<double> lengths;
  for (const auto& [id, record] : state.annotations) {
    const std::vector<std::string> words = lm::NormalizeWords(record.text);
    lengths.push_back(static_cast<double>(words.size()));
    c.total_words += static_cast<int64_t>(words.size());
    vocabulary.insert(words.begin(), words.end());
    if (!record.annotator.value().empty()) annotators.insert(record.annotator);
  }
  c.annotations = static_cast<int64_t>(lengths.size());
  c.annotators = static_cast<int64_t>(annotators.size());
  c.vocabulary_size = static_cast<int64_t>(vocabulary.size());
  const MeanStd l = Moments(lengths);
  c.mean_sentence_length = l.mean;
  c.std_sentence_length = l.std;
  return c;
}

nlohmann::json CorpusCountsToJson(const CorpusCounts& c) {
  return {
      {"recordings", c.recordings},
      {"total_duration_secs", c.total_duration_secs},
      {"mean_duration_secs", c.mean_duration_secs},
      {"std_duration_secs", c.std_duration_secs},
      {"annotations", c.annotations},
      {"annotators", c.annotators},
      {"total_words", c.total_words},
      {"vocabulary_size", c.vocabulary_size},
      {"mean_sentence_length", c.mean_sentence_length},
      {"std_sentence_length", c.std_sentence_length},
  };
}

}  // namespace store
}  // namespace annot
