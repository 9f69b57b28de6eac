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

#ifndef ANNOT_LM_NGRAM_MODEL_H_
#define ANNOT_LM_NGRAM_MODEL_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"
#include "annot/lm/language_model.h"
#include "annot/lm/sentence.h"
#include "json.hpp"

namespace annot {
namespace lm {

// Word <-> id mapping. Ids 0..2 are reserved for kUnk, kBos and kEos; real
// words start at kFirstWordId.
class Vocabulary {
 public:
  static constexpr int kUnkId = 0;
  static constexpr int kBosId = 1;
  static constexpr int kEosId = 2;
  static constexpr int kFirstWordId = 3;

  Vocabulary();

  // Returns the id of `word`, adding it if needed.
  int Add(std::string_view word);
  // Returns kUnkId for words never added.
  int Lookup(std::string_view word) const;
  bool Contains(std::string_view word) const;
  const std::string& Word(int id) const { return words_[id]; }

  // Observed words plus the unknown-word class. Boundary symbols are not
  // counted.
  size_t size() const { return words_.size() - 2; }
  // Number of outcomes a conditional distribution ranges over: size() plus
  // the end-of-sentence event.
  size_t outcome_count() const { return words_.size() - 1; }
  // Real word ids, in insertion order.
  std::vector<int> WordIds() const;

 private:
  std::vector<std::string> words_;
  absl::flat_hash_map<std::string, int> ids_;
};

// Occurrence counts of all k-grams, 1 <= k <= order, stored as a trie over
// word ids. Every count is attributed to the last word of the k-gram; the
// first k - 1 words form its context.
class NGramCounts {
 public:
  explicit NGramCounts(int order);

  int order() const { return order_; }

  // Counts all k-grams of one sentence padded with order - 1 kBos and a
  // single kEos. `ids` holds the real tokens only.
  void AddSentence(std::span<const int> ids);
  // Adds `count` occurrences of one explicit k-gram.
  void AddNGram(std::span<const int> ngram, int64_t count);

  // Number of times the last word of `ngram` followed its context. Zero for
  // unseen k-grams; the empty k-gram has count 0.
  int64_t Count(std::span<const int> ngram) const;
  // Sum of Count() over all one-word extensions of `context`.
  int64_t ContextCount(std::span<const int> context) const;

  // Visits every k-gram with a positive count.
  void ForEach(const std::function<void(std::span<const int>, int64_t)>& fn)
      const;

  // Trie navigation, -1 when absent. Node 0 is the empty context.
  int FindNode(std::span<const int> ngram) const;
  int Child(int node, int word) const;
  int64_t NodeCount(int node) const { return nodes_[node].count; }
  int64_t NodeContextCount(int node) const {
    return nodes_[node].context_count;
  }

 private:
  struct Node {
    int parent = -1;
    int word = -1;
    int64_t count = 0;
    int64_t context_count = 0;
  };

  int ChildOrAdd(int node, int word);
  static uint64_t Key(int node, int word) {
    return (static_cast<uint64_t>(node) << 32) | static_cast<uint32_t>(word);
  }

  int order_;
  std::vector<Node> nodes_;
  absl::flat_hash_map<uint64_t, int> children_;
};

struct TrainingOptions {
  int order = 4;
  // Weight of the maximum-likelihood estimate at each order.
  double lambda = 0.8;
};

// Count-based model with recursive linear interpolation:
//
//   P_0(w)       = (c(w) + 1) / (N + V)
//   P_k(w | h_k) = lambda * c(h_k w) / c(h_k) + (1 - lambda) * P_{k-1}(w | h_{k-1})
//
// where h_k is the last k - 1 words of the history, N the number of scored
// events, and V the number of outcomes (observed words, kUnk and kEos).
// Levels whose context was never observed pass P_{k-1} through unchanged.
// Words outside the vocabulary are scored as kUnk.
class NGramModel final : public LanguageModel {
 public:
  static absl::StatusOr<NGramModel> Train(
      std::span<const SentenceTokens> corpus, TrainingOptions options = {});

  int order() const override { return counts_.order(); }
  double lambda() const { return lambda_; }
  const Vocabulary& vocabulary() const { return vocabulary_; }
  const NGramCounts& counts() const { return counts_; }

  double ConditionalProbability(
      std::string_view word,
      std::span<const std::string> context) const override;
  // Id-based variant. `context` may be of any length.
  double ConditionalProbability(int word, std::span<const int> context) const;

  double SentenceLogProbability(const SentenceTokens& sentence) const override;

  nlohmann::json ToJson() const;
  static absl::StatusOr<NGramModel> FromJson(const nlohmann::json& json);

 private:
  NGramModel(Vocabulary vocabulary, NGramCounts counts, double lambda)
      : vocabulary_(std::move(vocabulary)),
        counts_(std::move(counts)),
        lambda_(lambda) {}

  Vocabulary vocabulary_;
  NGramCounts counts_;
  double lambda_;
};

}  // namespace lm
}  // namespace annot

#endif  // ANNOT_LM_NGRAM_MODEL_H_
