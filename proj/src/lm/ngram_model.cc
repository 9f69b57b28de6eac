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

#include "annot/lm/ngram_model.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/container/inlined_vector.h"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace annot {
namespace lm {
namespace {

constexpr std::string_view kFormatName = "annot.ngram";
constexpr int kFormatVersion = 1;

}  // namespace

Vocabulary::Vocabulary() {
  for (std::string_view reserved : {kUnk, kBos, kEos}) {
    ids_.emplace(reserved, static_cast<int>(words_.size()));
    words_.emplace_back(reserved);
  }
}

int Vocabulary::Add(std::string_view word) {
  auto [it, inserted] =
      ids_.try_emplace(std::string(word), static_cast<int>(words_.size()));
  if (inserted) words_.emplace_back(word);
  return it->second;
}

int Vocabulary::Lookup(std::string_view word) const {
  auto it = ids_.find(absl::string_view(word.data(), word.size()));
  return it == ids_.end() ? kUnkId : it->second;
}

bool Vocabulary::Contains(std::string_view word) const {
  return ids_.contains(absl::string_view(word.data(), word.size()));
}

std::vector<int> Vocabulary::WordIds() const {
  std::vector<int> ids;
  for (int id = kFirstWordId; id < static_cast<int>(words_.size()); ++id) {
    ids.push_back(id);
  }
  return ids;
}

NGramCounts::NGramCounts(int order) : order_(order) { nodes_.emplace_back(); }

int NGramCounts::ChildOrAdd(int node, int word) {
  auto [it, inserted] =
      children_.try_emplace(Key(node, word), static_cast<int>(nodes_.size()));
  if (inserted) nodes_.push_back(Node{node, word, 0, 0});
  return it->second;
}

void NGramCounts::AddNGram(std::span<const int> ngram, int64_t count) {
  int node = 0;
  for (size_t i = 0; i + 1 < ngram.size(); ++i) {
    node = ChildOrAdd(node, ngram[i]);
  }
  nodes_[node].context_count += count;
  node = ChildOrAdd(node, ngram.back());
  nodes_[node].count += count;
}

void NGramCounts::AddSentence(std::span<const int> ids) {
  const int history = order_ - 1;
  std::vector<int> padded(history, Vocabulary::kBosId);
  padded.insert(padded.end(), ids.begin(), ids.end());
  padded.push_back(Vocabulary::kEosId);
  for (size_t i = history; i < padded.size(); ++i) {
    for (int k = 1; k <= order_; ++k) {
      AddNGram(std::span<const int>(padded.data() + i + 1 - k, k), 1);
    }
  }
}

int NGramCounts::Child(int node, int word) const {
  auto it = children_.find(Key(node, word));
  return it == children_.end() ? -1 : it->second;
}

int NGramCounts::FindNode(std::span<const int> ngram) const {
  int node = 0;
  for (int word : ngram) {
    node = Child(node, word);
    if (node < 0) return -1;
  }
  return node;
}

int64_t NGramCounts::Count(std::span<const int> ngram) const {
  if (ngram.empty()) return 0;
  const int node = FindNode(ngram);
  return node < 0 ? 0 : nodes_[node].count;
}

int64_t NGramCounts::ContextCount(std::span<const int> context) const {
  const int node = FindNode(context);
  return node < 0 ? 0 : nodes_[node].context_count;
}

void NGramCounts::ForEach(
    const std::function<void(std::span<const int>, int64_t)>& fn) const {
  std::vector<int> ngram;
  for (size_t i = 1; i < nodes_.size(); ++i) {
    if (nodes_[i].count == 0) continue;
    ngram.clear();
    for (int node = static_cast<int>(i); node > 0; node = nodes_[node].parent) {
      ngram.push_back(nodes_[node].word);
    }
    std::reverse(ngram.begin(), ngram.end());
    fn(ngram, nodes_[i].count);
  }
}

absl::StatusOr<NGramModel> NGramModel::Train(
    std::span<const SentenceTokens> corpus, TrainingOptions options) {
  if (corpus.empty()) {
    return absl::InvalidArgumentError("cannot train on an empty corpus");
  }
  if (options.order < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("order must be >= 1, got ", options.order));
  }
  if (!(options.lambda > 0.0 && options.lambda < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("lambda must lie in (0, 1), got ", options.lambda));
  }
  Vocabulary vocabulary;
  NGramCounts counts(options.order);
  std::vector<int> ids;
  for (const SentenceTokens& sentence : corpus) {
    ids.clear();
    for (const std::string& token : sentence.tokens()) {
      ids.push_back(vocabulary.Add(token));
    }
    counts.AddSentence(ids);
  }
  return NGramModel(std::move(vocabulary), std::move(counts), options.lambda);
}

double NGramModel::ConditionalProbability(int word,
                                          std::span<const int> context) const {
  const int history = order() - 1;
  absl::InlinedVector<int, 8> ctx(history);
  for (int i = 0; i < history; ++i) {
    const int src = static_cast<int>(context.size()) - history + i;
    ctx[i] = src >= 0 ? context[src] : Vocabulary::kBosId;
  }

  const double events = static_cast<double>(counts_.NodeContextCount(0));
  const double outcomes = static_cast<double>(vocabulary_.outcome_count());
  const int unigram = counts_.Child(0, word);
  const double unigram_count =
      unigram < 0 ? 0.0 : static_cast<double>(counts_.NodeCount(unigram));
  double p = (unigram_count + 1.0) / (events + outcomes);

  for (int k = 1; k <= order(); ++k) {
    int node = 0;
    for (int i = history - (k - 1); i < history && node >= 0; ++i) {
      node = counts_.Child(node, ctx[i]);
    }
    if (node < 0) continue;
    const int64_t total = counts_.NodeContextCount(node);
    if (total == 0) continue;
    const int child = counts_.Child(node, word);
    const double hits =
        child < 0 ? 0.0 : static_cast<double>(counts_.NodeCount(child));
    p = lambda_ * hits / static_cast<double>(total) + (1.0 - lambda_) * p;
  }
  return p;
}

double NGramModel::ConditionalProbability(
    std::string_view word, std::span<const std::string> context) const {
  std::vector<int> ids;
  ids.reserve(context.size());
  for (const std::string& w : context) ids.push_back(vocabulary_.Lookup(w));
  return ConditionalProbability(vocabulary_.Lookup(word), ids);
}

double NGramModel::SentenceLogProbability(
    const SentenceTokens& sentence) const {
  const int history = order() - 1;
  std::vector<int> padded(history, Vocabulary::kBosId);
  for (const std::string& token : sentence.tokens()) {
    padded.push_back(vocabulary_.Lookup(token));
  }
  padded.push_back(Vocabulary::kEosId);
  double log_prob = 0.0;
  for (size_t i = history; i < padded.size(); ++i) {
    log_prob += std::log(ConditionalProbability(
        padded[i], std::span<const int>(padded.data() + i - history,
                                        history)));
  }
  return log_prob;
}

nlohmann::json NGramModel::ToJson() const {
  nlohmann::json words = nlohmann::json::array();
  for (int id : vocabulary_.WordIds()) words.push_back(vocabulary_.Word(id));
  nlohmann::json ngrams = nlohmann::json::array();
  counts_.ForEach([&](std::span<const int> ngram, int64_t count) {
    nlohmann::json row = std::vector<int>(ngram.begin(), ngram.end());
    row.push_back(count);
    ngrams.push_back(std::move(row));
  });
  return {{"format", kFormatName},
          {"version", kFormatVersion},
          {"order", order()},
          {"lambda", lambda_},
          {"words", std::move(words)},
          {"ngrams", std::move(ngrams)}};
}

absl::StatusOr<NGramModel> NGramModel::FromJson(const nlohmann::json& json) {
  try {
    if (json.at("format").get<std::string>() != kFormatName) {
      return absl::InvalidArgumentError("not an n-gram model document");
    }
    if (json.at("version").get<int>() != kFormatVersion) {
      return absl::InvalidArgumentError(absl::StrCat(
          "unsupported model version ", json.at("version").dump()));
    }
    const int order = json.at("order").get<int>();
    const double lambda = json.at("lambda").get<double>();
    if (order < 1 || !(lambda > 0.0 && lambda < 1.0)) {
      return absl::InvalidArgumentError("invalid order or lambda");
    }
    Vocabulary vocabulary;
    for (const auto& word : json.at("words")) {
      vocabulary.Add(word.get<std::string>());
    }
    const int id_limit = static_cast<int>(vocabulary.outcome_count()) + 1;
    NGramCounts counts(order);
    std::vector<int> ngram;
    for (const auto& row : json.at("ngrams")) {
      if (row.size() < 2 || row.size() > static_cast<size_t>(order) + 1) {
        return absl::InvalidArgumentError("malformed n-gram row");
      }
      ngram.clear();
      for (size_t i = 0; i + 1 < row.size(); ++i) {
        const int id = row[i].get<int>();
        if (id < 0 || id >= id_limit) {
          return absl::InvalidArgumentError(
              absl::StrCat("word id out of range: ", id));
        }
        ngram.push_back(id);
      }
      counts.AddNGram(ngram, row.back().get<int64_t>());
    }
    return NGramModel(std::move(vocabulary), std::move(counts), lambda);
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed model document: ", e.what()));
  }
}

}  // namespace lm
}  // namespace annot
