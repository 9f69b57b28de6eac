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

#ifndef ANNOT_TESTS_ORACLE_INTERPOLATED_LM_ORACLE_H_
#define ANNOT_TESTS_ORACLE_INTERPOLATED_LM_ORACLE_H_

// Brute-force evaluation of the interpolated n-gram formula. Every count is
// obtained by scanning the padded corpus as plain strings, so this shares no
// code with the trie-based model it is compared against.

#include <cmath>
#include <set>
#include <string>
#include <vector>

namespace annot {
namespace testing {

class InterpolatedLmOracle {
 public:
  InterpolatedLmOracle(const std::vector<std::vector<std::string>>& corpus,
                       int order, double lambda)
      : order_(order), lambda_(lambda) {
    for (const auto& sentence : corpus) {
      std::vector<std::string> padded(order - 1, "<s>");
      for (const auto& w : sentence) {
        padded.push_back(w);
        words_.insert(w);
      }
      padded.push_back("</s>");
      padded_.push_back(std::move(padded));
    }
  }

  // Number of scored positions whose preceding words equal `context` and
  // (when `word` is nonempty) whose own word equals `word`.
  double Occurrences(const std::vector<std::string>& context,
                     const std::string& word) const {
    double n = 0;
    for (const auto& s : padded_) {
      for (size_t i = order_ - 1; i < s.size(); ++i) {
        if (i < context.size()) continue;
        bool match = word.empty() || s[i] == word;
        for (size_t j = 0; match && j < context.size(); ++j) {
          match = s[i - context.size() + j] == context[j];
        }
        if (match) n += 1;
      }
    }
    return n;
  }

  double Probability(std::string word, std::vector<std::string> context) const {
    if (word != "</s>" && !words_.count(word)) word = "<unk>";
    while (static_cast<int>(context.size()) < order_ - 1) {
      context.insert(context.begin(), "<s>");
    }
    const double events = Occurrences({}, "");
    const double outcomes = static_cast<double>(words_.size()) + 2.0;
    double p = (Occurrences({}, word) + 1.0) / (events + outcomes);
    for (int k = 1; k <= order_; ++k) {
      std::vector<std::string> history(context.end() - (k - 1), context.end());
      const double total = Occurrences(history, "");
      if (total == 0) continue;
      p = lambda_ * Occurrences(history, word) / total + (1.0 - lambda_) * p;
    }
    return p;
  }

  double SentenceProbability(const std::vector<std::string>& sentence) const {
    std::vector<std::string> padded(order_ - 1, "<s>");
    padded.insert(padded.end(), sentence.begin(), sentence.end());
    padded.push_back("</s>");
    double p = 1.0;
    for (size_t i = order_ - 1; i < padded.size(); ++i) {
      std::vector<std::string> context(padded.begin() + (i - (order_ - 1)),
                                       padded.begin() + i);
      p *= Probability(padded[i], context);
    }
    return p;
  }

  double Perplexity(const std::vector<std::string>& sentence) const {
    return std::pow(SentenceProbability(sentence),
                    -1.0 / static_cast<double>(sentence.size()));
  }

  const std::set<std::string>& words() const { return words_; }

 private:
  int order_;
  double lambda_;
  std::set<std::string> words_;
  std::vector<std::vector<std::string>> padded_;
};

}  // namespace testing
}  // namespace annot

#endif  // ANNOT_TESTS_ORACLE_INTERPOLATED_LM_ORACLE_H_
