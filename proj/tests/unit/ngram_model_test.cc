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

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "annot/common/rng.h"
#include "annot/lm/language_model.h"
#include "gtest/gtest.h"
#include "oracle/fixtures.h"
#include "oracle/interpolated_lm_oracle.h"

namespace annot {
namespace lm {
namespace {

using ::annot::testing::InterpolatedLmOracle;
using ::annot::testing::SmallLmCorpus;
using ::annot::testing::SmallLmQueries;

std::vector<SentenceTokens> ToSentences(
    const std::vector<std::vector<std::string>>& corpus) {
  std::vector<SentenceTokens> out;
  for (const auto& words : corpus) {
    out.push_back(*SentenceTokens::FromTokens(words));
  }
  return out;
}

NGramModel MustTrain(const std::vector<std::vector<std::string>>& corpus,
                     int order, double lambda = 0.8) {
  auto model = NGramModel::Train(ToSentences(corpus), {order, lambda});
  EXPECT_TRUE(model.ok()) << model.status();
  return *std::move(model);
}

// Context-free model that is certain about every word.
class CertainModel final : public LanguageModel {
 public:
  int order() const override { return 4; }
  double ConditionalProbability(std::string_view,
                                std::span<const std::string>) const override {
    return 1.0;
  }
};

std::vector<std::vector<std::string>> RandomCorpus(Rng& rng, int sentences,
                                                   int vocabulary) {
  std::vector<std::vector<std::string>> corpus;
  for (int s = 0; s < sentences; ++s) {
    std::vector<std::string> sentence;
    const int length = 1 + static_cast<int>(rng.UniformInt(7));
    for (int i = 0; i < length; ++i) {
      sentence.push_back("w" + std::to_string(rng.UniformInt(vocabulary)));
    }
    corpus.push_back(std::move(sentence));
  }
  return corpus;
}

TEST(NGramCountsTest, HandCountedBigrams) {
  NGramModel model = MustTrain({{"a", "b"}}, 2);
  const Vocabulary& v = model.vocabulary();
  const int a = v.Lookup("a"), b = v.Lookup("b");
  const int bos = Vocabulary::kBosId, eos = Vocabulary::kEosId;
  const NGramCounts& c = model.counts();
  EXPECT_EQ(c.Count(std::vector<int>{a}), 1);
  EXPECT_EQ(c.Count(std::vector<int>{b}), 1);
  EXPECT_EQ(c.Count(std::vector<int>{eos}), 1);
  EXPECT_EQ(c.Count(std::vector<int>{bos}), 0);
  EXPECT_EQ(c.Count(std::vector<int>{bos, a}), 1);
  EXPECT_EQ(c.Count(std::vector<int>{a, b}), 1);
  EXPECT_EQ(c.Count(std::vector<int>{b, eos}), 1);
  EXPECT_EQ(c.Count(std::vector<int>{a, a}), 0);
  int distinct = 0;
  c.ForEach([&](std::span<const int>, int64_t) { ++distinct; });
  EXPECT_EQ(distinct, 6);
}

TEST(NGramCountsTest, RepeatedCorpusScalesCounts) {
  const std::vector<std::string> sentence = {"a", "person", "walks", "a",
                                             "circle"};
  NGramModel once = MustTrain({sentence}, 4);
  NGramModel five = MustTrain(std::vector(5, sentence), 4);
  std::map<std::vector<int>, int64_t> single;
  once.counts().ForEach([&](std::span<const int> g, int64_t n) {
    single[std::vector<int>(g.begin(), g.end())] = n;
  });
  size_t seen = 0;
  five.counts().ForEach([&](std::span<const int> g, int64_t n) {
    ++seen;
    EXPECT_EQ(n, 5 * single.at(std::vector<int>(g.begin(), g.end())));
  });
  EXPECT_EQ(seen, single.size());
}

TEST(NGramCountsTest, ContextCountEqualsSumOfExtensions) {
  Rng rng(3);
  for (int order = 1; order <= 4; ++order) {
    NGramModel model = MustTrain(RandomCorpus(rng, 40, 9), order);
    std::map<std::vector<int>, int64_t> sums;
    model.counts().ForEach([&](std::span<const int> g, int64_t n) {
      sums[std::vector<int>(g.begin(), g.end() - 1)] += n;
    });
    for (const auto& [context, sum] : sums) {
      EXPECT_EQ(model.counts().ContextCount(context), sum);
    }
  }
}

TEST(VocabularyTest, DistinctSingleTokenSentences) {
  std::vector<std::vector<std::string>> corpus;
  for (int i = 0; i < 7; ++i) corpus.push_back({"w" + std::to_string(i)});
  NGramModel model = MustTrain(corpus, 4);
  EXPECT_EQ(model.vocabulary().size(), 8u);
  EXPECT_EQ(model.vocabulary().Lookup("never"), Vocabulary::kUnkId);
}

TEST(TrainTest, RejectsBadArguments) {
  EXPECT_EQ(NGramModel::Train({}, {}).status().code(),
            absl::StatusCode::kInvalidArgument);
  auto corpus = ToSentences({{"a"}});
  EXPECT_FALSE(NGramModel::Train(corpus, {0, 0.8}).ok());
  EXPECT_FALSE(NGramModel::Train(corpus, {4, 0.0}).ok());
  EXPECT_FALSE(NGramModel::Train(corpus, {4, 1.0}).ok());
}

TEST(ConditionalProbabilityTest, BigramByHand) {
  // [a b] three times, order 2: N = 9 scored events, 4 outcomes
  // (a, b, <unk>, </s>).
  NGramModel model = MustTrain(std::vector(3, std::vector<std::string>{"a", "b"}), 2);
  const double p0 = (3.0 + 1.0) / (9.0 + 4.0);
  const double p1 = 0.8 * 3.0 / 9.0 + 0.2 * p0;
  const double p2 = 0.8 * 3.0 / 3.0 + 0.2 * p1;
  const std::vector<std::string> context = {"a"};
  EXPECT_NEAR(model.ConditionalProbability("b", context), p2, 1e-15);
  EXPECT_NEAR(p2, 0.86564102564102564, 1e-15);

  InterpolatedLmOracle oracle(std::vector(3, std::vector<std::string>{"a", "b"}),
                              2, 0.8);
  EXPECT_NEAR(oracle.Probability("b", {"a"}), p2, 1e-15);
}

TEST(ConditionalProbabilityTest, UniformModel) {
  UniformModel model(4, 8);
  const std::vector<std::string> context = {"x", "y", "z"};
  EXPECT_DOUBLE_EQ(model.ConditionalProbability("anything", context), 0.125);
}

TEST(ConditionalProbabilityTest, SumsToOneOverOutcomes) {
  Rng rng(11);
  for (int order = 1; order <= 4; ++order) {
    NGramModel model = MustTrain(RandomCorpus(rng, 30, 8), order);
    std::vector<int> outcomes = model.vocabulary().WordIds();
    outcomes.push_back(Vocabulary::kUnkId);
    outcomes.push_back(Vocabulary::kEosId);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<int> context;
      for (int i = 0; i < order - 1; ++i) {
        // Mix observed words, boundary padding and unknown words.
        const uint64_t pick = rng.UniformInt(outcomes.size() + 1);
        context.push_back(pick == outcomes.size() ? Vocabulary::kBosId
                                                  : outcomes[pick]);
      }
      double total = 0.0;
      for (int w : outcomes) {
        const double p = model.ConditionalProbability(w, context);
        EXPECT_GT(p, 0.0);
        EXPECT_LE(p, 1.0);
        total += p;
      }
      EXPECT_NEAR(total, 1.0, 1e-9);
    }
  }
}

TEST(ConditionalProbabilityTest, MatchesBruteForceOracle) {
  const auto corpus = SmallLmCorpus();
  for (int order = 1; order <= 4; ++order) {
    for (double lambda : {0.3, 0.8}) {
      NGramModel model = MustTrain(corpus, order, lambda);
      InterpolatedLmOracle oracle(corpus, order, lambda);
      std::vector<std::string> candidates(oracle.words().begin(),
                                          oracle.words().end());
      candidates.push_back("</s>");
      candidates.push_back("unseen");
      for (const auto& w : candidates) {
        for (const auto& c1 : candidates) {
          std::vector<std::string> context = {"person", c1};
          context.erase(context.begin(),
                        context.end() - std::min<int>(order - 1, 2));
          EXPECT_NEAR(model.ConditionalProbability(w, context),
                      oracle.Probability(w, context), 1e-12)
              << w << " | " << c1 << " order " << order;
        }
      }
    }
  }
}

TEST(SentenceProbabilityTest, UniformModelIncludesEndOfSentence) {
  UniformModel model(4, 8);
  auto s = *SentenceTokens::FromTokens({"a", "b", "c"});
  EXPECT_NEAR(SentenceProbability(model, s), std::pow(0.125, 4), 1e-15);
}

TEST(SentenceProbabilityTest, MatchesOracle) {
  const auto corpus = SmallLmCorpus();
  for (int order = 1; order <= 4; ++order) {
    NGramModel model = MustTrain(corpus, order);
    InterpolatedLmOracle oracle(corpus, order, 0.8);
    for (const auto& query : SmallLmQueries()) {
      auto s = *SentenceTokens::FromTokens(query);
      const double expected = oracle.SentenceProbability(query);
      EXPECT_NEAR(SentenceProbability(model, s) / expected, 1.0, 1e-12);
      // The generic string-based chain must agree with the id-based override.
      EXPECT_NEAR(model.LanguageModel::SentenceLogProbability(s),
                  model.SentenceLogProbability(s), 1e-12);
    }
  }
}

TEST(PerplexityTest, UniformClosedForm) {
  UniformModel model(4, 8);
  auto s = *SentenceTokens::FromTokens({"a", "b", "c", "d", "e", "f", "g"});
  const double expected = std::pow(8.0, 8.0 / 7.0);
  EXPECT_NEAR(Perplexity(model, s).value() / expected, 1.0, 1e-9);
  EXPECT_NEAR(expected, 10.77, 0.005);
}

TEST(PerplexityTest, CertainModelHasPerplexityOne) {
  CertainModel model;
  auto s = *SentenceTokens::FromTokens({"a", "person", "walks"});
  EXPECT_EQ(Perplexity(model, s).value(), 1.0);
}

TEST(PerplexityTest, MatchesOracle) {
  const auto corpus = SmallLmCorpus();
  for (int order = 1; order <= 4; ++order) {
    NGramModel model = MustTrain(corpus, order);
    InterpolatedLmOracle oracle(corpus, order, 0.8);
    for (const auto& query : SmallLmQueries()) {
      auto s = *SentenceTokens::FromTokens(query);
      EXPECT_NEAR(Perplexity(model, s).value() / oracle.Perplexity(query), 1.0,
                  1e-9);
    }
  }
}

TEST(PerplexityTest, AtLeastOne) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    NGramModel model = MustTrain(RandomCorpus(rng, 15, 6), 1 + trial % 4);
    for (const auto& query : RandomCorpus(rng, 10, 8)) {
      auto s = *SentenceTokens::FromTokens(query);
      EXPECT_GE(Perplexity(model, s).value(), 1.0);
    }
  }
}

// Duplicating the corpus leaves every maximum-likelihood ratio unchanged. The
// add-one base term depends on the absolute corpus size, so the only
// difference between the two models is that term, damped by (1 - lambda) at
// every active level.
TEST(DuplicationTest, OnlyTheAddOneBaseMoves) {
  Rng rng(9);
  const double lambda = 0.8;
  for (int trial = 0; trial < 10; ++trial) {
    auto corpus = RandomCorpus(rng, 12, 6);
    auto tripled = corpus;
    for (int k = 0; k < 2; ++k) {
      tripled.insert(tripled.end(), corpus.begin(), corpus.end());
    }
    NGramModel once = MustTrain(corpus, 3, lambda);
    NGramModel thrice = MustTrain(tripled, 3, lambda);
    const Vocabulary& v = once.vocabulary();
    ASSERT_EQ(v.size(), thrice.vocabulary().size());

    once.counts().ForEach([&](std::span<const int> g, int64_t n) {
      std::vector<int> context(g.begin(), g.end() - 1);
      EXPECT_EQ(thrice.counts().Count(g), 3 * n);
      EXPECT_EQ(thrice.counts().ContextCount(context),
                3 * once.counts().ContextCount(context));
    });

    const double events = once.counts().ContextCount(std::vector<int>{});
    const double outcomes = v.outcome_count();
    std::vector<int> ids = v.WordIds();
    ids.push_back(Vocabulary::kEosId);
    for (int w : ids) {
      for (int h : ids) {
        const std::vector<int> context = {Vocabulary::kBosId, h};
        const double c = once.counts().Count(std::vector<int>{w});
        const double base_delta =
            (3 * c + 1) / (3 * events + outcomes) - (c + 1) / (events + outcomes);
        int active = 1;  // the unigram level always has data
        if (once.counts().ContextCount(std::vector<int>{h}) > 0) ++active;
        if (once.counts().ContextCount(context) > 0) ++active;
        const double expected = std::pow(1 - lambda, active) * base_delta;
        EXPECT_NEAR(thrice.ConditionalProbability(w, context) -
                        once.ConditionalProbability(w, context),
                    expected, 1e-14);
      }
    }
  }
}

TEST(SerializationTest, JsonRoundTripPreservesProbabilities) {
  NGramModel model = MustTrain(SmallLmCorpus(), 4);
  auto restored = NGramModel::FromJson(model.ToJson());
  ASSERT_TRUE(restored.ok()) << restored.status();
  EXPECT_EQ(restored->ToJson(), model.ToJson());
  for (const auto& query : SmallLmQueries()) {
    auto s = *SentenceTokens::FromTokens(query);
    EXPECT_EQ(restored->SentenceLogProbability(s),
              model.SentenceLogProbability(s));
  }
}

TEST(SerializationTest, RejectsForeignDocuments) {
  EXPECT_FALSE(NGramModel::FromJson(nlohmann::json::object()).ok());
  auto doc = MustTrain(SmallLmCorpus(), 2).ToJson();
  doc["version"] = 99;
  EXPECT_FALSE(NGramModel::FromJson(doc).ok());
}

}  // namespace
}  // namespace lm
}  // namespace annot
