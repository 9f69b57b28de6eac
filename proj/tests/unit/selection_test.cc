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

#include <chrono>
#include <cmath>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "absl/status/status.h"
#include "annot/common/rng.h"
#include "annot/lm/language_model.h"
#include "annot/selection/distribution.h"
#include "annot/selection/recompute.h"
#include "annot/selection/selector.h"
#include "gtest/gtest.h"
#include "oracle/fixtures.h"
#include "oracle/interpolated_lm_oracle.h"

namespace annot {
namespace selection {
namespace {

EntryId E(int64_t id) { return EntryId(id); }

std::map<EntryId, double> Frequencies(const SelectionSnapshot& snapshot,
                                      uint64_t seed, int draws,
                                      const EntrySet& skips = {}) {
  Rng rng(seed);
  std::map<EntryId, double> freq;
  for (int i = 0; i < draws; ++i) {
    auto entry = SampleNext(snapshot, rng, skips);
    EXPECT_TRUE(entry.ok());
    freq[*entry] += 1.0 / draws;
  }
  return freq;
}

TEST(MeanMotionPerplexityTest, ArithmeticMean) {
  std::vector<lm::PerplexityScore> two = {lm::PerplexityScore(2.0),
                                          lm::PerplexityScore(4.0)};
  EXPECT_DOUBLE_EQ(*MeanMotionPerplexity(two), 3.0);
  std::vector<lm::PerplexityScore> one = {lm::PerplexityScore(7.3)};
  EXPECT_DOUBLE_EQ(*MeanMotionPerplexity(one), 7.3);
}

TEST(MeanMotionPerplexityTest, EmptyIsAnError) {
  EXPECT_EQ(MeanMotionPerplexity({}).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(MeanMotionPerplexityTest, MatchesOraclePerplexities) {
  const auto corpus = testing::SmallLmCorpus();
  testing::InterpolatedLmOracle oracle(corpus, 4, 0.8);
  std::vector<lm::PerplexityScore> scores;
  double sum = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double ppl = oracle.Perplexity(corpus[i]);
    scores.emplace_back(ppl);
    sum += ppl;
  }
  EXPECT_NEAR(*MeanMotionPerplexity(scores), sum / 5.0, 1e-12);
}

TEST(BuildDistributionTest, ProportionalToMppl) {
  auto snapshot = BuildDistribution({{E(1), 2.0}, {E(2), 2.0}, {E(3), 4.0}});
  ASSERT_TRUE(snapshot.ok());
  EXPECT_DOUBLE_EQ(*snapshot->ProbabilityOf(E(1)), 0.25);
  EXPECT_DOUBLE_EQ(*snapshot->ProbabilityOf(E(2)), 0.25);
  EXPECT_DOUBLE_EQ(*snapshot->ProbabilityOf(E(3)), 0.5);
  EXPECT_FALSE(snapshot->ProbabilityOf(E(4)).has_value());
}

TEST(BuildDistributionTest, SingleMotion) {
  auto snapshot = BuildDistribution({{E(1), 5.0}});
  ASSERT_TRUE(snapshot.ok());
  EXPECT_EQ(*snapshot->ProbabilityOf(E(1)), 1.0);
}

TEST(BuildDistributionTest, RejectsEmptyAndInvalid) {
  EXPECT_EQ(BuildDistribution({}).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_FALSE(BuildDistribution({{E(1), 0.0}}).ok());
  EXPECT_FALSE(BuildDistribution({{E(1), -2.0}}).ok());
  EXPECT_FALSE(BuildDistribution({{E(1), std::nan("")}}).ok());
  EXPECT_FALSE(BuildDistribution({{E(1), HUGE_VAL}}).ok());
}

TEST(BuildDistributionTest, HundredMotionsMatchDirectNormalization) {
  Rng rng(21);
  MpplMap mppls;
  std::vector<double> values;
  for (int i = 0; i < 100; ++i) {
    const double v = 1.0 + 999.0 * rng.Uniform();
    mppls[E(i)] = v;
    values.push_back(v);
  }
  double total = 0.0;
  for (double v : values) total += v;
  auto snapshot = BuildDistribution(mppls);
  ASSERT_TRUE(snapshot.ok());
  double sum = 0.0;
  for (int i = 0; i < 100; ++i) {
    EXPECT_NEAR(*snapshot->ProbabilityOf(E(i)), values[i] / total, 1e-12);
    sum += snapshot->probabilities[i];
  }
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(BuildDistributionTest, ScaleInvariant) {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    MpplMap mppls, scaled;
    const double c = std::exp(20.0 * rng.Uniform() - 10.0);
    for (int i = 0; i < 20; ++i) {
      const double v = 1.0 + 100.0 * rng.Uniform();
      mppls[E(i)] = v;
      scaled[E(i)] = c * v;
    }
    auto a = BuildDistribution(mppls);
    auto b = BuildDistribution(scaled);
    for (int i = 0; i < 20; ++i) {
      EXPECT_NEAR(a->probabilities[i], b->probabilities[i], 1e-12);
    }
  }
}

TEST(SampleNextTest, SingleEligibleMotion) {
  auto snapshot = *BuildDistribution({{E(1), 2.0}, {E(2), 3.0}});
  snapshot.excluded.insert(E(2));
  Rng rng(1);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(*SampleNext(snapshot, rng, {}), E(1));
}

TEST(SampleNextTest, ExclusionRenormalizes) {
  auto snapshot = *BuildDistribution({{E(1), 2.0}, {E(2), 2.0}, {E(3), 4.0}});
  snapshot.excluded.insert(E(3));
  auto freq = Frequencies(snapshot, 2024, 10000);
  EXPECT_NEAR(freq[E(1)], 0.5, 0.02);
  EXPECT_NEAR(freq[E(2)], 0.5, 0.02);
  EXPECT_EQ(freq.count(E(3)), 0u);
}

TEST(SampleNextTest, FollowsDistribution) {
  auto snapshot = *BuildDistribution({{E(1), 1.0}, {E(2), 3.0}, {E(3), 6.0}});
  auto freq = Frequencies(snapshot, 99, 20000);
  EXPECT_NEAR(freq[E(1)], 0.1, 0.015);
  EXPECT_NEAR(freq[E(2)], 0.3, 0.015);
  EXPECT_NEAR(freq[E(3)], 0.6, 0.015);
}

TEST(SampleNextTest, SeededDeterminism) {
  auto snapshot = *BuildDistribution({{E(1), 1.5}, {E(2), 3.0}, {E(7), 9.0}});
  Rng a(42), b(42);
  for (int i = 0; i < 500; ++i) {
    EXPECT_EQ(*SampleNext(snapshot, a, {}), *SampleNext(snapshot, b, {}));
  }
}

TEST(SampleNextTest, NoCandidateAndFallbackOrder) {
  auto snapshot = *BuildDistribution({{E(1), 2.0}, {E(2), 2.0}});
  snapshot.excluded = {E(1)};
  Rng rng(3);
  EntrySet skips = {E(2)};
  EXPECT_TRUE(IsNoCandidate(SampleNext(snapshot, rng, skips).status()));
  // Skips are relaxed first: E(2) is skipped but not excluded.
  for (int i = 0; i < 50; ++i) {
    EXPECT_EQ(*SampleWithFallback(snapshot, rng, skips), E(2));
  }
  // Then exclusions; blocked motions never come back.
  snapshot.excluded = {E(1), E(2)};
  EntrySet blocked = {E(2)};
  for (int i = 0; i < 50; ++i) {
    EXPECT_EQ(*SampleWithFallback(snapshot, rng, skips, blocked), E(1));
  }
  blocked = {E(1), E(2)};
  EXPECT_TRUE(
      IsNoCandidate(SampleWithFallback(snapshot, rng, skips, blocked).status()));
}

// Excluding a motion never lowers the renormalized probability of any other.
TEST(SampleNextTest, ExclusionMonotonicity) {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    MpplMap mppls;
    for (int i = 0; i < 8; ++i) mppls[E(i)] = 1.0 + 50.0 * rng.Uniform();
    auto snapshot = *BuildDistribution(mppls);
    auto restricted = [&](const EntrySet& excluded) {
      std::vector<double> p(8, 0.0);
      double total = 0.0;
      for (int i = 0; i < 8; ++i) {
        if (!excluded.contains(E(i))) total += snapshot.probabilities[i];
      }
      for (int i = 0; i < 8; ++i) {
        if (!excluded.contains(E(i))) p[i] = snapshot.probabilities[i] / total;
      }
      return p;
    };
    EntrySet excluded;
    auto before = restricted(excluded);
    excluded.insert(E(rng.UniformInt(8)));
    auto after = restricted(excluded);
    for (int i = 0; i < 8; ++i) {
      if (!excluded.contains(E(i))) {
        EXPECT_GE(after[i], before[i]);
      }
    }
  }
}

TEST(BootstrapNextTest, UniformOverFewest) {
  CountMap counts = {{E(1), 0}, {E(2), 0}, {E(3), 1}};
  Rng rng(5);
  std::map<EntryId, double> freq;
  for (int i = 0; i < 10000; ++i) freq[*BootstrapNext(counts, rng)] += 1e-4;
  EXPECT_NEAR(freq[E(1)], 0.5, 0.02);
  EXPECT_NEAR(freq[E(2)], 0.5, 0.02);
  EXPECT_EQ(freq.count(E(3)), 0u);
}

TEST(BootstrapNextTest, SymmetricPoolAndSingleton) {
  CountMap counts = {{E(1), 3}, {E(2), 3}, {E(3), 3}};
  Rng rng(6);
  std::map<EntryId, int> hits;
  for (int i = 0; i < 3000; ++i) ++hits[*BootstrapNext(counts, rng)];
  for (int id = 1; id <= 3; ++id) EXPECT_NEAR(hits[E(id)], 1000, 100);
  EXPECT_EQ(*BootstrapNext({{E(9), 0}}, rng), E(9));
  EXPECT_FALSE(BootstrapNext({}, rng).ok());
}

TEST(ChooseStrategyTest, AutoSwitchesAfterFullCoverage) {
  EXPECT_EQ(ChooseStrategy({{E(1), 0}, {E(2), 5}}, StrategyMode::kAuto),
            Strategy::kFewestUniform);
  EXPECT_EQ(ChooseStrategy({{E(1), 1}, {E(2), 5}}, StrategyMode::kAuto),
            Strategy::kPerplexityProportional);
  EXPECT_EQ(ChooseStrategy({{E(1), 1}, {E(2), 5}}, StrategyMode::kRandom),
            Strategy::kFewestUniform);
  EXPECT_EQ(ChooseStrategy({{E(1), 0}}, StrategyMode::kPerplexity),
            Strategy::kPerplexityProportional);
}

TEST(ParseStrategyModeTest, KnownNames) {
  EXPECT_EQ(*ParseStrategyMode("auto"), StrategyMode::kAuto);
  EXPECT_EQ(*ParseStrategyMode("random"), StrategyMode::kRandom);
  EXPECT_EQ(*ParseStrategyMode("perplexity"), StrategyMode::kPerplexity);
  EXPECT_FALSE(ParseStrategyMode("bandit").ok());
}

AnnotationsByMotion TwoClusterAnnotations() {
  AnnotationsByMotion annotations;
  int64_t next_id = 1;
  auto add = [&](int64_t entry, const std::string& text) {
    annotations[E(entry)].push_back({AnnotationId(next_id++), text});
  };
  const char* walks[] = {"A person walks forward.", "A person walks forward slowly.",
                         "A person walks in a circle.", "A person walks backwards.",
                         "A person walks forward and turns around."};
  for (int i = 0; i < 5; ++i) add(1 + i, walks[i]);
  add(10, "Someone performs a waltz with elegant spins.");
  add(11, "The subject throws a ball overhand.");
  return annotations;
}

TEST(RecomputeTest, ProducesValidSnapshotWithoutExclusions) {
  auto result = Recompute(TwoClusterAnnotations());
  ASSERT_TRUE(result.ok()) << result.status();
  EXPECT_TRUE(result->snapshot.excluded.empty());
  EXPECT_EQ(result->snapshot.entries.size(), 7u);
  EXPECT_EQ(result->annotation_perplexities.size(), 7u);
  double sum = 0.0;
  for (double p : result->snapshot.probabilities) {
    EXPECT_GT(p, 0.0);
    sum += p;
  }
  EXPECT_NEAR(sum, 1.0, 1e-12);
  for (const auto& [entry, mppl] : result->mppls) EXPECT_GE(mppl, 1.0);
}

TEST(RecomputeTest, DeterministicForUnchangedCorpus) {
  auto a = Recompute(TwoClusterAnnotations());
  auto b = Recompute(TwoClusterAnnotations());
  EXPECT_EQ(a->snapshot.probabilities, b->snapshot.probabilities);
}

TEST(RecomputeTest, NearDuplicatesLowerRelativeWeight) {
  AnnotationsByMotion annotations = TwoClusterAnnotations();
  auto before = Recompute(annotations);
  ASSERT_TRUE(before.ok());
  const double ratio_before = *before->snapshot.ProbabilityOf(E(1)) /
                              *before->snapshot.ProbabilityOf(E(10));
  int64_t id = 100;
  for (int i = 0; i < 12; ++i) {
    annotations[E(1)].push_back(
        {AnnotationId(id++), i % 2 ? "A person walks forward." : "A person walks forward slowly."});
  }
  auto after = Recompute(annotations);
  ASSERT_TRUE(after.ok());
  const double ratio_after = *after->snapshot.ProbabilityOf(E(1)) /
                             *after->snapshot.ProbabilityOf(E(10));
  EXPECT_LT(ratio_after, ratio_before);
}

TEST(RecomputeTest, Errors) {
  EXPECT_FALSE(Recompute({}).ok());
  AnnotationsByMotion annotations = TwoClusterAnnotations();
  annotations[E(50)].push_back({AnnotationId(999), "?!"});
  EXPECT_EQ(Recompute(annotations).status().code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(SelectorTest, BootstrapsThenSamplesByPerplexity) {
  Selector selector({StrategyMode::kAuto, 7});
  CountMap counts = {{E(1), 0}, {E(2), 1}};
  auto first = selector.Next(counts, {}, {});
  ASSERT_TRUE(first.ok());
  EXPECT_EQ(first->entry, E(1));
  EXPECT_EQ(first->strategy, Strategy::kFewestUniform);

  counts[E(1)] = 1;
  // Without a published snapshot the selector stays on fewest-uniform.
  EXPECT_EQ(selector.Next(counts, {}, {})->strategy, Strategy::kFewestUniform);

  selector.Publish(*BuildDistribution({{E(1), 1.0}, {E(2), 3.0}}));
  auto next = selector.Next(counts, {}, {});
  EXPECT_EQ(next->strategy, Strategy::kPerplexityProportional);

  selector.MarkAnnotated(E(2));
  for (int i = 0; i < 20; ++i) EXPECT_EQ(selector.Next(counts, {}, {})->entry, E(1));
  EXPECT_TRUE(selector.Current().excluded.contains(E(2)));
  selector.Publish(*BuildDistribution({{E(1), 1.0}, {E(2), 3.0}}));
  EXPECT_TRUE(selector.Current().excluded.empty());
  EXPECT_EQ(selector.Current().generation, 2u);
}

TEST(SelectorTest, BlockedAndSkipped) {
  Selector selector({StrategyMode::kRandom, 1});
  CountMap counts = {{E(1), 0}, {E(2), 0}, {E(3), 0}};
  for (int i = 0; i < 30; ++i) {
    auto choice = selector.Next(counts, {E(1)}, {E(2)});
    EXPECT_EQ(choice->entry, E(3));
  }
  // Skips are ignored when nothing else is left; blocks never are.
  EXPECT_EQ(selector.Next(counts, {E(3)}, {E(1), E(2)})->entry, E(3));
  EXPECT_FALSE(selector.Next(counts, {}, {E(1), E(2), E(3)}).ok());
}

TEST(SelectorTest, SeededSequencesRepeat) {
  auto run = [] {
    Selector selector({StrategyMode::kAuto, 1234});
    selector.Publish(*BuildDistribution({{E(1), 1.0}, {E(2), 2.0}, {E(3), 5.0}}));
    CountMap counts = {{E(1), 1}, {E(2), 1}, {E(3), 1}};
    std::vector<EntryId> seq;
    for (int i = 0; i < 100; ++i) seq.push_back(selector.Next(counts, {}, {})->entry);
    return seq;
  };
  EXPECT_EQ(run(), run());
}

TEST(PeriodicTriggerTest, RunsOnTimerAndOnDemand) {
  std::atomic<int> calls{0};
  {
    PeriodicTrigger trigger(absl::Milliseconds(10), [&] { ++calls; });
    trigger.Trigger();
    EXPECT_GE(calls.load(), 1);
    std::this_thread::sleep_for(std::chrono::milliseconds(120));
    EXPECT_GE(trigger.runs(), 3);
  }
  const int settled = calls.load();
  std::this_thread::sleep_for(std::chrono::milliseconds(30));
  EXPECT_EQ(calls.load(), settled);
}

}  // namespace
}  // namespace selection
}  // namespace annot
