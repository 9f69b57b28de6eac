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

#include "annot/analysis/report.h"

#include <cstdlib>
#include <fstream>

#include "gtest/gtest.h"
#include "oracle/testdata.h"

namespace annot::analysis {
namespace {

void ExpectGolden(const std::string& actual, const std::string& name) {
  const std::string path =
      ::annot::testing::TestDataPath("analysis/" + name);
  if (std::getenv("ANNOT_UPDATE_GOLDEN") != nullptr) {
    std::ofstream(path) << actual;
    return;
  }
  EXPECT_EQ(actual, ::annot::testing::ReadFile(path)) << name;
}

TEST(CsvFieldTest, QuotesOnlyWhenNeeded) {
  EXPECT_EQ(CsvField("plain text."), "plain text.");
  EXPECT_EQ(CsvField("walks, then stops"), "\"walks, then stops\"");
  EXPECT_EQ(CsvField("a \"quoted\" word"), "\"a \"\"quoted\"\" word\"");
  EXPECT_EQ(CsvField("two\nlines"), "\"two\nlines\"");
}

TEST(ReportGoldenTest, Ranking) {
  const std::vector<ScoredAnnotation> ranking = {
      {"A person walks forward.", 2.5}, {"person dancing, the", 41.125}};
  ExpectGolden(RankingCsv(ranking), "ranking.csv");
  EXPECT_EQ(RankingJson(ranking)[1]["rank"], 2);
}

TEST(ReportGoldenTest, Heatmap) {
  Heatmap map;
  map.edges = {1, 4, 16};
  map.rows = {{"walk", 4, {0.75, 0.25}}, {"swim", 0, {0, 0}}};
  ExpectGolden(HeatmapCsv(map), "heatmap.csv");
  EXPECT_EQ(HeatmapJson(map)["rows"][1]["absent"], true);
}

TEST(ReportGoldenTest, Timeline) {
  const std::vector<TimelinePoint> points = {{50, 40, 3.25, 1.5},
                                             {100, 70, 3.0, 1.75}};
  ExpectGolden(TimelineCsv(points), "timeline.csv");
  EXPECT_EQ(TimelineJson(points)[0]["std_mppl"], 1.5);
}

TEST(ReportGoldenTest, EventLog) {
  const std::vector<AnnotationEvent> events = {
      {1, absl::FromUnixSeconds(1461542400), EntryId(3), "A person waves.",
       selection::Strategy::kFewestUniform},
      {2, absl::FromUnixSeconds(1461542460), EntryId(9), "jumps, \"high\"",
       std::nullopt}};
  ExpectGolden(EventLogCsv(events), "events.csv");
}

}  // namespace
}  // namespace annot::analysis
