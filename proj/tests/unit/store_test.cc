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

#include "annot/store/store.h"

#include <cmath>
#include <filesystem>
#include <set>

#include "annot/store/dataset_archive.h"
#include "annot/store/zip.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "oracle/motions.h"
#include "oracle/store_fixtures.h"

namespace annot::store {
namespace {

using ::annot::testing::FillFiveEntryStore;
using ::annot::testing::MakeMotion;
using ::annot::testing::PublishedProjectionEqual;
using ::testing::ElementsAre;
using ::testing::HasSubstr;

const absl::Time kNow = absl::FromUnixSeconds(1700000000);

EntryId AddPlainMotion(Store& s, double duration = 1.0) {
  NewMotion m;
  m.motion = MakeMotion(duration);
  return *s.AddMotion(std::move(m));
}

TEST(StoreTest, AddMotionAssignsIdsAndRejectsDuplicates) {
  Store s;
  EXPECT_EQ(AddPlainMotion(s), EntryId(1));
  EXPECT_EQ(AddPlainMotion(s), EntryId(2));
  NewMotion m;
  m.id = EntryId(2);
  m.motion = MakeMotion(1.0);
  EXPECT_EQ(s.AddMotion(m).status().code(), absl::StatusCode::kAlreadyExists);
  m.id = EntryId(40);
  EXPECT_EQ(*s.AddMotion(m), EntryId(40));
  EXPECT_EQ(AddPlainMotion(s), EntryId(41));
  m.id = EntryId(0);
  m.motion.frames.clear();
  EXPECT_FALSE(s.AddMotion(m).ok());
}

TEST(StoreTest, AddAnnotationUpdatesCountsAndProfiles) {
  Store s;
  const EntryId e = AddPlainMotion(s);
  auto first = s.AddAnnotation(e, AnnotatorId("ann"), "A person walks forward.", kNow);
  ASSERT_TRUE(first.ok());
  auto second = s.AddAnnotation(e, AnnotatorId("ann"), "Someone walks.", kNow + absl::Seconds(1));
  ASSERT_TRUE(second.ok());
  EXPECT_NE(first->id, second->id);
  EXPECT_EQ(s.AnnotationCounts().at(e), 2);
  EXPECT_THAT(s.Motion(e)->annotation_ids(), ElementsAre(first->id, second->id));
  auto profile = s.Annotator(AnnotatorId("ann"));
  ASSERT_TRUE(profile.has_value());
  EXPECT_EQ(profile->annotation_count, 2);
  EXPECT_EQ(profile->first_annotation_at, kNow);
  EXPECT_EQ(s.AddAnnotation(EntryId(99), AnnotatorId("ann"), "x y z w", kNow).status().code(),
            absl::StatusCode::kNotFound);
  EXPECT_EQ(s.Annotator(AnnotatorId("ann"))->annotation_count, 2);
}

TEST(StoreTest, ProblemReportsFlagAndClear) {
  Store s;
  const EntryId e = AddPlainMotion(s);
  AddPlainMotion(s);
  ASSERT_TRUE(s.ReportProblem(e, AnnotatorId("a"), "markers jump", kNow).ok());
  ASSERT_TRUE(s.ReportProblem(e, AnnotatorId("b"), "again", kNow).ok());
  EXPECT_EQ(s.FlaggedEntries().size(), 1u);
  EXPECT_TRUE(s.FlaggedEntries().contains(e));
  EXPECT_EQ(s.Snapshot().problem_reports.size(), 2u);
  ASSERT_TRUE(s.ClearProblem(e).ok());
  EXPECT_TRUE(s.FlaggedEntries().empty());
  EXPECT_EQ(s.ReportProblem(EntryId(9), AnnotatorId("a"), "", kNow).status().code(),
            absl::StatusCode::kNotFound);
  EXPECT_EQ(s.ClearProblem(EntryId(9)).code(), absl::StatusCode::kNotFound);
}

TEST(CorpusCountsTest, HandCountedFixture) {
  Store s;
  const EntryId a = AddPlainMotion(s, 1.0);
  const EntryId b = AddPlainMotion(s, 2.0);
  AddPlainMotion(s, 4.5);
  ASSERT_TRUE(s.AddAnnotation(a, AnnotatorId("alice"), "A person walks forward.", kNow).ok());
  ASSERT_TRUE(s.AddAnnotation(a, AnnotatorId("bob"), "The person WALKS, then turns left!", kNow).ok());
  ASSERT_TRUE(s.AddAnnotation(b, AnnotatorId("alice"), "Someone jumps.", kNow).ok());
  ASSERT_TRUE(s.AddAnnotation(b, AnnotatorId("carol"), "a person waves with the right hand", kNow).ok());

  const CorpusCounts c = s.Counts();
  EXPECT_EQ(c.recordings, 3);
  EXPECT_DOUBLE_EQ(c.total_duration_secs, 7.5);
  EXPECT_DOUBLE_EQ(c.mean_duration_secs, 2.5);
  EXPECT_DOUBLE_EQ(c.std_duration_secs, std::sqrt(6.5 / 3.0));
  EXPECT_EQ(c.annotations, 4);
  EXPECT_EQ(c.annotators, 3);
  EXPECT_EQ(c.total_words, 19);
  // a person walks forward the then turns left someone jumps waves with right hand
  EXPECT_EQ(c.vocabulary_size, 14);
  EXPECT_DOUBLE_EQ(c.mean_sentence_length, 4.75);
  EXPECT_DOUBLE_EQ(c.std_sentence_length, std::sqrt(3.6875));
}

TEST(CorpusCountsTest, EmptyStoreIsAllZero) {
  EXPECT_EQ(Store().Counts(), CorpusCounts{});
}

TEST(CorpusCountsTest, VocabularyIgnoresCaseAndPunctuation) {
  Store s;
  const EntryId e = AddPlainMotion(s);
  ASSERT_TRUE(s.AddAnnotation(e, AnnotatorId("a"), "Walk walk WALK! walk.", kNow).ok());
  EXPECT_EQ(s.Counts().vocabulary_size, 1);
  EXPECT_EQ(s.Counts().total_words, 4);
}

TEST(ExportDatasetTest, LayoutAndAnnotationArrays) {
  Store s;
  FillFiveEntryStore(s);
  auto zip = ExportDataset(s.Snapshot(), "2016-04-25");
  ASSERT_TRUE(zip.ok()) << zip.status();
  auto members = ReadZip(*zip);
  ASSERT_TRUE(members.ok());
  std::vector<std::string> names;
  for (const auto& m : *members) names.push_back(m.name);
  EXPECT_EQ(names.front(), "manifest.json");
  EXPECT_THAT(std::vector<std::string>(names.begin() + 1, names.begin() + 5),
              ElementsAre("100/100_raw.c3d", "100/100_mmm.xml",
                          "100/100_annotations.json", "100/100_meta.json"));
  EXPECT_EQ(names.size(), 1u + 4 * 5 - 1);  // entry 102 has no raw file

  const auto find = [&](const std::string& name) {
    for (const auto& m : *members) {
      if (m.name == name) return nlohmann::json::parse(m.data);
    }
    return nlohmann::json();
  };
  EXPECT_EQ(find("100/100_annotations.json"),
            nlohmann::json({"A person walks forward.",
                            "Someone walks forward slowly, then stops.",
                            "a person walks straight ahead"}));
  EXPECT_EQ(find("104/104_annotations.json"), nlohmann::json::array());
  EXPECT_EQ(find("102/102_meta.json")["raw_file_available"], false);
  EXPECT_EQ(find("101/101_meta.json")["source"]["institution"], "CMU");
  const auto manifest = find("manifest.json");
  EXPECT_EQ(manifest["release_date"], "2016-04-25");
  EXPECT_EQ(manifest["format_version"], 1);
  EXPECT_TRUE(manifest.contains("documentation"));
}

TEST(ExportDatasetTest, Errors) {
  EXPECT_EQ(ExportDataset(StoreState{}, "2016-04-25").status().code(),
            absl::StatusCode::kFailedPrecondition);
  Store s;
  FillFiveEntryStore(s);
  EXPECT_EQ(ExportDataset(s.Snapshot(), "25.04.2016").status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(ExportDatasetTest, DeterministicBytes) {
  Store a, b;
  FillFiveEntryStore(a);
  FillFiveEntryStore(b);
  EXPECT_EQ(*ExportDataset(a.Snapshot(), "2017-01-01"),
            *ExportDataset(b.Snapshot(), "2017-01-01"));
}

TEST(ImportDatasetTest, RoundTripPreservesEntitiesAndIds) {
  Store s;
  FillFiveEntryStore(s);
  const StoreState original = s.Snapshot();
  auto imported = ImportDataset(*ExportDataset(original, "2016-04-25"));
  ASSERT_TRUE(imported.ok()) << imported.status();
  EXPECT_EQ(imported->release_date, "2016-04-25");
  EXPECT_TRUE(imported->warnings.empty());
  std::string why;
  EXPECT_TRUE(PublishedProjectionEqual(original, imported->state, &why)) << why;
  EXPECT_EQ(imported->state.next_annotation_id, original.next_annotation_id);
  EXPECT_EQ(imported->state.next_entry_id, original.next_entry_id);
}

TEST(ImportDatasetTest, CorruptedMemberIsNamed) {
  Store s;
  FillFiveEntryStore(s);
  std::string zip = *ExportDataset(s.Snapshot(), "2016-04-25");
  const std::string victim = "101/101_mmm.xml";
  const size_t at = zip.find(victim) + victim.size() + 30;
  zip[at] = static_cast<char>(zip[at] ^ 0xff);
  auto imported = ImportDataset(zip);
  ASSERT_FALSE(imported.ok());
  EXPECT_THAT(imported.status().message(), HasSubstr(victim));
}

TEST(ImportDatasetTest, LayoutViolationsAreDescriptive) {
  Store s;
  FillFiveEntryStore(s);
  auto members = *ReadZip(*ExportDataset(s.Snapshot(), "2016-04-25"));
  auto without = [&](const std::string& name) {
    std::vector<ZipMember> kept;
    for (const auto& m : members) {
      if (m.name != name) kept.push_back(m);
    }
    return *WriteZip(kept);
  };
  auto missing = ImportDataset(without("103/103_meta.json"));
  EXPECT_THAT(missing.status().message(), HasSubstr("103/103_meta.json"));
  missing = ImportDataset(without("100/100_raw.c3d"));
  EXPECT_THAT(missing.status().message(), HasSubstr("100/100_raw.c3d"));
  EXPECT_THAT(ImportDataset(without("manifest.json")).status().message(),
              HasSubstr("manifest"));
}

TEST(ImportDatasetTest, UnknownFilesImportWithWarnings) {
  Store s;
  FillFiveEntryStore(s);
  auto members = *ReadZip(*ExportDataset(s.Snapshot(), "2016-04-25"));
  members.push_back({"README.txt", "hello"});
  members.push_back({"100/100_video.mp4", "..."});
  auto imported = ImportDataset(*WriteZip(members));
  ASSERT_TRUE(imported.ok()) << imported.status();
  EXPECT_EQ(imported->warnings.size(), 2u);
  EXPECT_EQ(imported->state.motions.size(), 5u);
}

TEST(StoreTest, PublishReleaseKeepsArchiveByDate) {
  Store s;
  EXPECT_FALSE(s.PublishRelease("2016-04-25").ok());
  FillFiveEntryStore(s);
  ASSERT_TRUE(s.PublishRelease("2016-04-25").ok());
  EXPECT_EQ(s.PublishRelease("2016-04-25").status().code(),
            absl::StatusCode::kAlreadyExists);
  EXPECT_TRUE(s.Release("2016-04-25").has_value());
  EXPECT_FALSE(s.Release("2016-04-26").has_value());
  EXPECT_THAT(s.ReleaseDates(), ElementsAre("2016-04-25"));
}

TEST(StoreTest, SaveLoadRoundTrip) {
  Store s;
  FillFiveEntryStore(s);
  ASSERT_TRUE(s.ReportProblem(EntryId(101), AnnotatorId("bob"), "broken", kNow).ok());
  s.SetCachedPerplexities({{AnnotationId(1), 3.5}});
  ASSERT_TRUE(s.PublishRelease("2016-04-25").ok());
  const auto dir = std::filesystem::path(::testing::TempDir()) / "store_roundtrip";
  std::filesystem::remove_all(dir);
  ASSERT_TRUE(s.Save(dir).ok());
  auto loaded = Store::Load(dir);
  ASSERT_TRUE(loaded.ok()) << loaded.status();
  const StoreState before = s.Snapshot();
  std::string why;
  EXPECT_TRUE(PublishedProjectionEqual(before, *loaded, &why)) << why;
  EXPECT_EQ(loaded->annotations, before.annotations);
  EXPECT_EQ(loaded->annotators, before.annotators);
  EXPECT_TRUE(loaded->motions.at(EntryId(101)).problem_flag);
  EXPECT_EQ(loaded->releases, before.releases);
  EXPECT_EQ(loaded->next_report_id, before.next_report_id);
  EXPECT_EQ(Store::Load(dir / "nope").status().code(), absl::StatusCode::kNotFound);
}

}  // namespace
}  // namespace annot::store
