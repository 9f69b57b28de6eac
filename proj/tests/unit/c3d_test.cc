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

#include "annot/ingest/c3d.h"

#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "oracle/c3d_bytes.h"

namespace annot::ingest {
namespace {

using ::annot::testing::BuildC3dBytes;
using ::annot::testing::C3dBytesSpec;
using ::testing::ElementsAre;
using ::testing::HasSubstr;

C3dBytesSpec TwoMarkersThreeFrames() {
  C3dBytesSpec s;
  s.labels = {"LFHD", "RFHD"};
  s.rate = 100.0f;
  s.scale = -0.1f;
  s.frames = {
      {{{1.5f, -2.25f, 1000.125f}}, {{3.0f, 4.0f, 5.0f}}},
      {{{1.625f, -2.5f, 1001.0f}}, {{3.5f, 4.5f, 5.5f}}},
      {{{0.1f, 0.2f, 0.3f}}, {{-1e4f, 2e4f, 123.456f}}},
  };
  return s;
}

TEST(ParseC3dTest, FloatFileFromIndependentWriter) {
  const C3dBytesSpec spec = TwoMarkersThreeFrames();
  auto doc = ParseC3d(BuildC3dBytes(spec));
  ASSERT_TRUE(doc.ok()) << doc.status();
  EXPECT_THAT(doc->marker_labels, ElementsAre("LFHD", "RFHD"));
  EXPECT_EQ(doc->sample_rate, 100.0);
  ASSERT_EQ(doc->frames.size(), 3u);
  for (size_t f = 0; f < 3; ++f) {
    ASSERT_EQ(doc->frames[f].size(), 2u);
    for (size_t m = 0; m < 2; ++m) {
      const MarkerPoint& p = doc->frames[f][m];
      EXPECT_EQ(p.x, static_cast<double>(spec.frames[f][m][0]));
      EXPECT_EQ(p.y, static_cast<double>(spec.frames[f][m][1]));
      EXPECT_EQ(p.z, static_cast<double>(spec.frames[f][m][2]));
      EXPECT_TRUE(p.valid);
    }
  }
}

TEST(ParseC3dTest, IntegerStorageScalesCoordinates) {
  C3dBytesSpec spec;
  spec.labels = {"M1"};
  spec.scale = 0.5f;
  spec.frames = {{{{10.0f, -20.5f, 0.0f}}}};
  auto doc = ParseC3d(BuildC3dBytes(spec));
  ASSERT_TRUE(doc.ok()) << doc.status();
  EXPECT_EQ(doc->frames[0][0].x, 10.0);
  EXPECT_EQ(doc->frames[0][0].y, -20.5);
  EXPECT_EQ(doc->frames[0][0].z, 0.0);
}

TEST(ParseC3dTest, ResidualWordDecodesMaskAndValidity) {
  C3dBytesSpec spec;
  spec.labels = {"M1"};
  spec.scale = -2.0f;
  spec.frames = {{{{1.0f, 2.0f, 3.0f}}}};
  spec.residual_word = (0x05 << 8) | 7;
  auto doc = ParseC3d(BuildC3dBytes(spec));
  ASSERT_TRUE(doc.ok()) << doc.status();
  EXPECT_TRUE(doc->frames[0][0].valid);
  EXPECT_EQ(doc->frames[0][0].camera_mask, 5);
  EXPECT_EQ(doc->frames[0][0].residual, 14.0);

  spec.residual_word = -1;
  doc = ParseC3d(BuildC3dBytes(spec));
  ASSERT_TRUE(doc.ok()) << doc.status();
  EXPECT_FALSE(doc->frames[0][0].valid);
}

TEST(ParseC3dTest, AnalogWordsAreSkipped) {
  C3dBytesSpec spec = TwoMarkersThreeFrames();
  spec.analog_words_per_frame = 6;
  auto doc = ParseC3d(BuildC3dBytes(spec));
  ASSERT_TRUE(doc.ok()) << doc.status();
  EXPECT_EQ(doc->frames[2][1].x, static_cast<double>(-1e4f));
}

TEST(ParseC3dTest, DecProcessorIsUnsupported) {
  C3dBytesSpec spec = TwoMarkersThreeFrames();
  spec.processor = 85;
  auto doc = ParseC3d(BuildC3dBytes(spec));
  EXPECT_EQ(doc.status().code(), absl::StatusCode::kUnimplemented);
  EXPECT_THAT(doc.status().message(), HasSubstr("DEC"));
  spec.processor = 86;
  EXPECT_EQ(ParseC3d(BuildC3dBytes(spec)).status().code(),
            absl::StatusCode::kUnimplemented);
}

TEST(ParseC3dTest, ShortInputIsMalformed) {
  EXPECT_EQ(ParseC3d(std::string(511, '\0')).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(ParseC3d(std::string()).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(ParseC3dTest, TruncatedPointDataIsMalformed) {
  C3dBytesSpec spec = TwoMarkersThreeFrames();
  for (int i = 0; i < 40; ++i) spec.frames.push_back(spec.frames[0]);
  std::string bytes = BuildC3dBytes(spec);
  bytes.resize(bytes.size() - 512);
  auto doc = ParseC3d(bytes);
  EXPECT_EQ(doc.status().code(), absl::StatusCode::kInvalidArgument);
  EXPECT_THAT(doc.status().message(), HasSubstr("truncated"));
}

TEST(ParseC3dTest, PointCountMismatchIsMalformed) {
  C3dBytesSpec spec = TwoMarkersThreeFrames();
  spec.used_override = 3;
  EXPECT_EQ(ParseC3d(BuildC3dBytes(spec)).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(ParseC3dTest, GarbageAfterHeaderIsMalformedNotACrash) {
  std::string bytes = BuildC3dBytes(TwoMarkersThreeFrames());
  for (size_t i = 516; i < 1024; ++i) bytes[i] = static_cast<char>(0x7f);
  EXPECT_FALSE(ParseC3d(bytes).ok());
}

TEST(SerializeC3dTest, FloatRoundTripIsBitExact) {
  auto parsed = ParseC3d(BuildC3dBytes(TwoMarkersThreeFrames()));
  ASSERT_TRUE(parsed.ok());
  auto written = SerializeC3d(*parsed);
  ASSERT_TRUE(written.ok()) << written.status();
  EXPECT_EQ(written->size() % 512, 0u);
  auto reparsed = ParseC3d(*written);
  ASSERT_TRUE(reparsed.ok()) << reparsed.status();
  EXPECT_EQ(*reparsed, *parsed);
}

TEST(SerializeC3dTest, IntegerRoundTripWithinOneQuantum) {
  C3dDocument doc;
  doc.marker_labels = {"A", "LONGER_LABEL"};
  doc.sample_rate = 120.0;
  doc.scale = 0.25;
  doc.frames = {{{1.1, 2.2, -3.3, 0.0, 0, true}, {100.01, -0.13, 7.0, 0.5, 3, true}},
                {{0.0, 0.0, 0.0, 0.0, 0, false}, {5.0, 5.0, 5.0, 0.0, 0, true}}};
  auto written = SerializeC3d(doc);
  ASSERT_TRUE(written.ok()) << written.status();
  auto back = ParseC3d(*written);
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(back->marker_labels, doc.marker_labels);
  EXPECT_EQ(back->sample_rate, 120.0);
  for (size_t f = 0; f < doc.frames.size(); ++f) {
    for (size_t m = 0; m < 2; ++m) {
      const MarkerPoint& a = doc.frames[f][m];
      const MarkerPoint& b = back->frames[f][m];
      EXPECT_EQ(a.valid, b.valid);
      if (!a.valid) continue;
      EXPECT_LE(std::abs(a.x - b.x), doc.scale);
      EXPECT_LE(std::abs(a.y - b.y), doc.scale);
      EXPECT_LE(std::abs(a.z - b.z), doc.scale);
      EXPECT_EQ(a.camera_mask, b.camera_mask);
    }
  }
}

TEST(SerializeC3dTest, RejectsRaggedFrames) {
  C3dDocument doc;
  doc.marker_labels = {"A", "B"};
  doc.sample_rate = 100.0;
  doc.frames = {{MarkerPoint{}}};
  EXPECT_EQ(SerializeC3d(doc).status().code(),
            absl::StatusCode::kInvalidArgument);
}

}  // namespace
}  // namespace annot::ingest
