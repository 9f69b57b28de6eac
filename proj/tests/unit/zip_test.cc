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

#include "annot/store/zip.h"

#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "oracle/testdata.h"

namespace annot::store {
namespace {

using ::testing::HasSubstr;

std::vector<ZipMember> Members() {
  std::string big;
  for (int i = 0; i < 5000; ++i) big += static_cast<char>((i * 7919) % 251);
  return {{"manifest.json", "{}\n"}, {"1/1_raw.c3d", big}, {"1/1_empty.txt", ""}};
}

TEST(ZipTest, RoundTrip) {
  auto zip = WriteZip(Members());
  ASSERT_TRUE(zip.ok()) << zip.status();
  auto back = ReadZip(*zip);
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(*back, Members());
}

TEST(ZipTest, OutputIsDeterministic) {
  EXPECT_EQ(*WriteZip(Members()), *WriteZip(Members()));
}

TEST(ZipTest, ReadsArchiveFromIndependentWriter) {
  auto back = ReadZip(::annot::testing::ReadTestData("python_made.zip"));
  ASSERT_TRUE(back.ok()) << back.status();
  ASSERT_EQ(back->size(), 2u);
  EXPECT_EQ((*back)[0].name, "hello.txt");
  std::string hello;
  for (int i = 0; i < 20; ++i) hello += "hello from an independent writer\n";
  EXPECT_EQ((*back)[0].data, hello);
  EXPECT_EQ((*back)[1].name, "dir/stored.bin");
  ASSERT_EQ((*back)[1].data.size(), 256u);
  EXPECT_EQ(static_cast<unsigned char>((*back)[1].data[255]), 255);
}

TEST(ZipTest, CorruptedMemberIsNamed) {
  std::string zip = *WriteZip(Members());
  // Flip a byte inside the second member's compressed data.
  const size_t at = zip.find("1/1_raw.c3d") + 11 + 40;
  zip[at] = static_cast<char>(zip[at] ^ 0x5a);
  auto back = ReadZip(zip);
  ASSERT_FALSE(back.ok());
  EXPECT_THAT(back.status().message(), HasSubstr("1/1_raw.c3d"));
}

TEST(ZipTest, RejectsNonArchives) {
  EXPECT_FALSE(ReadZip("").ok());
  EXPECT_FALSE(ReadZip(std::string(100, 'x')).ok());
}

}  // namespace
}  // namespace annot::store
