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

#include "annot/ingest/metadata.h"

#include <set>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"

namespace annot {
namespace ingest {
namespace {

constexpr char kToolKey[] = "motion_annotation_tool";
constexpr char kSourceKey[] = "source";

absl::StatusOr<int64_t> IdValue(const nlohmann::json& v, absl::string_view what) {
  if (v.is_number_integer()) return v.get<int64_t>();
  int64_t parsed = 0;
  if (v.is_string() && absl::SimpleAtoi(v.get<std::string>(), &parsed)) {
    return parsed;
  }
  return absl::InvalidArgumentError(
      absl::StrCat(what, " must be an integer, got ", v.dump()));
}

std::string TextValue(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

}  // namespace

absl::StatusOr<MotionMetadata> MetadataFromJson(const nlohmann::json& json) {
  if (!json.is_object()) {
    return absl::InvalidArgumentError("metadata must be a JSON object");
  }
  MotionMetadata meta;
  meta.extra = json;

  auto tool = json.find(kToolKey);
  if (tool == json.end() || !tool->is_object() || !tool->contains("id")) {
    return absl::InvalidArgumentError(
        absl::StrCat("metadata lacks ", kToolKey, ".id"));
  }
  auto id = IdValue(tool->at("id"), absl::StrCat(kToolKey, ".id"));
  if (!id.ok()) return id.status();
  meta.entry_id = EntryId(*id);

  std::set<int64_t> seen;
  if (auto ids = tool->find("annotation_ids"); ids != tool->end()) {
    if (!ids->is_array()) {
      return absl::InvalidArgumentError("annotation_ids must be an array");
    }
    for (const auto& v : *ids) {
      auto aid = IdValue(v, "annotation id");
      if (!aid.ok()) return aid.status();
      if (!seen.insert(*aid).second) {
        return absl::InvalidArgumentError(
            absl::StrCat("annotation id ", *aid, " appears twice"));
      }
      meta.annotation_ids.emplace_back(*aid);
    }
  }
  auto& extra_tool = meta.extra[kToolKey];
  extra_tool.erase("id");
  extra_tool.erase("annotation_ids");
  if (extra_tool.empty()) meta.extra.erase(kToolKey);

  if (auto source = json.find(kSourceKey); source != json.end()) {
    if (!source->is_object()) {
      return absl::InvalidArgumentError("source must be an object");
    }
    if (source->contains("institution")) {
      meta.source_institution = TextValue(source->at("institution"));
    }
    if (source->contains("id")) meta.source_database_id = TextValue(source->at("id"));
    auto& extra_source = meta.extra[kSourceKey];
    extra_source.erase("institution");
    extra_source.erase("id");
    if (extra_source.empty()) meta.extra.erase(kSourceKey);
  }
  return meta;
}

absl::StatusOr<MotionMetadata> ParseMetadata(std::string_view text) {
  nlohmann::json json = nlohmann::json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (json.is_discarded()) {
    return absl::InvalidArgumentError("metadata is not valid JSON");
  }
  return MetadataFromJson(json);
}

nlohmann::json MetadataToJson(const MotionMetadata& meta) {
  nlohmann::json out = meta.extra.is_object() ? meta.extra : nlohmann::json::object();
  auto& tool = out[kToolKey];
  tool["id"] = meta.entry_id.value();
  auto ids = nlohmann::json::array();
  for (const AnnotationId& id : meta.annotation_ids) ids.push_back(id.value());
  tool["annotation_ids"] = std::move(ids);
  auto& source = out[kSourceKey];
  source["institution"] = meta.source_institution;
  source["id"] = meta.source_database_id;
  return out;
}

std::string SerializeMetadata(const MotionMetadata& meta) {
  return MetadataToJson(meta).dump(2);
}

}  // namespace ingest
}  // namespace annot
