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

#include "annot/store/dataset_archive.h"

#include <algorithm>
#include <map>
#include <set>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "annot/store/zip.h"
#include "json.hpp"

namespace annot {
namespace store {
namespace {

constexpr char kRawSuffix[] = "raw.c3d";
constexpr char kMotionSuffix[] = "mmm.xml";
constexpr char kAnnotationsSuffix[] = "annotations.json";
constexpr char kMetaSuffix[] = "meta.json";
constexpr char kRawAvailableKey[] = "raw_file_available";
constexpr char kDocumentation[] = "docs/FORMATS.md";

using nlohmann::json;

absl::Status InMember(const std::string& member, const absl::Status& status) {
  return absl::Status(status.code(),
                      absl::StrCat(member, ": ", status.message()));
}

// Splits "7/7_mmm.xml" into (7, "mmm.xml"). Anything else is nullopt.
std::optional<std::pair<int64_t, std::string>> SplitMember(std::string_view name) {
  const size_t slash = name.find('/');
  if (slash == std::string_view::npos) return std::nullopt;
  const std::string_view dir = name.substr(0, slash);
  const std::string_view file = name.substr(slash + 1);
  int64_t id = 0;
  if (dir.empty() || !std::all_of(dir.begin(), dir.end(), absl::ascii_isdigit) ||
      !absl::SimpleAtoi(absl::string_view(dir.data(), dir.size()), &id)) {
    return std::nullopt;
  }
  const std::string prefix = std::string(dir) + "_";
  if (file.substr(0, prefix.size()) != prefix) return std::nullopt;
  return std::make_pair(id, std::string(file.substr(prefix.size())));
}

}  // namespace

std::string MemberPath(EntryId id, std::string_view suffix) {
  return absl::StrCat(id.value(), "/", id.value(), "_",
                      absl::string_view(suffix.data(), suffix.size()));
}

bool IsReleaseDate(std::string_view date) {
  if (date.size() != 10 || date[4] != '-' || date[7] != '-') return false;
  for (size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
    if (!absl::ascii_isdigit(date[i])) return false;
  }
  const int month = (date[5] - '0') * 10 + (date[6] - '0');
  const int day = (date[8] - '0') * 10 + (date[9] - '0');
  return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

absl::StatusOr<std::string> ExportDataset(const StoreState& state,
                                          std::string_view release_date) {
  if (!IsReleaseDate(release_date)) {
    return absl::InvalidArgumentError(
        absl::StrCat("release date must be YYYY-MM-DD, got '",
                     absl::string_view(release_date.data(), release_date.size()), "'"));
  }
  if (state.motions.empty()) {
    return absl::FailedPreconditionError("cannot export an empty store");
  }

  std::vector<ZipMember> members;
  json entries = json::array();
  for (const auto& [id, entry] : state.motions) entries.push_back(id.value());
  const json manifest = {
      {"format_version", kDatasetFormatVersion},
      {"release_date", std::string(release_date)},
      {"documentation", kDocumentation},
      {"entry_count", state.motions.size()},
      {"entries", entries},
      {"entry_files", {kRawSuffix, kMotionSuffix, kAnnotationsSuffix, kMetaSuffix}},
  };
  members.push_back({kManifestName, manifest.dump(2) + "\n"});

  for (const auto& [id, entry] : state.motions) {
    if (entry.motion == nullptr) {
      return absl::InternalError(absl::StrCat("entry ", id.value(), " has no motion document"));
    }
    json texts = json::array();
    for (const AnnotationId& aid : entry.annotation_ids()) {
      auto it = state.annotations.find(aid);
      if (it == state.annotations.end()) {
        return absl::InternalError(absl::StrCat(
            "entry ", id.value(), " lists unknown annotation ", aid.value()));
      }
      texts.push_back(it->second.text);
    }
    json meta = ingest::MetadataToJson(entry.metadata);
    if (entry.raw_c3d) {
      meta.erase(kRawAvailableKey);
      members.push_back({MemberPath(id, kRawSuffix), *entry.raw_c3d});
    } else {
      meta[kRawAvailableKey] = false;
    }
    members.push_back({MemberPath(id, kMotionSuffix),
                       ingest::SerializeMotionDocument(*entry.motion)});
    members.push_back({MemberPath(id, kAnnotationsSuffix), texts.dump(2) + "\n"});
    members.push_back({MemberPath(id, kMetaSuffix), meta.dump(2) + "\n"});
  }
  return WriteZip(members);
}

absl::StatusOr<ImportedDataset> ImportDataset(std::string_view archive) {
  auto members = ReadZip(archive);
  if (!members.ok()) return members.status();

  ImportedDataset out;
  std::map<std::string, const std::string*> by_name;
  for (const ZipMember& m : *members) by_name[m.name] = &m.data;

  auto manifest_it = by_name.find(kManifestName);
  if (manifest_it == by_name.end()) {
    return absl::InvalidArgumentError("archive has no manifest.json");
  }
  const json manifest = json::parse(*manifest_it->second, nullptr, false);
  if (!manifest.is_object() || !manifest.contains("format_version") ||
      !manifest.contains("release_date") || !manifest.contains("entries") ||
      !manifest["entries"].is_array()) {
    return absl::InvalidArgumentError("manifest.json: missing or malformed fields");
  }
  if (manifest["format_version"] != kDatasetFormatVersion) {
    return absl::UnimplementedError(absl::StrCat(
        "manifest.json: unsupported format_version ", manifest["format_version"].dump()));
  }
  out.release_date = manifest["release_date"].get<std::string>();

  std::set<int64_t> listed;
  for (const json& e : manifest["entries"]) {
    if (!e.is_number_integer()) {
      return absl::InvalidArgumentError("manifest.json: entry ids must be integers");
    }
    listed.insert(e.get<int64_t>());
  }
  const std::set<std::string> known_suffixes = {kRawSuffix, kMotionSuffix,
                                                kAnnotationsSuffix, kMetaSuffix};
  for (const auto& [name, data] : by_name) {
    if (name == kManifestName) continue;
    auto split = SplitMember(name);
    if (!split || !listed.contains(split->first) ||
        !known_suffixes.contains(split->second)) {
      out.warnings.push_back(absl::StrCat("ignored unknown member ", name));
    }
  }

  StoreState& state = out.state;
  for (int64_t raw_id : listed) {
    const EntryId id(raw_id);
    auto member = [&](const char* suffix) -> const std::string* {
      auto it = by_name.find(MemberPath(id, suffix));
      return it == by_name.end() ? nullptr : it->second;
    };
    auto require = [&](const char* suffix) -> absl::StatusOr<const std::string*> {
      if (const std::string* data = member(suffix)) return data;
      return absl::InvalidArgumentError(
          absl::StrCat("archive is missing member ", MemberPath(id, suffix)));
    };

    auto meta_text = require(kMetaSuffix);
    if (!meta_text.ok()) return meta_text.status();
    auto meta = ingest::ParseMetadata(**meta_text);
    if (!meta.ok()) return InMember(MemberPath(id, kMetaSuffix), meta.status());
    if (meta->entry_id != id) {
      return absl::InvalidArgumentError(absl::StrCat(
          MemberPath(id, kMetaSuffix), ": id ", meta->entry_id.value(),
          " does not match its directory"));
    }
    bool raw_expected = true;
    if (auto flag = meta->extra.find(kRawAvailableKey); flag != meta->extra.end()) {
      raw_expected = !(flag->is_boolean() && !flag->get<bool>());
      meta->extra.erase(kRawAvailableKey);
    }

    MotionEntry entry;
    entry.id = id;
    if (raw_expected) {
      auto raw = require(kRawSuffix);
      if (!raw.ok()) return raw.status();
      entry.raw_c3d = **raw;
    }

    auto xml = require(kMotionSuffix);
    if (!xml.ok()) return xml.status();
    auto motion = ingest::ParseMotionDocument(**xml);
    if (!motion.ok()) return InMember(MemberPath(id, kMotionSuffix), motion.status());
    entry.motion = std::make_shared<const ingest::MotionDocument>(*std::move(motion));

    auto texts_raw = require(kAnnotationsSuffix);
    if (!texts_raw.ok()) return texts_raw.status();
    const json texts = json::parse(**texts_raw, nullptr, false);
    const std::string texts_path = MemberPath(id, kAnnotationsSuffix);
    if (!texts.is_array() ||
        !std::all_of(texts.begin(), texts.end(), [](const json& t) { return t.is_string(); })) {
      return absl::InvalidArgumentError(
          absl::StrCat(texts_path, ": expected a JSON array of strings"));
    }
    if (texts.size() != meta->annotation_ids.size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          texts_path, ": ", texts.size(), " texts for ",
          meta->annotation_ids.size(), " annotation ids in the metadata"));
    }
    for (size_t i = 0; i < texts.size(); ++i) {
      const AnnotationId aid = meta->annotation_ids[i];
      AnnotationRecord record;
      record.id = aid;
      record.entry = id;
      record.text = texts[i].get<std::string>();
      if (!state.annotations.emplace(aid, std::move(record)).second) {
        return absl::InvalidArgumentError(
            absl::StrCat(texts_path, ": annotation id ", aid.value(),
                         " is used by more than one entry"));
      }
      state.next_annotation_id = std::max(state.next_annotation_id, aid.value() + 1);
    }
    entry.metadata = *std::move(meta);
    state.next_entry_id = std::max(state.next_entry_id, raw_id + 1);
    state.motions.emplace(id, std::move(entry));
  }
  return out;
}

}  // namespace store
}  // namespace annot
