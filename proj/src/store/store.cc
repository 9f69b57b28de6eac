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

#include <algorithm>
#include <utility>

#include "absl/strings/str_cat.h"
#include "annot/common/file_io.h"
#include "annot/store/dataset_archive.h"
#include "json.hpp"

namespace annot {
namespace store {
namespace {

using nlohmann::json;

constexpr char kStoreFile[] = "store.json";
constexpr char kStoreFormat[] = "annot.store";
constexpr int kStoreVersion = 1;

absl::Status UnknownEntry(EntryId id) {
  return absl::NotFoundError(absl::StrCat("unknown entry ", id.value()));
}

int64_t Micros(absl::Time t) { return absl::ToUnixMicros(t); }
absl::Time FromMicros(const json& v) { return absl::FromUnixMicros(v.get<int64_t>()); }

std::filesystem::path BlobPath(const std::filesystem::path& dir, EntryId id,
                               std::string_view suffix) {
  return dir / "blobs" /
         absl::StrCat(id.value(), "_", absl::string_view(suffix.data(), suffix.size()));
}

std::filesystem::path ReleasePath(const std::filesystem::path& dir,
                                  std::string_view date) {
  return dir / "releases" /
         absl::StrCat("dataset-", absl::string_view(date.data(), date.size()), ".zip");
}

}  // namespace

absl::StatusOr<EntryId> Store::AddMotion(NewMotion motion) {
  if (absl::Status s = ingest::ValidateMotionDocument(motion.motion); !s.ok()) {
    return s;
  }
  absl::MutexLock lock(&mu_);
  EntryId id = motion.id;
  if (id.value() == 0) id = EntryId(state_.next_entry_id);
  if (id.value() < 0) return absl::InvalidArgumentError("entry ids are positive");
  if (state_.motions.contains(id)) {
    return absl::AlreadyExistsError(absl::StrCat("entry ", id.value(), " exists"));
  }
  MotionEntry entry;
  entry.id = id;
  entry.raw_c3d = std::move(motion.raw_c3d);
  entry.motion = std::make_shared<const ingest::MotionDocument>(std::move(motion.motion));
  entry.metadata.entry_id = id;
  entry.metadata.source_institution = std::move(motion.source_institution);
  entry.metadata.source_database_id = std::move(motion.source_database_id);
  state_.motions.emplace(id, std::move(entry));
  state_.next_entry_id = std::max(state_.next_entry_id, id.value() + 1);
  return id;
}

void Store::UpsertAnnotator(const AnnotatorId& id, std::string_view display_name) {
  absl::MutexLock lock(&mu_);
  AnnotatorProfile& profile = state_.annotators[id];
  profile.id = id;
  profile.display_name = std::string(display_name);
}

absl::StatusOr<AnnotationRecord> Store::AddAnnotation(EntryId entry,
                                                      const AnnotatorId& annotator,
                                                      std::string_view text,
                                                      absl::Time now) {
  absl::MutexLock lock(&mu_);
  auto it = state_.motions.find(entry);
  if (it == state_.motions.end()) return UnknownEntry(entry);

  AnnotationRecord record;
  record.id = AnnotationId(state_.next_annotation_id++);
  record.entry = entry;
  record.annotator = annotator;
  record.text = std::string(text);
  record.created_at = now;
  state_.annotations.emplace(record.id, record);
  it->second.metadata.annotation_ids.push_back(record.id);

  AnnotatorProfile& profile = state_.annotators[annotator];
  if (profile.id.value().empty()) {
    profile.id = annotator;
    profile.display_name = annotator.value();
  }
  ++profile.annotation_count;
  if (!profile.first_annotation_at) profile.first_annotation_at = now;
  return record;
}

absl::StatusOr<ProblemReport> Store::ReportProblem(EntryId entry,
                                                   const AnnotatorId& annotator,
                                                   std::string_view note,
                                                   absl::Time now) {
  absl::MutexLock lock(&mu_);
  auto it = state_.motions.find(entry);
  if (it == state_.motions.end()) return UnknownEntry(entry);
  ProblemReport report{state_.next_report_id++, entry, annotator,
                       std::string(note), now};
  state_.problem_reports.push_back(report);
  it->second.problem_flag = true;
  return report;
}

absl::Status Store::ClearProblem(EntryId entry) {
  absl::MutexLock lock(&mu_);
  auto it = state_.motions.find(entry);
  if (it == state_.motions.end()) return UnknownEntry(entry);
  it->second.problem_flag = false;
  return absl::OkStatus();
}

void Store::SetCachedPerplexities(const std::map<AnnotationId, double>& values) {
  absl::MutexLock lock(&mu_);
  for (auto& [id, record] : state_.annotations) {
    auto v = values.find(id);
    record.cached_perplexity =
        v == values.end() ? std::nullopt : std::optional<double>(v->second);
  }
}

absl::StatusOr<std::string> Store::PublishRelease(std::string_view release_date) {
  absl::MutexLock lock(&mu_);
  const std::string date(release_date);
  if (state_.releases.contains(date)) {
    return absl::AlreadyExistsError(absl::StrCat("release ", date, " exists"));
  }
  auto archive = ExportDataset(state_, release_date);
  if (!archive.ok()) return archive.status();
  state_.releases.emplace(date, *archive);
  return archive;
}

std::optional<std::string> Store::Release(std::string_view release_date) const {
  absl::MutexLock lock(&mu_);
  auto it = state_.releases.find(std::string(release_date));
  if (it == state_.releases.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> Store::ReleaseDates() const {
  absl::MutexLock lock(&mu_);
  std::vector<std::string> out;
  for (const auto& [date, bytes] : state_.releases) out.push_back(date);
  return out;
}

std::optional<MotionEntry> Store::Motion(EntryId id) const {
  absl::MutexLock lock(&mu_);
  auto it = state_.motions.find(id);
  if (it == state_.motions.end()) return std::nullopt;
  return it->second;
}

std::optional<AnnotatorProfile> Store::Annotator(const AnnotatorId& id) const {
  absl::MutexLock lock(&mu_);
  auto it = state_.annotators.find(id);
  if (it == state_.annotators.end()) return std::nullopt;
  return it->second;
}

std::vector<AnnotatorProfile> Store::Annotators() const {
  absl::MutexLock lock(&mu_);
  std::vector<AnnotatorProfile> out;
  for (const auto& [id, profile] : state_.annotators) out.push_back(profile);
  return out;
}

std::vector<EntryId> Store::MotionIds() const {
  absl::MutexLock lock(&mu_);
  std::vector<EntryId> out;
  for (const auto& [id, entry] : state_.motions) out.push_back(id);
  return out;
}

size_t Store::MotionCount() const {
  absl::MutexLock lock(&mu_);
  return state_.motions.size();
}

selection::CountMap Store::AnnotationCounts() const {
  absl::MutexLock lock(&mu_);
  selection::CountMap out;
  for (const auto& [id, entry] : state_.motions) out[id] = entry.annotation_count();
  return out;
}

selection::EntrySet Store::FlaggedEntries() const {
  absl::MutexLock lock(&mu_);
  selection::EntrySet out;
  for (const auto& [id, entry] : state_.motions) {
    if (entry.problem_flag) out.insert(id);
  }
  return out;
}

selection::AnnotationsByMotion Store::AnnotationTexts() const {
  absl::MutexLock lock(&mu_);
  selection::AnnotationsByMotion out;
  for (const auto& [id, entry] : state_.motions) {
    if (entry.annotation_ids().empty()) continue;
    auto& texts = out[id];
    for (const AnnotationId& aid : entry.annotation_ids()) {
      texts.push_back({aid, state_.annotations.at(aid).text});
    }
  }
  return out;
}

CorpusCounts Store::Counts() const {
  absl::MutexLock lock(&mu_);
  return ComputeCorpusCounts(state_);
}

StoreState Store::Snapshot() const {
  absl::MutexLock lock(&mu_);
  return state_;
}

absl::Status Store::Save(const std::filesystem::path& dir) const {
  const StoreState state = Snapshot();
  json motions = json::array();
  for (const auto& [id, entry] : state.motions) {
    motions.push_back({{"id", id.value()},
                       {"raw", entry.raw_c3d.has_value()},
                       {"problem_flag", entry.problem_flag},
                       {"metadata", ingest::MetadataToJson(entry.metadata)}});
    if (entry.raw_c3d) {
      if (auto s = WriteFileAtomically(BlobPath(dir, id, "raw.c3d"), *entry.raw_c3d);
          !s.ok()) {
        return s;
      }
    }
    if (auto s = WriteFileAtomically(BlobPath(dir, id, "mmm.xml"),
                                     ingest::SerializeMotionDocument(*entry.motion));
        !s.ok()) {
      return s;
    }
  }
  json annotations = json::array();
  for (const auto& [id, r] : state.annotations) {
    json row = {{"id", id.value()},
                {"entry", r.entry.value()},
                {"annotator", r.annotator.value()},
                {"text", r.text},
                {"created_at_us", Micros(r.created_at)}};
    if (r.cached_perplexity) row["perplexity"] = *r.cached_perplexity;
    annotations.push_back(std::move(row));
  }
  json annotators = json::array();
  for (const auto& [id, p] : state.annotators) {
    json row = {{"id", id.value()},
                {"display_name", p.display_name},
                {"annotation_count", p.annotation_count}};
    if (p.first_annotation_at) row["first_annotation_at_us"] = Micros(*p.first_annotation_at);
    annotators.push_back(std::move(row));
  }
  json reports = json::array();
  for (const ProblemReport& r : state.problem_reports) {
    reports.push_back({{"id", r.id},
                       {"entry", r.entry.value()},
                       {"annotator", r.annotator.value()},
                       {"note", r.note},
                       {"created_at_us", Micros(r.created_at)}});
  }
  json releases = json::array();
  for (const auto& [date, bytes] : state.releases) {
    releases.push_back(date);
    if (auto s = WriteFileAtomically(ReleasePath(dir, date), bytes); !s.ok()) return s;
  }
  const json doc = {{"format", kStoreFormat},
                    {"version", kStoreVersion},
                    {"next_entry_id", state.next_entry_id},
                    {"next_annotation_id", state.next_annotation_id},
                    {"next_report_id", state.next_report_id},
                    {"motions", motions},
                    {"annotations", annotations},
                    {"annotators", annotators},
                    {"problem_reports", reports},
                    {"releases", releases}};
  return WriteFileAtomically(dir / kStoreFile, doc.dump(1));
}

absl::StatusOr<StoreState> Store::Load(const std::filesystem::path& dir) {
  auto text = ReadFile(dir / kStoreFile);
  if (!text.ok()) return text.status();
  const json doc = json::parse(*text, nullptr, false);
  if (!doc.is_object() || doc.value("format", "") != kStoreFormat) {
    return absl::InvalidArgumentError(
        absl::StrCat((dir / kStoreFile).string(), " is not a store file"));
  }
  if (doc.value("version", 0) != kStoreVersion) {
    return absl::UnimplementedError("unsupported store version");
  }
  StoreState state;
  try {
    state.next_entry_id = doc.at("next_entry_id").get<int64_t>();
    state.next_annotation_id = doc.at("next_annotation_id").get<int64_t>();
    state.next_report_id = doc.at("next_report_id").get<int64_t>();
    for (const json& m : doc.at("motions")) {
      MotionEntry entry;
      entry.id = EntryId(m.at("id").get<int64_t>());
      entry.problem_flag = m.at("problem_flag").get<bool>();
      auto meta = ingest::MetadataFromJson(m.at("metadata"));
      if (!meta.ok()) return meta.status();
      entry.metadata = *std::move(meta);
      if (m.at("raw").get<bool>()) {
        auto raw = ReadFile(BlobPath(dir, entry.id, "raw.c3d"));
        if (!raw.ok()) return raw.status();
        entry.raw_c3d = *std::move(raw);
      }
      auto xml = ReadFile(BlobPath(dir, entry.id, "mmm.xml"));
      if (!xml.ok()) return xml.status();
      auto motion = ingest::ParseMotionDocument(*xml);
      if (!motion.ok()) return motion.status();
      entry.motion = std::make_shared<const ingest::MotionDocument>(*std::move(motion));
      state.motions.emplace(entry.id, std::move(entry));
    }
    for (const json& a : doc.at("annotations")) {
      AnnotationRecord r;
      r.id = AnnotationId(a.at("id").get<int64_t>());
      r.entry = EntryId(a.at("entry").get<int64_t>());
      r.annotator = AnnotatorId(a.at("annotator").get<std::string>());
      r.text = a.at("text").get<std::string>();
      r.created_at = FromMicros(a.at("created_at_us"));
      if (a.contains("perplexity")) r.cached_perplexity = a["perplexity"].get<double>();
      if (!state.motions.contains(r.entry)) {
        return absl::DataLossError(absl::StrCat("annotation ", r.id.value(),
                                                " refers to a missing entry"));
      }
      state.annotations.emplace(r.id, std::move(r));
    }
    for (const json& p : doc.at("annotators")) {
      AnnotatorProfile profile;
      profile.id = AnnotatorId(p.at("id").get<std::string>());
      profile.display_name = p.at("display_name").get<std::string>();
      profile.annotation_count = p.at("annotation_count").get<int64_t>();
      if (p.contains("first_annotation_at_us")) {
        profile.first_annotation_at = FromMicros(p["first_annotation_at_us"]);
      }
      state.annotators.emplace(profile.id, std::move(profile));
    }
    for (const json& r : doc.at("problem_reports")) {
      state.problem_reports.push_back({r.at("id").get<int64_t>(),
                                       EntryId(r.at("entry").get<int64_t>()),
                                       AnnotatorId(r.at("annotator").get<std::string>()),
                                       r.at("note").get<std::string>(),
                                       FromMicros(r.at("created_at_us"))});
    }
    for (const json& date : doc.at("releases")) {
      auto bytes = ReadFile(ReleasePath(dir, date.get<std::string>()));
      if (!bytes.ok()) return bytes.status();
      state.releases.emplace(date.get<std::string>(), *std::move(bytes));
    }
  } catch (const json::exception& e) {
    return absl::DataLossError(absl::StrCat("store.json: ", e.what()));
  }
  for (const auto& [id, entry] : state.motions) {
    for (const AnnotationId& aid : entry.annotation_ids()) {
      if (!state.annotations.contains(aid)) {
        return absl::DataLossError(absl::StrCat("entry ", id.value(),
                                                " lists missing annotation ", aid.value()));
      }
    }
  }
  return state;
}

}  // namespace store
}  // namespace annot
