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

#include "annot/api/config.h"

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "annot/common/file_io.h"

namespace annot {
namespace api {
namespace {

using nlohmann::json;

std::filesystem::path Resolve(const std::filesystem::path& base,
                              const std::string& value) {
  std::filesystem::path p(value);
  return p.is_absolute() || base.empty() ? p : base / p;
}

}  // namespace

absl::StatusOr<PlatformConfig> ConfigFromJson(const json& j,
                                              const std::filesystem::path& base_dir) {
  if (!j.is_object()) return absl::InvalidArgumentError("config must be a JSON object");
  PlatformConfig c;
  try {
    if (j.contains("listen")) {
      const json& l = j["listen"];
      c.host = l.value("host", c.host);
      c.port = l.value("port", c.port);
    }
    if (j.contains("selection")) {
      const json& s = j["selection"];
      if (s.contains("strategy")) {
        auto mode = selection::ParseStrategyMode(s["strategy"].get<std::string>());
        if (!mode.ok()) return mode.status();
        c.strategy = *mode;
      }
      c.seed = s.value("seed", c.seed);
      if (s.contains("recompute_interval_secs")) {
        const double secs = s["recompute_interval_secs"].get<double>();
        if (!(secs > 0)) {
          return absl::InvalidArgumentError("recompute_interval_secs must be positive");
        }
        c.recompute_interval = absl::Seconds(secs);
      }
    }
    if (j.contains("language_model")) {
      const json& m = j["language_model"];
      c.language_model.order = m.value("order", c.language_model.order);
      c.language_model.lambda = m.value("lambda", c.language_model.lambda);
    }
    if (j.contains("validation")) {
      const json& v = j["validation"];
      c.validation.min_words = v.value("min_words", c.validation.min_words);
      c.validation.max_words = v.value("max_words", c.validation.max_words);
      c.validation.min_dictionary_fraction =
          v.value("min_dictionary_fraction", c.validation.min_dictionary_fraction);
      c.validation.max_sentence_terminators =
          v.value("max_sentence_terminators", c.validation.max_sentence_terminators);
    }
    if (absl::Status s = c.validation.Check(); !s.ok()) return s;
    if (j.contains("dictionary_path")) {
      c.dictionary_path = Resolve(base_dir, j["dictionary_path"].get<std::string>());
    }
    if (j.contains("ladder")) {
      std::vector<engage::Level> levels;
      for (const json& l : j["ladder"]) {
        levels.push_back({l.at("threshold").get<int64_t>(), l.at("title").get<std::string>()});
      }
      auto ladder = engage::LevelLadder::Create(std::move(levels));
      if (!ladder.ok()) return ladder.status();
      c.ladder = *std::move(ladder);
    }
    if (j.contains("session_ttl_secs")) {
      c.session_ttl = absl::Seconds(j["session_ttl_secs"].get<double>());
    }
    if (j.contains("store_dir") && !j["store_dir"].get<std::string>().empty()) {
      c.store_dir = Resolve(base_dir, j["store_dir"].get<std::string>());
    }
    c.admin_token = j.value("admin_token", c.admin_token);
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("config: ", e.what()));
  }
  return c;
}

absl::StatusOr<PlatformConfig> LoadConfig(const std::filesystem::path& path) {
  auto text = ReadFile(path);
  if (!text.ok()) return text.status();
  const json j = json::parse(*text, nullptr, false);
  if (j.is_discarded()) {
    return absl::InvalidArgumentError(absl::StrCat(path.string(), " is not valid JSON"));
  }
  return ConfigFromJson(j, path.parent_path());
}

}  // namespace api
}  // namespace annot
