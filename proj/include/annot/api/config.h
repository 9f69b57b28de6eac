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

#ifndef ANNOT_API_CONFIG_H_
#define ANNOT_API_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "absl/time/time.h"
#include "annot/engage/levels.h"
#include "annot/lm/ngram_model.h"
#include "annot/selection/distribution.h"
#include "annot/validate/validator.h"
#include "json.hpp"

namespace annot {
namespace api {

// Service configuration. Every key is optional in the JSON file:
//   {"listen": {"host": "127.0.0.1", "port": 8080},
//    "selection": {"strategy": "auto", "seed": 0,
//                  "recompute_interval_secs": 3600},
//    "language_model": {"order": 4, "lambda": 0.8},
//    "validation": {"min_words": 4, "max_words": 80,
//                   "min_dictionary_fraction": 0.7,
//                   "max_sentence_terminators": 2},
//    "dictionary_path": "data/dictionary/en_US.words",
//    "ladder": [{"threshold": 0, "title": "Novice"}, ...],
//    "session_ttl_secs": 86400, "store_dir": "", "admin_token": ""}
// Relative paths are resolved against the directory of the config file.
struct PlatformConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  selection::StrategyMode strategy = selection::StrategyMode::kAuto;
  uint64_t seed = 0;
  absl::Duration recompute_interval = absl::Hours(1);
  lm::TrainingOptions language_model;
  validate::ValidationPolicy validation;
  std::filesystem::path dictionary_path;
  engage::LevelLadder ladder = engage::LevelLadder::Default();
  absl::Duration session_ttl = absl::Hours(24);
  // Empty keeps everything in memory.
  std::filesystem::path store_dir;
  // Bearer token for /api/admin/*; empty leaves those endpoints open.
  std::string admin_token;
};

absl::StatusOr<PlatformConfig> ConfigFromJson(const nlohmann::json& json,
                                              const std::filesystem::path& base_dir);
absl::StatusOr<PlatformConfig> LoadConfig(const std::filesystem::path& path);

}  // namespace api
}  // namespace annot

#endif  // ANNOT_API_CONFIG_H_
