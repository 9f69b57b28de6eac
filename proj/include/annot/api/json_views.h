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

#ifndef ANNOT_API_JSON_VIEWS_H_
#define ANNOT_API_JSON_VIEWS_H_

#include <vector>

#include "annot/api/platform.h"
#include "json.hpp"

namespace annot {
namespace api {

// Every response object carries "api_version". Bump it when a field changes
// meaning or disappears.
inline constexpr int kApiVersion = 1;

nlohmann::json SessionJson(const Session& session);
nlohmann::json NextMotionJson(const NextMotion& next);
nlohmann::json LevelJson(int64_t count, const engage::LevelStatus& level);
nlohmann::json SubmitJson(const SubmitResult& result);
nlohmann::json RejectionJson(const validate::Verdict& verdict);
nlohmann::json ReportJson(const store::ProblemReport& report);
nlohmann::json PlaybackJson(const PlaybackData& data);
nlohmann::json LeaderboardJson(const std::vector<engage::LeaderboardRow>& rows,
                               size_t total, size_t offset);
nlohmann::json StatsJson(const store::CorpusCounts& counts);
nlohmann::json SelectionJson(const selection::SelectionSnapshot& snapshot,
                             selection::StrategyMode mode);
nlohmann::json RecomputeJson(const RecomputeSummary& summary);
nlohmann::json ErrorJson(const absl::Status& status);

}  // namespace api
}  // namespace annot

#endif  // ANNOT_API_JSON_VIEWS_H_
