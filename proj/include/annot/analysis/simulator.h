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

#ifndef ANNOT_ANALYSIS_SIMULATOR_H_
#define ANNOT_ANALYSIS_SIMULATOR_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "annot/analysis/timeline.h"
#include "annot/lm/ngram_model.h"
#include "json.hpp"

namespace annot {
namespace analysis {

// Values that fill one "{name}" placeholder. With a positive exponent the
// i-th value (0-based) is drawn with weight 1 / (i + 1)^exponent.
struct SlotVocabulary {
  std::string name;
  std::vector<std::string> values;
  double zipf_exponent = 0;
};

struct MotionCategory {
  std::string name;
  int64_t population = 0;
  std::vector<std::string> templates;
  std::vector<SlotVocabulary> slots;
};

struct SimulationConfig {
  std::vector<MotionCategory> categories;
  // Probability that an annotation is a note-form fragment or contains a
  // misspelled word.
  double error_rate = 0.02;
  int64_t annotation_count = 6000;
  // Events served by random-based selection before switching to
  // perplexity-based selection. Unset means random-based throughout.
  std::optional<int64_t> switch_at;
  // Selection snapshots are rebuilt after this many events.
  int64_t recompute_every = 200;
  // Cadence of the reported timeline.
  int64_t timeline_cadence = 50;
  uint64_t seed = 1;
  lm::TrainingOptions language_model;

  absl::Status Check() const;
};

// Five categories, 2000 motions of which 80% are locomotion, 6000 events,
// 2% errors, switch at event 3000, recompute every 200 events.
SimulationConfig ReferenceSimulationConfig(uint64_t seed);

nlohmann::json SimulationConfigToJson(const SimulationConfig& config);
// Missing keys keep the values of `defaults`.
absl::StatusOr<SimulationConfig> SimulationConfigFromJson(
    const nlohmann::json& json, const SimulationConfig& defaults);

struct SimulatedMotion {
  EntryId entry;
  std::string category;
  std::map<std::string, std::string> slots;
};

struct SimulationResult {
  std::vector<SimulatedMotion> motions;
  std::vector<AnnotationEvent> events;
  std::vector<TimelinePoint> timeline;
  int64_t error_events = 0;
};

// Runs synthetic annotators against the selection module. Deterministic for
// a given config.
absl::StatusOr<SimulationResult> Simulate(const SimulationConfig& config);

// Runs one simulation per seed on separate threads. Results follow `seeds`.
std::vector<absl::StatusOr<SimulationResult>> SimulateSeeds(
    const SimulationConfig& config, std::span<const uint64_t> seeds);

}  // namespace analysis
}  // namespace annot

#endif  // ANNOT_ANALYSIS_SIMULATOR_H_
