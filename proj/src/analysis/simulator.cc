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

#include "annot/analysis/simulator.h"

#include <algorithm>
#include <cmath>
#include <future>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_replace.h"
#include "annot/common/rng.h"
#include "annot/lm/sentence.h"
#include "annot/selection/recompute.h"
#include "annot/selection/selector.h"

namespace annot {
namespace analysis {
namespace {

constexpr uint64_t kSelectorSalt = 0x5e1ec7;
const absl::Time kEpoch = absl::FromUnixSeconds(1451606400);  // 2016-01-01

class SlotSampler {
 public:
  explicit SlotSampler(const SlotVocabulary& vocabulary)
      : vocabulary_(&vocabulary) {
    double total = 0;
    for (size_t i = 0; i < vocabulary.values.size(); ++i) {
      total += 1.0 / std::pow(static_cast<double>(i + 1),
                              vocabulary.zipf_exponent);
      cumulative_.push_back(total);
    }
  }

  const std::string& Draw(Rng& rng) const {
    const double u = rng.Uniform() * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    const size_t i = std::min<size_t>(it - cumulative_.begin(),
                                      cumulative_.size() - 1);
    return vocabulary_->values[i];
  }

 private:
  const SlotVocabulary* vocabulary_;
  std::vector<double> cumulative_;
};

std::string Render(const std::string& pattern,
                   const std::map<std::string, std::string>& slots) {
  std::vector<std::pair<std::string, std::string>> replacements;
  for (const auto& [name, value] : slots) {
    replacements.emplace_back(absl::StrCat("{", name, "}"), value);
  }
  return absl::StrReplaceAll(pattern, replacements);
}

// A short run of words without capitals or punctuation, as in a hasty note.
std::string Fragment(const std::string& sentence, Rng& rng) {
  const std::vector<std::string> words = lm::NormalizeWords(sentence);
  if (words.size() <= 2) return absl::StrJoin(words, " ");
  const size_t span = std::min<size_t>(2 + rng.UniformInt(2), words.size() - 1);
  const size_t start = rng.UniformInt(words.size() - span + 1);
  return absl::StrJoin(words.begin() + start, words.begin() + start + span,
                       " ");
}

// Swaps two adjacent letters of one word with at least four letters.
std::string Misspell(std::string sentence, Rng& rng) {
  std::vector<std::pair<size_t, size_t>> words;
  size_t i = 0;
  while (i < sentence.size()) {
    while (i < sentence.size() && !std::isalpha(uint8_t(sentence[i]))) ++i;
    const size_t start = i;
    while (i < sentence.size() && std::isalpha(uint8_t(sentence[i]))) ++i;
    if (i - start >= 4) words.emplace_back(start, i - start);
  }
  if (words.empty()) return sentence;
  const auto [start, length] = rng.Pick(words);
  const size_t at = start + 1 + rng.UniformInt(length - 2);
  std::swap(sentence[at - 1], sentence[at]);
  if (sentence[at - 1] == sentence[at]) sentence.insert(at, 1, sentence[at]);
  return sentence;
}

absl::Status Republish(const selection::AnnotationsByMotion& annotations,
                       const SimulationConfig& config, int64_t event,
                       selection::Selector& selector) {
  auto result = selection::Recompute(annotations, config.language_model,
                                     kEpoch + absl::Minutes(10 * event));
  if (!result.ok()) return result.status();
  selector.Publish(std::move(result->snapshot));
  return absl::OkStatus();
}

}  // namespace

absl::Status SimulationConfig::Check() const {
  if (categories.empty()) {
    return absl::InvalidArgumentError("simulation needs a category");
  }
  for (const MotionCategory& c : categories) {
    if (c.population <= 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("category ", c.name, " needs a positive population"));
    }
    if (c.templates.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("category ", c.name, " has no templates"));
    }
    for (const SlotVocabulary& slot : c.slots) {
      if (slot.values.empty() || slot.zipf_exponent < 0) {
        return absl::InvalidArgumentError(absl::StrCat(
            "slot ", slot.name, " of ", c.name,
            " needs values and a non-negative exponent"));
      }
    }
  }
  if (!(error_rate >= 0 && error_rate < 1)) {
    return absl::InvalidArgumentError("error rate must lie in [0, 1)");
  }
  if (annotation_count <= 0 || recompute_every <= 0 || timeline_cadence <= 0) {
    return absl::InvalidArgumentError(
        "annotation count, recompute interval and timeline cadence must be "
        "positive");
  }
  if (switch_at && (*switch_at < 0 || *switch_at > annotation_count)) {
    return absl::InvalidArgumentError(
        "switch point must lie within the annotation count");
  }
  return absl::OkStatus();
}

SimulationConfig ReferenceSimulationConfig(uint64_t seed) {
  SimulationConfig config;
  config.seed = seed;
  config.switch_at = 3000;

  MotionCategory locomotion{
      "locomotion",
      1600,
      {"A person {gait} {direction}.", "A person {gait} {direction} {pace}.",
       "Someone {gait} {pace} {direction}.", "The person {gait} {direction}.",
       "A person {gait} {direction} and stops.",
       "A human {gait} {direction} {pace}."},
      {{"gait", {"walks", "runs", "jogs"}, 0.5},
       {"direction",
        {"forward", "backwards", "in a circle", "to the left", "to the right",
         "forward and turns around"},
        0.5},
       {"pace", {"slowly", "quickly", "at normal speed"}, 0}}};

  MotionCategory manipulation{
      "manipulation",
      100,
      {"A person {action} a {object} with the {hand}.",
       "Someone {action} the {object}.",
       "A person stands and {action} a {object}."},
      {{"action",
        {"picks up", "puts down", "lifts", "pushes", "pulls", "wipes",
         "stirs", "shakes", "opens", "closes", "carries", "drops", "grasps",
         "rotates", "inspects"},
        1.0},
       {"object",
        {"box", "cup", "bottle", "bowl", "sponge", "ladder", "chair",
         "banana", "knife", "whisk", "drawer", "door", "towel", "spoon",
         "hammer", "plate", "bucket", "pitcher"},
        1.0},
       {"hand", {"right hand", "left hand", "both hands"}, 0}}};

  MotionCategory gesture{
      "gesture",
      100,
      {"A person {gesture} with the {hand}.", "Someone {gesture}.",
       "A person stands still and {gesture}."},
      {{"gesture",
        {"waves", "points", "claps", "bows", "salutes", "shrugs", "nods",
         "beckons", "gesticulates", "applauds", "stretches", "yawns",
         "scratches the head", "crosses the arms"},
        1.0},
       {"hand", {"right hand", "left hand", "both hands"}, 0}}};

  MotionCategory sports{
      "sports",
      100,
      {"A person {sport}.", "Someone {sport} {manner}.",
       "An athlete {sport}."},
      {{"sport",
        {"kicks a ball", "throws a ball", "swings a golf club", "plays tennis",
         "punches", "does jumping jacks", "does squats", "does pushups",
         "dribbles a basketball", "swings a baseball bat", "does a cartwheel",
         "skips rope", "performs a karate kick", "does lunges"},
        1.0},
       {"manner", {"vigorously", "carefully", "repeatedly", "twice"}, 0.5}}};

  MotionCategory dance{
      "dance",
      100,
      {"A person dances a {dance}.", "Someone is dancing a {dance} {manner}.",
       "A dancer performs a {dance}."},
      {{"dance",
        {"waltz", "samba", "cha cha", "salsa", "tango", "rumba", "foxtrot",
         "jive", "quickstep", "paso doble", "polka", "flamenco"},
        1.0},
       {"manner", {"elegantly", "slowly", "energetically", "in place"}, 0.5}}};

  config.categories = {locomotion, manipulation, gesture, sports, dance};
  return config;
}

nlohmann::json SimulationConfigToJson(const SimulationConfig& config) {
  nlohmann::json categories = nlohmann::json::array();
  for (const MotionCategory& c : config.categories) {
    nlohmann::json slots = nlohmann::json::array();
    for (const SlotVocabulary& s : c.slots) {
      slots.push_back({{"name", s.name},
                       {"values", s.values},
                       {"zipf_exponent", s.zipf_exponent}});
    }
    categories.push_back({{"name", c.name},
                          {"population", c.population},
                          {"templates", c.templates},
                          {"slots", slots}});
  }
  nlohmann::json json = {
      {"categories", categories},
      {"error_rate", config.error_rate},
      {"annotation_count", config.annotation_count},
      {"switch_at", nullptr},
      {"recompute_every", config.recompute_every},
      {"timeline_cadence", config.timeline_cadence},
      {"seed", config.seed},
      {"order", config.language_model.order},
      {"lambda", config.language_model.lambda}};
  if (config.switch_at) json["switch_at"] = *config.switch_at;
  return json;
}

absl::StatusOr<SimulationConfig> SimulationConfigFromJson(
    const nlohmann::json& json, const SimulationConfig& defaults) {
  SimulationConfig config = defaults;
  try {
    if (!json.is_object()) {
      return absl::InvalidArgumentError("simulation config must be an object");
    }
    if (json.contains("categories")) {
      config.categories.clear();
      for (const nlohmann::json& c : json.at("categories")) {
        MotionCategory category;
        category.name = c.at("name").get<std::string>();
        category.population = c.at("population").get<int64_t>();
        category.templates = c.at("templates").get<std::vector<std::string>>();
        for (const nlohmann::json& s : c.value("slots", nlohmann::json::array())) {
          category.slots.push_back(
              {s.at("name").get<std::string>(),
               s.at("values").get<std::vector<std::string>>(),
               s.value("zipf_exponent", 0.0)});
        }
        config.categories.push_back(std::move(category));
      }
    }
    config.error_rate = json.value("error_rate", config.error_rate);
    config.annotation_count =
        json.value("annotation_count", config.annotation_count);
    if (json.contains("switch_at")) {
      if (json["switch_at"].is_null()) {
        config.switch_at.reset();
      } else {
        config.switch_at = json["switch_at"].get<int64_t>();
      }
    }
    config.recompute_every =
        json.value("recompute_every", config.recompute_every);
    config.timeline_cadence =
        json.value("timeline_cadence", config.timeline_cadence);
    config.seed = json.value("seed", config.seed);
    config.language_model.order =
        json.value("order", config.language_model.order);
    config.language_model.lambda =
        json.value("lambda", config.language_model.lambda);
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("invalid simulation config: ", e.what()));
  }
  if (absl::Status s = config.Check(); !s.ok()) return s;
  return config;
}

absl::StatusOr<SimulationResult> Simulate(const SimulationConfig& config) {
  if (absl::Status s = config.Check(); !s.ok()) return s;
  Rng rng(config.seed);
  SimulationResult result;

  std::vector<std::vector<SlotSampler>> samplers;
  std::vector<size_t> category_of;
  for (size_t c = 0; c < config.categories.size(); ++c) {
    const MotionCategory& category = config.categories[c];
    samplers.emplace_back();
    for (const SlotVocabulary& slot : category.slots) {
      samplers.back().emplace_back(slot);
    }
    for (int64_t i = 0; i < category.population; ++i) {
      SimulatedMotion motion;
      motion.category = category.name;
      for (size_t s = 0; s < category.slots.size(); ++s) {
        motion.slots[category.slots[s].name] = samplers[c][s].Draw(rng);
      }
      result.motions.push_back(std::move(motion));
      category_of.push_back(c);
    }
  }
  // Ids are assigned after shuffling so that categories interleave.
  std::vector<size_t> order(result.motions.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.Shuffle(order);
  std::vector<SimulatedMotion> shuffled;
  std::vector<size_t> shuffled_category;
  for (size_t i = 0; i < order.size(); ++i) {
    shuffled.push_back(std::move(result.motions[order[i]]));
    shuffled.back().entry = EntryId(static_cast<int64_t>(i) + 1);
    shuffled_category.push_back(category_of[order[i]]);
  }
  result.motions = std::move(shuffled);
  category_of = std::move(shuffled_category);

  selection::Selector selector({selection::StrategyMode::kRandom,
                                config.seed ^ kSelectorSalt});
  selection::CountMap counts;
  for (const SimulatedMotion& m : result.motions) counts[m.entry] = 0;
  selection::AnnotationsByMotion annotations;
  int64_t last_publish = -1;

  for (int64_t event = 0; event < config.annotation_count; ++event) {
    const bool switching = config.switch_at && event == *config.switch_at;
    if (switching) selector.set_mode(selection::StrategyMode::kPerplexity);
    if (!annotations.empty() &&
        ((event > 0 && event % config.recompute_every == 0) ||
         (switching && last_publish != event))) {
      if (absl::Status s = Republish(annotations, config, event, selector);
          !s.ok()) {
        return s;
      }
      last_publish = event;
    }

    auto choice = selector.Next(counts, {}, {});
    if (!choice.ok()) return choice.status();
    const size_t index = static_cast<size_t>(choice->entry.value() - 1);
    const SimulatedMotion& motion = result.motions[index];
    const MotionCategory& category = config.categories[category_of[index]];

    std::string text = Render(rng.Pick(category.templates), motion.slots);
    if (rng.Bernoulli(config.error_rate)) {
      text = rng.Bernoulli(0.5) ? Fragment(text, rng) : Misspell(text, rng);
      ++result.error_events;
    }

    const int64_t sequence = event + 1;
    if (lm::Normalize(text).ok()) {
      annotations[motion.entry].push_back({AnnotationId(sequence), text});
    }
    ++counts[motion.entry];
    selector.MarkAnnotated(motion.entry);
    result.events.push_back({sequence, kEpoch + absl::Minutes(10 * sequence),
                             motion.entry, std::move(text),
                             choice->strategy});
  }

  auto timeline = PerplexityTimeline(result.events, config.timeline_cadence,
                                     config.language_model);
  if (!timeline.ok()) return timeline.status();
  result.timeline = *std::move(timeline);
  return result;
}

std::vector<absl::StatusOr<SimulationResult>> SimulateSeeds(
    const SimulationConfig& config, std::span<const uint64_t> seeds) {
  std::vector<std::future<absl::StatusOr<SimulationResult>>> runs;
  for (uint64_t seed : seeds) {
    SimulationConfig seeded = config;
    seeded.seed = seed;
    runs.push_back(std::async(std::launch::async, [seeded] {
      return Simulate(seeded);
    }));
  }
  std::vector<absl::StatusOr<SimulationResult>> results;
  for (auto& run : runs) results.push_back(run.get());
  return results;
}

}  // namespace analysis
}  // namespace annot
