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

#ifndef ANNOT_SELECTION_SELECTOR_H_
#define ANNOT_SELECTION_SELECTOR_H_

#include <condition_variable>
#include <cstdint>
#include <functional>
#include <mutex>
#include <thread>

#include "absl/base/thread_annotations.h"
#include "absl/status/statusor.h"
#include "absl/synchronization/mutex.h"
#include "absl/time/time.h"
#include "annot/common/rng.h"
#include "annot/selection/distribution.h"

namespace annot {
namespace selection {

struct SelectorOptions {
  StrategyMode mode = StrategyMode::kAuto;
  uint64_t seed = 0;
};

// Owner of the current snapshot and its exclusion set. Sampling, exclusion
// updates and publication are serialized on one mutex; building a snapshot
// (the expensive part) happens outside of it.
class Selector {
 public:
  struct Choice {
    EntryId entry;
    Strategy strategy;
  };

  explicit Selector(SelectorOptions options);

  // Picks the next motion. `counts` holds the annotation count of every
  // motion that may be served; `blocked` motions are never served and
  // `skips` only when nothing else is left.
  absl::StatusOr<Choice> Next(const CountMap& counts, const EntrySet& skips,
                              const EntrySet& blocked);

  // Removes `entry` from perplexity sampling until the next Publish().
  void MarkAnnotated(EntryId entry);

  // Replaces the current snapshot. The exclusion set starts out empty.
  void Publish(SelectionSnapshot snapshot);

  // Copy of the current snapshot including exclusions.
  SelectionSnapshot Current() const;

  StrategyMode mode() const;
  void set_mode(StrategyMode mode);

 private:
  mutable absl::Mutex mu_;
  StrategyMode mode_ ABSL_GUARDED_BY(mu_);
  Rng rng_ ABSL_GUARDED_BY(mu_);
  SelectionSnapshot snapshot_ ABSL_GUARDED_BY(mu_);
};

// Runs `task` every `interval` on a background thread until destroyed.
// Trigger() runs it immediately on the calling thread.
class PeriodicTrigger {
 public:
  PeriodicTrigger(absl::Duration interval, std::function<void()> task);
  ~PeriodicTrigger();

  PeriodicTrigger(const PeriodicTrigger&) = delete;
  PeriodicTrigger& operator=(const PeriodicTrigger&) = delete;

  void Trigger();
  int64_t runs() const;

 private:
  void Loop();

  const absl::Duration interval_;
  std::function<void()> task_;
  std::mutex task_mu_;
  mutable std::mutex mu_;
  std::condition_variable cv_;
  bool stop_ = false;
  int64_t runs_ = 0;
  std::thread thread_;
};

}  // namespace selection
}  // namespace annot

#endif  // ANNOT_SELECTION_SELECTOR_H_
