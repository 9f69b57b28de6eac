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

#include "annot/selection/selector.h"

#include <chrono>
#include <utility>

namespace annot {
namespace selection {

Selector::Selector(SelectorOptions options)
    : mode_(options.mode), rng_(options.seed) {}

absl::StatusOr<Selector::Choice> Selector::Next(const CountMap& counts,
                                                const EntrySet& skips,
                                                const EntrySet& blocked) {
  // Copies are only made when something is filtered out; the simulator calls
  // this once per event with thousands of motions.
  CountMap filtered;
  if (!blocked.empty()) {
    for (const auto& [entry, count] : counts) {
      if (!blocked.contains(entry)) filtered.emplace(entry, count);
    }
  }
  const CountMap& open = blocked.empty() ? counts : filtered;
  if (open.empty()) return absl::FailedPreconditionError("no eligible motion");

  absl::MutexLock lock(&mu_);
  Strategy strategy = ChooseStrategy(open, mode_);
  if (strategy == Strategy::kPerplexityProportional) {
    if (snapshot_.generation > 0) {
      auto entry = SampleWithFallback(snapshot_, rng_, skips, blocked);
      if (entry.ok()) return Choice{*entry, strategy};
      if (!IsNoCandidate(entry.status())) return entry.status();
    }
    // Nothing has been scored yet, or every scored motion is blocked.
    strategy = Strategy::kFewestUniform;
  }

  CountMap unskipped;
  if (!skips.empty()) {
    for (const auto& [entry, count] : open) {
      if (!skips.contains(entry)) unskipped.emplace(entry, count);
    }
  }
  auto entry = BootstrapNext(unskipped.empty() ? open : unskipped, rng_);
  if (!entry.ok()) return entry.status();
  return Choice{*entry, strategy};
}

void Selector::MarkAnnotated(EntryId entry) {
  absl::MutexLock lock(&mu_);
  snapshot_.excluded.insert(entry);
}

void Selector::Publish(SelectionSnapshot snapshot) {
  absl::MutexLock lock(&mu_);
  snapshot.excluded.clear();
  snapshot.generation = snapshot_.generation + 1;
  snapshot_ = std::move(snapshot);
}

SelectionSnapshot Selector::Current() const {
  absl::MutexLock lock(&mu_);
  return snapshot_;
}

StrategyMode Selector::mode() const {
  absl::MutexLock lock(&mu_);
  return mode_;
}

void Selector::set_mode(StrategyMode mode) {
  absl::MutexLock lock(&mu_);
  mode_ = mode;
}

PeriodicTrigger::PeriodicTrigger(absl::Duration interval,
                                 std::function<void()> task)
    : interval_(interval), task_(std::move(task)) {
  thread_ = std::thread([this] { Loop(); });
}

PeriodicTrigger::~PeriodicTrigger() {
  {
    std::lock_guard<std::mutex> lock(mu_);
    stop_ = true;
  }
  cv_.notify_all();
  thread_.join();
}

void PeriodicTrigger::Trigger() {
  {
    std::lock_guard<std::mutex> task_lock(task_mu_);
    task_();
  }
  std::lock_guard<std::mutex> lock(mu_);
  ++runs_;
}

int64_t PeriodicTrigger::runs() const {
  std::lock_guard<std::mutex> lock(mu_);
  return runs_;
}

void PeriodicTrigger::Loop() {
  const auto period = absl::ToChronoNanoseconds(interval_);
  std::unique_lock<std::mutex> lock(mu_);
  while (!stop_) {
    if (cv_.wait_for(lock, period, [this] { return stop_; })) break;
    lock.unlock();
    Trigger();
    lock.lock();
  }
}

}  // namespace selection
}  // namespace annot
