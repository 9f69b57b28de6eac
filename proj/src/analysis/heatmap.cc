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

#include "annot/analysis/heatmap.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/match.h"
#include "annot/lm/sentence.h"

namespace annot {
namespace analysis {

absl::StatusOr<std::vector<double>> LogSpacedEdges(double low, double high,
                                                   int count) {
  if (!(low > 0) || !(high > low) || count < 1) {
    return absl::InvalidArgumentError(
        "log-spaced edges need 0 < low < high and at least one bucket");
  }
  std::vector<double> edges(count + 1);
  const double step = (std::log(high) - std::log(low)) / count;
  for (int i = 0; i <= count; ++i) {
    edges[i] = std::exp(std::log(low) + step * i);
  }
  edges.front() = low;
  edges.back() = high;
  return edges;
}

absl::StatusOr<HeatmapSpec> HeatmapSpec::Create(
    std::vector<std::string> keywords, std::vector<double> edges) {
  if (edges.size() < 2) {
    return absl::InvalidArgumentError("a heatmap needs at least two edges");
  }
  for (size_t i = 1; i < edges.size(); ++i) {
    if (!(edges[i] > edges[i - 1])) {
      return absl::InvalidArgumentError(
          "heatmap edges must be strictly increasing");
    }
  }
  for (std::string& keyword : keywords) {
    auto words = lm::NormalizeWords(keyword);
    if (words.size() != 1) {
      return absl::InvalidArgumentError("keyword \"" + keyword +
                                        "\" must be a single word");
    }
    keyword = words.front();
  }
  return HeatmapSpec(std::move(keywords), std::move(edges));
}

absl::StatusOr<HeatmapSpec> HeatmapSpec::ForScores(
    std::vector<std::string> keywords,
    std::span<const ScoredAnnotation> scored, int buckets) {
  if (scored.empty()) {
    return absl::FailedPreconditionError("no scored annotations");
  }
  auto [lo, hi] = std::minmax_element(
      scored.begin(), scored.end(),
      [](const ScoredAnnotation& a, const ScoredAnnotation& b) {
        return a.perplexity < b.perplexity;
      });
  double high = hi->perplexity;
  if (!(high > lo->perplexity)) high = lo->perplexity * 2;
  auto edges = LogSpacedEdges(lo->perplexity, high, buckets);
  if (!edges.ok()) return edges.status();
  return Create(std::move(keywords), *std::move(edges));
}

int HeatmapSpec::BucketOf(double perplexity) const {
  auto it = std::upper_bound(edges_.begin(), edges_.end(), perplexity);
  const int index = static_cast<int>(it - edges_.begin()) - 1;
  return std::clamp(index, 0, bucket_count() - 1);
}

double HeatmapRow::MeanBucket() const {
  double mean = 0;
  for (size_t i = 0; i < fractions.size(); ++i) mean += i * fractions[i];
  return mean;
}

Heatmap KeywordHeatmap(std::span<const ScoredAnnotation> scored,
                       const HeatmapSpec& spec) {
  const int buckets = spec.bucket_count();
  std::vector<std::vector<int64_t>> counts(
      spec.keywords().size(), std::vector<int64_t>(buckets, 0));
  for (const ScoredAnnotation& s : scored) {
    const std::vector<std::string> words = lm::NormalizeWords(s.text);
    const int bucket = spec.BucketOf(s.perplexity);
    for (size_t k = 0; k < spec.keywords().size(); ++k) {
      const std::string& keyword = spec.keywords()[k];
      const bool present =
          std::any_of(words.begin(), words.end(), [&](const std::string& w) {
            return absl::StartsWith(w, keyword);
          });
      if (present) ++counts[k][bucket];
    }
  }

  Heatmap heatmap;
  heatmap.edges = spec.edges();
  for (size_t k = 0; k < spec.keywords().size(); ++k) {
    HeatmapRow row;
    row.keyword = spec.keywords()[k];
    row.fractions.assign(buckets, 0.0);
    for (int64_t c : counts[k]) row.occurrences += c;
    if (row.occurrences > 0) {
      for (int b = 0; b < buckets; ++b) {
        row.fractions[b] = static_cast<double>(counts[k][b]) /
                           static_cast<double>(row.occurrences);
      }
    }
    heatmap.rows.push_back(std::move(row));
  }
  return heatmap;
}

}  // namespace analysis
}  // namespace annot
