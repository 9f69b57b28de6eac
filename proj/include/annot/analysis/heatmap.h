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

#ifndef ANNOT_ANALYSIS_HEATMAP_H_
#define ANNOT_ANALYSIS_HEATMAP_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "annot/analysis/ranking.h"

namespace annot {
namespace analysis {

// `count` buckets between `low` and `high` with logarithmic spacing.
// Requires 0 < low < high and count >= 1.
absl::StatusOr<std::vector<double>> LogSpacedEdges(double low, double high,
                                                   int count);

class HeatmapSpec {
 public:
  // Keywords are matched against the normalized words of an annotation; a
  // keyword matches every word it is a prefix of ("walk" matches "walks" and
  // "walking"). Edges must be strictly increasing, at least two of them.
  static absl::StatusOr<HeatmapSpec> Create(std::vector<std::string> keywords,
                                            std::vector<double> edges);

  // Log-spaced edges spanning the perplexities of `scored`.
  static absl::StatusOr<HeatmapSpec> ForScores(
      std::vector<std::string> keywords,
      std::span<const ScoredAnnotation> scored, int buckets = 10);

  const std::vector<std::string>& keywords() const { return keywords_; }
  const std::vector<double>& edges() const { return edges_; }
  int bucket_count() const { return static_cast<int>(edges_.size()) - 1; }

  // Bucket i covers [edges[i], edges[i + 1]); values outside the edges are
  // clamped into the first or last bucket.
  int BucketOf(double perplexity) const;

 private:
  HeatmapSpec(std::vector<std::string> keywords, std::vector<double> edges)
      : keywords_(std::move(keywords)), edges_(std::move(edges)) {}

  std::vector<std::string> keywords_;
  std::vector<double> edges_;
};

struct HeatmapRow {
  std::string keyword;
  // Annotations containing the keyword at least once.
  int64_t occurrences = 0;
  // Fraction of those annotations per bucket. All zero when the keyword
  // never occurs.
  std::vector<double> fractions;
  bool empty() const { return occurrences == 0; }
  // Occurrence-weighted mean of the bucket index; 0 for empty rows.
  double MeanBucket() const;
};

struct Heatmap {
  std::vector<double> edges;
  std::vector<HeatmapRow> rows;
};

Heatmap KeywordHeatmap(std::span<const ScoredAnnotation> scored,
                       const HeatmapSpec& spec);

}  // namespace analysis
}  // namespace annot

#endif  // ANNOT_ANALYSIS_HEATMAP_H_
