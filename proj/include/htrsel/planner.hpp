// Copyright 2026 The htrsel Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "htrsel/corpus.hpp"
#include "htrsel/similarity.hpp"

namespace htrsel {

struct Split {
  double fraction = 1.0;
  std::size_t line_count = 0;
  std::vector<std::size_t> selected_indices;  // sorted

  bool operator==(const Split&) const = default;
};

/// Fine-tuning budgets over one training set. Splits are ordered by
/// increasing fraction and each one is a subset of the next.
struct SplitPlan {
  std::size_t total_lines = 0;
  std::vector<Split> splits;

  bool operator==(const SplitPlan&) const = default;
};

/// The budgets used throughout: 1.25 %, 2.5 %, 5 %, 50 % and the full set.
std::vector<double> default_fractions();

/// max(1, floor(total * fraction)).
std::size_t split_line_count(std::size_t total_lines, double fraction);

/// Draws one seeded permutation of 0..total-1 and takes prefixes of it.
/// Throws InvalidFraction for values outside (0, 1] or duplicates.
SplitPlan make_split_plan(std::size_t total_lines, std::span<const double> fractions, std::uint64_t seed);

/// Same, but with line counts fixed by the caller (reference presets).
SplitPlan make_split_plan(std::size_t total_lines,
                          std::span<const std::pair<double, std::size_t>> fraction_counts,
                          std::uint64_t seed);

struct SplitPreset {
  std::string dataset_id;
  std::vector<std::pair<double, std::size_t>> split_counts;  // ascending fraction

  std::optional<std::size_t> count_for(double fraction) const;
  std::size_t total_lines() const;
};

/// Reference fine-tuning line counts for Leopardi, Washington and Saint Gall.
const std::vector<SplitPreset>& load_paper_presets();
std::optional<SplitPreset> find_preset(std::string_view dataset_id);

struct DatasetCharacteristics {
  std::string dataset_id;
  std::size_t training_lines = 0;
  std::size_t charset_size = 0;
  DatasetMetadata metadata;
};

/// Line counts, charset sizes, periods, languages and authorship of the
/// reference line-level datasets.
const std::vector<DatasetCharacteristics>& builtin_dataset_characteristics();

struct SelectionReport {
  std::string target_id;
  std::vector<SimilarityRecord> ranked;
  std::string recommended;
  SplitPlan plan;
  std::vector<std::string> notes;
};

struct ReportOptions {
  /// Candidates whose unigram KL is within this distance of the winner are
  /// flagged for manual review.
  double near_tie_unigram_delta = 0.01;
};

SelectionReport emit_report(const DatasetFingerprint& target, std::span<const SimilarityRecord> ranked,
                            const SplitPlan& plan, const ReportOptions& options = {});

}  // namespace htrsel
