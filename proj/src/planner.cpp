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

#include "htrsel/planner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>

#include "htrsel/error.hpp"

namespace htrsel {

namespace {

constexpr double kFractionTolerance = 1e-12;

// Unbiased draw from [0, bound) by rejection.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(perm[i - 1], perm[bounded(rng, i)]);
  }
  return perm;
}

void check_fraction(double f) {
  if (!(f > 0.0 && f <= 1.0)) {
    throw InvalidFraction("fraction " + std::to_string(f) + " is outside (0, 1]");
  }
}

std::string percent_label(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g%%", fraction * 100.0);
  return buf;
}

}  // namespace

std::vector<double> default_fractions() { return {0.0125, 0.025, 0.05, 0.5, 1.0}; }

std::size_t split_line_count(std::size_t total_lines, double fraction) {
  check_fraction(fraction);
  const double exact = static_cast<double>(total_lines) * fraction;
  // Absorb representation error such as 0.29 * 100 = 28.999999999999996.
  const auto count = static_cast<std::size_t>(std::floor(exact + 1e-9 * std::max(1.0, exact)));
  return std::clamp<std::size_t>(count, 1, total_lines);
}

SplitPlan make_split_plan(std::size_t total_lines, std::span<const double> fractions, std::uint64_t seed) {
  std::vector<std::pair<double, std::size_t>> counts;
  counts.reserve(fractions.size());
  if (total_lines == 0) throw DomainError("total_lines must be positive");
  for (double f : fractions) counts.emplace_back(f, split_line_count(total_lines, f));
  return make_split_plan(total_lines, counts, seed);
}

SplitPlan make_split_plan(std::size_t total_lines,
                          std::span<const std::pair<double, std::size_t>> fraction_counts, std::uint64_t seed) {
  if (total_lines == 0) throw DomainError("total_lines must be positive");
  if (fraction_counts.empty()) throw InvalidFraction("at least one fraction is required");

  std::vector<std::pair<double, std::size_t>> sorted(fraction_counts.begin(), fraction_counts.end());
  for (const auto& [f, n] : sorted) {
    check_fraction(f);
    if (n < 1 || n > total_lines) {
      throw InvalidFraction("line count " + std::to_string(n) + " for " + percent_label(f) + " is outside [1, " +
                            std::to_string(total_lines) + "]");
    }
  }
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].first - sorted[i - 1].first <= kFractionTolerance) {
      throw InvalidFraction("duplicate fraction " + percent_label(sorted[i].first));
    }
    if (sorted[i].second < sorted[i - 1].second) {
      throw InvalidFraction("line counts must not decrease as the fraction grows");
    }
  }

  const auto perm = seeded_permutation(total_lines, seed);
  SplitPlan plan;
  plan.total_lines = total_lines;
  for (const auto& [f, n] : sorted) {
    Split s;
    s.fraction = f;
    s.line_count = n;
    s.selected_indices.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n));
    std::sort(s.selected_indices.begin(), s.selected_indices.end());
    plan.splits.push_back(std::move(s));
  }
  return plan;
}

std::optional<std::size_t> SplitPreset::count_for(double fraction) const {
  for (const auto& [f, n] : split_counts) {
    if (std::abs(f - fraction) <= kFractionTolerance) return n;
  }
  return std::nullopt;
}

std::size_t SplitPreset::total_lines() const {
  return split_counts.empty() ? 0 : split_counts.back().second;
}

const std::vector<SplitPreset>& load_paper_presets() {
  static const std::vector<SplitPreset> presets = {
      {"Leopardi", {{0.0125, 15}, {0.025, 32}, {0.05, 65}, {0.5, 652}, {1.0, 1303}}},
      {"Washington", {{0.0125, 6}, {0.025, 13}, {0.05, 26}, {0.5, 263}, {1.0, 526}}},
      {"Saint Gall", {{0.0125, 5}, {0.025, 11}, {0.05, 23}, {0.5, 234}, {1.0, 468}}},
  };
  return presets;
}

std::optional<SplitPreset> find_preset(std::string_view dataset_id) {
  for (const auto& p : load_paper_presets()) {
    if (p.dataset_id == dataset_id) return p;
  }
  return std::nullopt;
}

const std::vector<DatasetCharacteristics>& builtin_dataset_characteristics() {
  using A = AuthorCount;
  const auto row = [](std::string id, std::size_t lines, std::size_t charset, std::string period,
                      std::string language, A authors) {
    return DatasetCharacteristics{id, lines, charset, DatasetMetadata{language, period, authors, lines}};
  };
  static const std::vector<DatasetCharacteristics> rows = {
      row("Washington", 526, 68, "1755", "English", A::one),
      row("Saint Gall", 468, 49, "ca 890-900", "Latin", A::one),
      row("Leopardi", 1303, 76, "1818-1832", "Italian", A::one),
      row("IAM", 6482, 79, "Modern", "English", A::many),
      row("ICFHR16", 8367, 88, "1470-1805", "German", A::many),
      row("Rodrigo", 9000, 105, "1545", "Spanish", A::one),
      row("ICFHR14", 9198, 93, "ca 1760-1832", "English", A::one),
      row("RIMES", 10188, 95, "Modern", "French", A::many),
      row("NorHand", 19653, 111, "1820-1940", "Norwegian", A::many),
      row("LAM", 19830, 89, "1691-1750", "Italian", A::one),
      row("Synthetic for Washington", 23121, 78, "-", "English", A::one),
      row("Synthetic for Saint Gall", 70494, 66, "-", "Latin", A::one),
      row("Synthetic for Leopardi", 89068, 113, "-", "Italian", A::one),
  };
  return rows;
}

SelectionReport emit_report(const DatasetFingerprint& target, std::span<const SimilarityRecord> ranked,
                            const SplitPlan& plan, const ReportOptions& options) {
  if (ranked.empty()) throw EmptyCandidateSet("empty candidate set");

  SelectionReport report;
  report.target_id = target.dataset_id;
  report.ranked.assign(ranked.begin(), ranked.end());
  report.plan = plan;
  const SimilarityRecord& best = ranked.front();
  report.recommended = best.candidate_id;

  char buf[256];
  if (target.avg_char_width_px && best.candidate_avg_char_width_px) {
    const double factor = *target.avg_char_width_px / *best.candidate_avg_char_width_px;
    std::snprintf(buf, sizeof buf, "width adjustment for %s: scale widths by %.6g (%.6g px -> %.6g px per character)",
                  best.candidate_id.c_str(), factor, *best.candidate_avg_char_width_px, *target.avg_char_width_px);
    report.notes.emplace_back(buf);
  }
  for (std::size_t i = 1; i < ranked.size(); ++i) {
    const double gap = ranked[i].kl_unigram - best.kl_unigram;
    if (gap <= options.near_tie_unigram_delta + 1e-9) {
      std::snprintf(buf, sizeof buf, "near tie: %s is within %.6g unigram KL of %s; review before committing",
                    ranked[i].candidate_id.c_str(), gap, best.candidate_id.c_str());
      report.notes.emplace_back(buf);
    }
  }
  return report;
}

}  // namespace htrsel
