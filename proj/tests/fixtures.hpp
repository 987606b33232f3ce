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

// Reference comparison tables and helpers that turn them into fingerprints.

#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "htrsel/corpus.hpp"

namespace fixtures {

struct TableRow {
  std::string id;
  std::optional<double> lexical_similarity;
  double kl[3];
  double ft_cer;
  double ft_wer;
};

struct ComparisonTable {
  std::string target;
  std::string language;
  std::vector<TableRow> rows;  // reference order
};

// Language comparison of each target collection against the pretraining
// datasets: lexical similarity, unigram/bigram/trigram KL and CER/WER after
// fine-tuning on 1.25 % of the target lines.
inline const std::vector<ComparisonTable>& comparison_tables() {
  static const std::vector<ComparisonTable> tables = {
      {"Leopardi",
       "Italian",
       {
           {"LAM", std::nullopt, {0.02, 0.09, 0.23}, 12.7, 42.0},
           {"Synthetic for Leopardi", std::nullopt, {0.05, 0.19, 0.54}, 35.6, 80.9},
           {"RIMES", 9.54, {0.11, 0.84, 1.89}, 25.3, 68.7},
           {"IAM", 6.76, {0.17, 0.85, 1.62}, 21.7, 63.2},
           {"ICFHR14", 6.76, {0.17, 0.91, 1.83}, 23.6, 67.7},
           {"Rodrigo", 10.45, {0.20, 0.71, 1.48}, 34.9, 81.1},
           {"NorHand", 3.99, {0.34, 1.15, 2.06}, 21.0, 63.1},
           {"ICFHR16", 4.19, {0.40, 1.50, 2.50}, 39.0, 86.0},
       }},
      {"Saint Gall",
       "Latin",
       {
           {"LAM", 5.81, {0.17, 0.87, 1.59}, 20.8, 77.8},
           {"Rodrigo", 6.08, {0.18, 0.89, 1.74}, 14.4, 66.4},
           {"RIMES", 5.39, {0.19, 0.87, 1.74}, 28.2, 94.2},
           {"ICFHR14", 3.50, {0.20, 0.79, 1.43}, 20.4, 77.8},
           {"IAM", 3.50, {0.21, 0.74, 1.31}, 16.5, 68.3},
           {"Synthetic for Saint Gall", std::nullopt, {0.23, 0.60, 1.08}, 18.8, 76.1},
           {"NorHand", 2.39, {0.42, 1.22, 1.78}, 27.0, 87.9},
           {"ICFHR16", 2.73, {0.58, 1.60, 2.10}, 32.0, 94.2},
       }},
      {"Washington",
       "English",
       {
           {"ICFHR14", std::nullopt, {0.05, 0.30, 0.66}, 26.1, 64.6},
           {"Synthetic for Washington", std::nullopt, {0.07, 0.31, 0.69}, 23.9, 63.4},
           {"IAM", std::nullopt, {0.08, 0.30, 0.59}, 18.8, 52.7},
           {"NorHand", 4.30, {0.29, 1.03, 1.64}, 31.4, 76.7},
           {"RIMES", 9.67, {0.31, 1.36, 2.22}, 27.1, 78.9},
           {"Rodrigo", 7.91, {0.35, 1.38, 2.32}, 48.9, 92.6},
           {"ICFHR16", 4.72, {0.36, 1.24, 1.83}, 58.0, 97.8},
           {"LAM", 6.76, {0.36, 1.52, 2.31}, 37.2, 81.7},
       }},
  };
  return tables;
}

inline const ComparisonTable& table_for(const std::string& target) {
  for (const auto& t : comparison_tables()) {
    if (t.target == target) return t;
  }
  throw std::out_of_range("no table for " + target);
}

/// Builds a distribution from raw counts exactly the way ngram_distribution
/// normalizes them.
inline htrsel::CharNgramDistribution distribution_from_counts(int n, const std::map<std::string, double>& counts,
                                                              double alpha) {
  htrsel::CharNgramDistribution d;
  d.n = n;
  d.smoothing_alpha = alpha;
  double total = 0.0;
  for (const auto& [k, c] : counts) total += c;
  d.total_ngrams_observed = static_cast<std::uint64_t>(std::llround(total));
  const double mass = total + alpha * static_cast<double>(counts.size());
  for (const auto& [k, c] : counts) d.probs[k] = (c + alpha) / mass;
  return d;
}

// Two-symbol construction: with P = (1/2, 1/2) and Q = (q, 1 - q),
// D(P||Q) = -ln 2 - ln(q (1 - q)) / 2, so q = (1 - sqrt(1 - exp(-2 D))) / 2.
inline double skew_for_divergence(double d) { return (1.0 - std::sqrt(1.0 - std::exp(-2.0 * d))) / 2.0; }

inline constexpr double kFixtureMass = 1e12;

inline const char* const kFixtureKeys[3][2] = {{"a", "b"}, {"ab", "ba"}, {"aba", "bab"}};

inline htrsel::CharNgramDistribution two_symbol(int n, double q) {
  const auto& keys = kFixtureKeys[n - 1];
  return distribution_from_counts(n, {{keys[0], q * kFixtureMass}, {keys[1], (1.0 - q) * kFixtureMass}}, 0.0);
}

inline htrsel::DatasetFingerprint base_fingerprint(const std::string& id, const std::string& language) {
  htrsel::DatasetFingerprint fp;
  fp.dataset_id = id;
  fp.charset = {"a", "b"};
  fp.line_count = 1;
  fp.metadata.language = language;
  fp.metadata.training_lines = 1;
  return fp;
}

/// Target whose n-gram distributions are uniform over two symbols.
inline htrsel::DatasetFingerprint uniform_target(const std::string& id, const std::string& language) {
  auto fp = base_fingerprint(id, language);
  fp.unigram = two_symbol(1, 0.5);
  fp.bigram = two_symbol(2, 0.5);
  fp.trigram = two_symbol(3, 0.5);
  return fp;
}

/// Candidate whose divergence from uniform_target() is the given triple.
inline htrsel::DatasetFingerprint candidate_with_divergence(const std::string& id, const std::string& language,
                                                            const double (&kl)[3]) {
  auto fp = base_fingerprint(id, language);
  fp.unigram = two_symbol(1, skew_for_divergence(kl[0]));
  fp.bigram = two_symbol(2, skew_for_divergence(kl[1]));
  fp.trigram = two_symbol(3, skew_for_divergence(kl[2]));
  return fp;
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("htrsel-test-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace fixtures
