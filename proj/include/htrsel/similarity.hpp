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

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "htrsel/corpus.hpp"

namespace htrsel {

enum class LogBase { natural, two };

/// D(P||Q) over the union of both supports. The raw counts of each side are
/// recovered, `smoothing_alpha` is added to every n-gram of the union, and
/// both sides are renormalized before summing p * log(p / q).
///
/// Throws ArityMismatch when P.n != Q.n and InvalidAlpha when alpha <= 0.
double kl_divergence(const CharNgramDistribution& p, const CharNgramDistribution& q,
                     double smoothing_alpha = kDefaultSmoothingAlpha, LogBase base = LogBase::natural);

/// Language-pair scores loaded from an external source. Lookups ignore
/// argument order.
class LexicalSimilarityTable {
 public:
  void insert(std::string_view lang1, std::string_view lang2, double value);
  std::optional<double> lookup(std::string_view lang1, std::string_view lang2) const;
  std::size_t size() const { return entries_.size(); }

  /// `lang1<TAB>lang2<TAB>value` per line; '#' comments and blank lines
  /// are skipped. Throws MalformedDocument.
  static LexicalSimilarityTable parse(std::string_view text);
  static LexicalSimilarityTable load(const std::filesystem::path& path);

 private:
  static std::pair<std::string, std::string> key(std::string_view a, std::string_view b);
  std::map<std::pair<std::string, std::string>, double> entries_;
};

struct SimilarityRecord {
  std::string candidate_id;
  double kl_unigram = 0.0;
  double kl_bigram = 0.0;
  double kl_trigram = 0.0;
  std::optional<double> lexical_similarity;
  std::optional<double> char_width_delta_px;
  // Carried along so reports can suggest a width-adjustment factor.
  std::optional<double> candidate_avg_char_width_px;

  double kl_mean() const { return (kl_unigram + kl_bigram + kl_trigram) / 3.0; }

  bool operator==(const SimilarityRecord&) const = default;
};

struct KlOptions {
  double smoothing_alpha = kDefaultSmoothingAlpha;
  LogBase base = LogBase::natural;
};

/// KL triple D(target||candidate) for n = 1, 2, 3 plus the lexical and
/// visual side information. Lexical similarity is absent for equal or
/// unknown languages.
SimilarityRecord compare_fingerprints(const DatasetFingerprint& target, const DatasetFingerprint& candidate,
                                      const LexicalSimilarityTable& lex, const KlOptions& options = {});

enum class RankKey { lexicographic, mean };

std::string_view to_string(RankKey key);
std::optional<RankKey> parse_rank_key(std::string_view s);

/// Ascending order by key; remaining ties fall back to candidate_id.
/// Throws EmptyCandidateSet.
std::vector<SimilarityRecord> rank_records(std::vector<SimilarityRecord> records,
                                           RankKey key = RankKey::lexicographic);

std::vector<SimilarityRecord> rank_candidates(const DatasetFingerprint& target,
                                              std::span<const DatasetFingerprint> candidates,
                                              const LexicalSimilarityTable& lex,
                                              RankKey key = RankKey::lexicographic,
                                              const KlOptions& options = {});

}  // namespace htrsel
