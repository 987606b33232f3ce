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

#include "htrsel/similarity.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <tuple>

#include "htrsel/error.hpp"

namespace htrsel {

namespace {

struct UnionCounts {
  std::vector<double> p;
  std::vector<double> q;
};

// Recovered raw counts of both sides, aligned over the union support.
UnionCounts align_counts(const CharNgramDistribution& a, const CharNgramDistribution& b) {
  UnionCounts u;
  auto ia = a.probs.begin();
  auto ib = b.probs.begin();
  while (ia != a.probs.end() || ib != b.probs.end()) {
    if (ib == b.probs.end() || (ia != a.probs.end() && ia->first < ib->first)) {
      u.p.push_back(a.count_of(ia->second));
      u.q.push_back(0.0);
      ++ia;
    } else if (ia == a.probs.end() || ib->first < ia->first) {
      u.p.push_back(0.0);
      u.q.push_back(b.count_of(ib->second));
      ++ib;
    } else {
      u.p.push_back(a.count_of(ia->second));
      u.q.push_back(b.count_of(ib->second));
      ++ia;
      ++ib;
    }
  }
  return u;
}

}  // namespace

double kl_divergence(const CharNgramDistribution& p, const CharNgramDistribution& q, double smoothing_alpha,
                     LogBase base) {
  if (p.n != q.n) {
    throw ArityMismatch("cannot compare " + std::to_string(p.n) + "-grams with " + std::to_string(q.n) +
                        "-grams");
  }
  if (!(smoothing_alpha > 0.0) || !std::isfinite(smoothing_alpha)) {
    throw InvalidAlpha("smoothing_alpha must be positive");
  }

  const UnionCounts u = align_counts(p, q);
  if (u.p.empty()) return 0.0;
  const double support = static_cast<double>(u.p.size());
  double p_mass = 0.0;
  double q_mass = 0.0;
  for (std::size_t i = 0; i < u.p.size(); ++i) {
    p_mass += u.p[i];
    q_mass += u.q[i];
  }
  p_mass += smoothing_alpha * support;
  q_mass += smoothing_alpha * support;

  double d = 0.0;
  for (std::size_t i = 0; i < u.p.size(); ++i) {
    const double pi = (u.p[i] + smoothing_alpha) / p_mass;
    const double qi = (u.q[i] + smoothing_alpha) / q_mass;
    d += pi * std::log(pi / qi);
  }
  if (base == LogBase::two) d /= std::numbers::ln2;
  return std::max(d, 0.0);
}

std::pair<std::string, std::string> LexicalSimilarityTable::key(std::string_view a, std::string_view b) {
  if (b < a) std::swap(a, b);
  return {std::string(a), std::string(b)};
}

void LexicalSimilarityTable::insert(std::string_view lang1, std::string_view lang2, double value) {
  if (!(value >= 0.0)) throw MalformedDocument("lexical similarity must be non-negative");
  entries_[key(lang1, lang2)] = value;
}

std::optional<double> LexicalSimilarityTable::lookup(std::string_view lang1, std::string_view lang2) const {
  const auto it = entries_.find(key(lang1, lang2));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

LexicalSimilarityTable LexicalSimilarityTable::parse(std::string_view text) {
  LexicalSimilarityTable table;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    const auto where = "lexical table line " + std::to_string(line_no);
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos) throw MalformedDocument(where + ": expected lang1<TAB>lang2<TAB>value");
    const auto l1 = line.substr(0, t1);
    const auto l2 = line.substr(t1 + 1, t2 - t1 - 1);
    const auto v = line.substr(t2 + 1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
    if (l1.empty() || l2.empty() || ec != std::errc{} || ptr != v.data() + v.size() || !(value >= 0.0)) {
      throw MalformedDocument(where + ": bad record");
    }
    table.insert(l1, l2, value);
  }
  return table;
}

LexicalSimilarityTable LexicalSimilarityTable::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedDocument("cannot open lexical table " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

SimilarityRecord compare_fingerprints(const DatasetFingerprint& target, const DatasetFingerprint& candidate,
                                      const LexicalSimilarityTable& lex, const KlOptions& options) {
  SimilarityRecord r;
  r.candidate_id = candidate.dataset_id;
  r.kl_unigram = kl_divergence(target.unigram, candidate.unigram, options.smoothing_alpha, options.base);
  r.kl_bigram = kl_divergence(target.bigram, candidate.bigram, options.smoothing_alpha, options.base);
  r.kl_trigram = kl_divergence(target.trigram, candidate.trigram, options.smoothing_alpha, options.base);

  const auto& l1 = target.metadata.language;
  const auto& l2 = candidate.metadata.language;
  if (!l1.empty() && !l2.empty() && l1 != l2) r.lexical_similarity = lex.lookup(l1, l2);

  r.candidate_avg_char_width_px = candidate.avg_char_width_px;
  if (target.avg_char_width_px && candidate.avg_char_width_px) {
    r.char_width_delta_px = std::abs(*target.avg_char_width_px - *candidate.avg_char_width_px);
  }
  return r;
}

std::string_view to_string(RankKey key) {
  return key == RankKey::mean ? "mean" : "lexicographic";
}

std::optional<RankKey> parse_rank_key(std::string_view s) {
  if (s == "lexicographic") return RankKey::lexicographic;
  if (s == "mean") return RankKey::mean;
  return std::nullopt;
}

std::vector<SimilarityRecord> rank_records(std::vector<SimilarityRecord> records, RankKey key) {
  if (records.empty()) throw EmptyCandidateSet("empty candidate set");

  // Remaining fields break ties between duplicate ids.
  const auto tail = [](const SimilarityRecord& r) {
    return std::tie(r.candidate_id, r.lexical_similarity, r.char_width_delta_px, r.candidate_avg_char_width_px);
  };
  if (key == RankKey::lexicographic) {
    std::sort(records.begin(), records.end(), [&](const auto& a, const auto& b) {
      return std::tuple_cat(std::tie(a.kl_unigram, a.kl_bigram, a.kl_trigram), tail(a)) <
             std::tuple_cat(std::tie(b.kl_unigram, b.kl_bigram, b.kl_trigram), tail(b));
    });
  } else {
    std::sort(records.begin(), records.end(), [&](const auto& a, const auto& b) {
      return std::tuple_cat(std::make_tuple(a.kl_mean()), tail(a)) <
             std::tuple_cat(std::make_tuple(b.kl_mean()), tail(b));
    });
  }
  return records;
}

std::vector<SimilarityRecord> rank_candidates(const DatasetFingerprint& target,
                                              std::span<const DatasetFingerprint> candidates,
                                              const LexicalSimilarityTable& lex, RankKey key,
                                              const KlOptions& options) {
  if (candidates.empty()) throw EmptyCandidateSet("empty candidate set");
  std::vector<SimilarityRecord> records;
  records.reserve(candidates.size());
  for (const auto& c : candidates) records.push_back(compare_fingerprints(target, c, lex, options));
  return rank_records(std::move(records), key);
}

}  // namespace htrsel
