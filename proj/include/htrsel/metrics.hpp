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

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace htrsel {

/// Levenshtein distance with unit costs, two-row dynamic programming.
template <typename T>
std::size_t edit_distance(std::span<const T> a, std::span<const T> b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  std::iota(prev.begin(), prev.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

inline std::size_t edit_distance(std::u32string_view a, std::u32string_view b) {
  return edit_distance(std::span<const char32_t>(a.data(), a.size()),
                       std::span<const char32_t>(b.data(), b.size()));
}

/// Character-level distance between two UTF-8 strings, counted in code points.
std::size_t char_edit_distance(std::string_view a, std::string_view b);
/// Word-level distance; words are separated by runs of whitespace.
std::size_t word_edit_distance(std::string_view a, std::string_view b);

struct EvalPair {
  std::string reference;
  std::string hypothesis;
};

/// Throws EmptyReference when the reference has no characters.
double cer(const EvalPair& pair);
/// Throws EmptyReference when the reference has no words.
double wer(const EvalPair& pair);

struct ErrorReport {
  double cer = 0.0;
  double wer = 0.0;
  std::size_t pair_count = 0;
  std::size_t total_ref_chars = 0;
  std::size_t total_ref_words = 0;
  std::size_t char_edits = 0;
  std::size_t word_edits = 0;
};

/// Micro-averaged corpus CER/WER. Throws EmptyPairSet or EmptyReference.
ErrorReport aggregate_report(std::span<const EvalPair> pairs);

/// Rate as a percentage with one decimal, e.g. 1.042 -> "104.2".
std::string format_percent(double rate);

}  // namespace htrsel
