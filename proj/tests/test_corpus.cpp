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

#include <algorithm>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "htrsel/corpus.hpp"
#include "htrsel/documents.hpp"
#include "htrsel/error.hpp"
#include "htrsel/raster.hpp"
#include "oracles.hpp"

using namespace htrsel;

namespace {

std::vector<std::string> random_lines(std::mt19937_64& rng, std::size_t count,
                                      const std::vector<std::string>& alphabet) {
  std::vector<std::string> lines;
  std::uniform_int_distribution<std::size_t> len(1, 12);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  for (std::size_t i = 0; i < count; ++i) {
    std::string s;
    const auto n = len(rng);
    for (std::size_t j = 0; j < n; ++j) s += alphabet[pick(rng)];
    lines.push_back(s);
  }
  return lines;
}

}  // namespace

TEST_CASE("ingest keeps records in file order") {
  const auto m = parse_manifest("img/1.png\tfirst line\nimg/2.png\tsecond\nimg/3.png\tthird\n", "d", "/data");
  REQUIRE(m.entries.size() == 3);
  CHECK(m.entries[0].transcript == "first line");
  CHECK(m.entries[1].image_path == "img/2.png");
  CHECK(m.entries[2].transcript == "third");
  CHECK(m.metadata.training_lines == 3);
  CHECK(m.resolve(m.entries[0]) == std::filesystem::path("/data/img/1.png"));
}

TEST_CASE("ingest trims transcripts and preserves interior bytes") {
  const auto m = parse_manifest("a.png\t  two  spaces\t \n", "d");
  CHECK(m.entries[0].transcript == "two  spaces");
}

TEST_CASE("ingest rejects malformed records") {
  CHECK_THROWS_AS(parse_manifest("a.png\t   \n", "d"), MalformedManifest);
  CHECK_THROWS_AS(parse_manifest("a.png no tab\n", "d"), MalformedManifest);
  CHECK_THROWS_AS(parse_manifest("\tno path\n", "d"), MalformedManifest);
  CHECK_THROWS_AS(parse_manifest("a.png\tx\na.png\ty\n", "d"), MalformedManifest);
  CHECK_THROWS_AS(parse_manifest("a.png\t\xC3\n", "d"), MalformedManifest);
  CHECK_THROWS_AS(parse_manifest("# authors: several\na.png\tx\n", "d"), MalformedManifest);
  CHECK_THROWS_AS(parse_manifest("", "d"), EmptyManifest);
  CHECK_THROWS_AS(parse_manifest("# only a comment\n\n", "d"), EmptyManifest);
}

TEST_CASE("manifest directives fill the metadata") {
  const auto m = parse_manifest(
      "# dataset_id: Leopardi\n# language: Italian\n# period: 1818-1832\n# authors: One\n# free comment\n"
      "l1.png\tCarissimo\n",
      "fallback");
  CHECK(m.dataset_id == "Leopardi");
  CHECK(m.metadata.language == "Italian");
  CHECK(m.metadata.period == "1818-1832");
  CHECK(m.metadata.author_count == AuthorCount::one);
}

TEST_CASE("CRLF manifests are identical to LF manifests") {
  const std::string lf = "\xEF\xBB\xBF# language: Latin\na.png\tin principio\nb.png\terat verbum\n";
  std::string crlf;
  for (char c : lf) {
    if (c == '\n') crlf += '\r';
    crlf += c;
  }
  const auto a = parse_manifest(lf, "d");
  const auto b = parse_manifest(crlf, "d");
  CHECK(a == b);
  CHECK(fingerprint_to_json(fingerprint_dataset(a, false)) == fingerprint_to_json(fingerprint_dataset(b, false)));
}

TEST_CASE("transcripts are NFC-normalized at ingestion") {
  const auto m = parse_manifest("a.png\tcaf" "e\xCC\x81\n", "d");
  CHECK(m.entries[0].transcript == "caf\xC3\xA9");
}

TEST_CASE("ingest_manifest reads files relative to their directory") {
  fixtures::TempDir dir;
  write_text_file(dir / "set.tsv", "x.png\thello\n");
  const auto m = ingest_manifest(dir / "set.tsv");
  CHECK(m.dataset_id == "set");
  CHECK(m.base_dir == dir.path());
  CHECK_THROWS_AS(ingest_manifest(dir / "missing.tsv"), MalformedManifest);
}

TEST_CASE("ngram_distribution worked examples") {
  SUBCASE("uniform unigrams") {
    const std::vector<std::string> t{"ab", "ab"};
    const auto d = ngram_distribution(t, 1, 0.0);
    CHECK(d.probs.size() == 2);
    CHECK(d.probability("a") == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(d.probability("b") == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(d.total_ngrams_observed == 4);
  }
  SUBCASE("sliding bigrams") {
    const std::vector<std::string> t{"abc"};
    const auto d = ngram_distribution(t, 2, 0.0);
    CHECK(d.probs == std::map<std::string, double>{{"ab", 0.5}, {"bc", 0.5}});
  }
  SUBCASE("additive pseudo-counts") {
    const std::vector<std::string> t{"aab"};
    const auto d = ngram_distribution(t, 1, 0.5);
    CHECK(d.probability("a") == doctest::Approx(2.5 / 4.0).epsilon(1e-15));
    CHECK(d.probability("b") == doctest::Approx(1.5 / 4.0).epsilon(1e-15));
    CHECK(d.count_of(d.probability("a")) == doctest::Approx(2.0));
  }
}

TEST_CASE("ngrams never cross lines and keep spaces and case") {
  const std::vector<std::string> t{"Ab", "c d"};
  const auto d = ngram_distribution(t, 2, 0.0);
  CHECK(d.probs.count("bc") == 0);
  CHECK(d.probs.count("Ab") == 1);
  CHECK(d.probs.count("c ") == 1);
  CHECK(d.probs.count(" d") == 1);
  CHECK(d.total_ngrams_observed == 3);
}

TEST_CASE("ngram keys count code points, not bytes") {
  const std::vector<std::string> t{"\xC3\xA9t\xC3\xA9"};
  const auto d = ngram_distribution(t, 2, 0.0);
  CHECK(d.probs.size() == 2);
  CHECK(d.probs.count("\xC3\xA9t") == 1);
  CHECK(d.probs.count("t\xC3\xA9") == 1);
}

TEST_CASE("ngram_distribution errors") {
  const std::vector<std::string> short_lines{"ab", "c"};
  CHECK_THROWS_AS(ngram_distribution(short_lines, 3, 0.5), NoObservableNgrams);
  CHECK_THROWS_AS(ngram_distribution(short_lines, 4, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ngram_distribution(short_lines, 1, -1.0), InvalidAlpha);
}

TEST_CASE("ngram_distribution matches brute-force counts") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto lines = random_lines(rng, 20, {"a", "b", "c", "d", "e", " ", "f", "g", "h"});
    for (int n = 1; n <= 3; ++n) {
      const auto counts = oracle::ascii_ngram_counts(lines, static_cast<std::size_t>(n));
      if (counts.empty()) continue;
      const auto d = ngram_distribution(lines, n, 0.5);
      double total = 0.0;
      for (const auto& [k, c] : counts) total += c;
      REQUIRE(d.probs.size() == counts.size());
      for (const auto& [k, c] : counts) {
        CHECK(d.probability(k) == doctest::Approx((c + 0.5) / (total + 0.5 * counts.size())).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("distribution properties") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const auto lines = random_lines(rng, 15, {"x", "y", "z", " ", "Q", "\xC3\xA6", "\xC5\xBF"});
    const double alpha = trial % 2 == 0 ? 0.5 : 0.0;
    for (int n = 1; n <= 3; ++n) {
      CharNgramDistribution d;
      try {
        d = ngram_distribution(lines, n, alpha);
      } catch (const NoObservableNgrams&) {
        continue;
      }
      double sum = 0.0;
      for (const auto& [k, p] : d.probs) {
        CHECK(p > 0.0);
        sum += p;
      }
      CHECK(std::abs(sum - 1.0) <= 1e-9);

      auto shuffled = lines;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      CHECK(ngram_distribution(shuffled, n, alpha).probs == d.probs);

      if (alpha == 0.0) {
        std::vector<std::string> tripled;
        for (int k = 0; k < 3; ++k) tripled.insert(tripled.end(), lines.begin(), lines.end());
        CHECK(ngram_distribution(tripled, n, 0.0).probs == d.probs);
      }
    }
    DatasetManifest m;
    m.dataset_id = "p";
    for (std::size_t i = 0; i < lines.size(); ++i) m.entries.push_back({std::to_string(i) + ".png", lines[i]});
    const auto fp = fingerprint_dataset(m, false, {0.0, 60});
    std::set<std::string> support;
    for (const auto& [k, p] : fp.unigram.probs) support.insert(k);
    CHECK(support == fp.charset);
  }
}

TEST_CASE("fingerprint without images") {
  const auto m = parse_manifest("1.png\tab\n2.png\tba\n", "toy");
  const auto fp = fingerprint_dataset(m, false, {0.0, 60});
  CHECK(fp.charset == std::set<std::string>{"a", "b"});
  CHECK(fp.unigram.probability("a") == doctest::Approx(0.5));
  CHECK(fp.unigram.probability("b") == doctest::Approx(0.5));
  CHECK_FALSE(fp.avg_char_width_px.has_value());
  CHECK(fp.line_count == 2);
  CHECK(fp.bigram.total_ngrams_observed == 2);
  // Every line is shorter than three characters.
  CHECK(fp.trigram.total_ngrams_observed == 0);
  CHECK(fp.trigram.probs.empty());
}

TEST_CASE("fingerprint measures character width from images") {
  fixtures::TempDir dir;
  save_raster(dir / "1.png", Raster::filled(32, 60, 1, kBackground));
  save_raster(dir / "2.png", Raster::filled(32, 60, 1, kBackground));
  write_text_file(dir / "toy.tsv", "1.png\tab\n2.png\tba\n");
  const auto m = ingest_manifest(dir / "toy.tsv");

  // 64 px over 4 characters at the native 60 px height.
  const auto fp = fingerprint_dataset(m, true, {0.5, 60});
  REQUIRE(fp.avg_char_width_px.has_value());
  CHECK(*fp.avg_char_width_px == doctest::Approx(16.0).epsilon(1e-12));
  CHECK(fp.width_reference_height_px == 60);

  // Measured at 32 px high the same lines are 32 * 32 / 60 px wide.
  const auto fp32 = fingerprint_dataset(m, true, {0.5, 32});
  CHECK(*fp32.avg_char_width_px == doctest::Approx(2 * 32.0 * 32.0 / 60.0 / 4.0).epsilon(1e-12));

  std::filesystem::remove(dir / "2.png");
  CHECK_THROWS_AS(fingerprint_dataset(m, true), ImageLoadFailure);
  CHECK_NOTHROW(fingerprint_dataset(m, false));
}
