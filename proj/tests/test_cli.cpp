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

#include <cstdlib>
#include <sstream>
#include <sys/wait.h>

#include "doctest.h"
#include "fixtures.hpp"
#include "htrsel/cli.hpp"
#include "htrsel/documents.hpp"
#include "htrsel/raster.hpp"
#include "json.hpp"

using namespace htrsel;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

void write_lines(const fixtures::TempDir& dir, const std::string& name, int count, int width, int height) {
  std::string manifest;
  for (int i = 0; i < count; ++i) {
    const std::string img = "l" + std::to_string(i) + ".png";
    Raster r = Raster::filled(width, height, 1, kBackground);
    for (int x = 0; x < width; x += 4) r.at(x, height / 2) = kInk;
    save_raster(dir / img, r);
    manifest += img + "\tline number " + std::to_string(i) + "\n";
  }
  write_text_file(dir / name, manifest);
}

}  // namespace

TEST_CASE("every subcommand has help") {
  for (const char* sub : {"fingerprint", "rank", "compose", "augment", "evaluate", "plan", "report"}) {
    CAPTURE(sub);
    const auto r = run({sub, "--help"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.find("Usage") != std::string::npos);
  }
  CHECK(run({"--help"}).code == cli::kExitOk);
  CHECK(run({"--version"}).out.find("0.1.0") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  auto r = run({"plan", "--total", "10"});
  CHECK(r.code == cli::kExitUsage);
  CHECK(r.err.rfind("htrsel: usage error: ", 0) == 0);
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run({"plan", "--seed", "1", "--preset", "Leopardi", "--total", "5"}).code == cli::kExitUsage);
  CHECK(run({"rank", "--target", "x", "--key", "best"}).code == cli::kExitUsage);
}

TEST_CASE("fingerprint, rank and report") {
  fixtures::TempDir dir;
  write_text_file(dir / "target.tsv", "# language: Latin\na.png\tin principio erat verbum\nb.png\tet verbum caro\n");
  write_text_file(dir / "near.tsv", "# language: Latin\na.png\tverbum erat in principio\n");
  write_text_file(dir / "far.tsv", "# language: English\na.png\tthe quick brown fox\n");

  for (const char* name : {"target", "near", "far"}) {
    const auto r = run({"fingerprint", "--manifest", (dir / (std::string(name) + ".tsv")).string(), "--out",
                        (dir / (std::string(name) + ".json")).string()});
    REQUIRE(r.code == cli::kExitOk);
  }
  const auto fp = fingerprint_from_json(read_text_file(dir / "target.json"));
  CHECK(fp.dataset_id == "target");
  CHECK(fp.line_count == 2);

  const auto stdout_fp = run({"fingerprint", "--manifest", (dir / "target.tsv").string(), "--id", "T"});
  CHECK(stdout_fp.code == cli::kExitOk);
  CHECK(fingerprint_from_json(stdout_fp.out).dataset_id == "T");

  const std::vector<std::string> rank_args{"rank", "--target", (dir / "target.json").string(), "--candidates",
                                           (dir / "far.json").string(), (dir / "near.json").string()};
  const auto ranked = run(rank_args);
  REQUIRE(ranked.code == cli::kExitOk);
  const auto j = nlohmann::json::parse(ranked.out);
  CHECK(j.at("records")[0].at("candidate_id") == "near");
  CHECK(j.at("records")[1].at("candidate_id") == "far");
  CHECK(run(rank_args).out == ranked.out);

  const auto empty = run({"rank", "--target", (dir / "target.json").string()});
  CHECK(empty.code == cli::kExitDomainError);
  CHECK(empty.err.find("empty candidate set") != std::string::npos);

  const auto report = run({"report", "--target", (dir / "target.json").string(), "--candidates",
                           (dir / "far.json").string(), (dir / "near.json").string(), "--seed", "3"});
  REQUIRE(report.code == cli::kExitOk);
  const auto rj = nlohmann::json::parse(report.out);
  CHECK(rj.at("recommended") == "near");
  CHECK(rj.at("plan").at("total_lines") == 2);

  write_text_file(dir / "broken.json", "{");
  CHECK(run({"rank", "--target", (dir / "broken.json").string(), "--candidates", (dir / "near.json").string()}).code ==
        cli::kExitDomainError);
}

TEST_CASE("fingerprint with images measures character width") {
  fixtures::TempDir dir;
  write_lines(dir, "set.tsv", 3, 120, 60);
  const auto r = run({"fingerprint", "--manifest", (dir / "set.tsv").string(), "--images"});
  REQUIRE(r.code == cli::kExitOk);
  const auto fp = fingerprint_from_json(r.out);
  REQUIRE(fp.avg_char_width_px.has_value());
  CHECK(*fp.avg_char_width_px == doctest::Approx(360.0 / (3 * 11)));
}

TEST_CASE("evaluate reports corpus rates") {
  fixtures::TempDir dir;
  write_text_file(dir / "ref.txt", "a b\nthe cat\n");
  write_text_file(dir / "hyp.txt", "x y z w\nthe cat\n");
  const auto r = run({"evaluate", "--ref", (dir / "ref.txt").string(), "--hyp", (dir / "hyp.txt").string()});
  REQUIRE(r.code == cli::kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("wer").get<double>() == doctest::Approx(1.0));
  CHECK(j.at("pair_count") == 2);

  write_text_file(dir / "short.txt", "a b\n");
  CHECK(run({"evaluate", "--ref", (dir / "ref.txt").string(), "--hyp", (dir / "short.txt").string()}).code ==
        cli::kExitDomainError);
}

TEST_CASE("plan is deterministic") {
  const auto a = run({"plan", "--preset", "Washington", "--seed", "11"});
  REQUIRE(a.code == cli::kExitOk);
  CHECK(run({"plan", "--preset", "Washington", "--seed", "11"}).out == a.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j.at("splits")[0].at("line_count") == 6);
  CHECK(j.at("splits")[4].at("line_count") == 526);

  const auto b = run({"plan", "--total", "100", "--fractions", "0.1,0.5", "--seed", "1"});
  REQUIRE(b.code == cli::kExitOk);
  CHECK(nlohmann::json::parse(b.out).at("splits")[1].at("line_count") == 50);
  CHECK(run({"plan", "--total", "100", "--fractions", "0.5,0.5", "--seed", "1"}).code == cli::kExitDomainError);
}

TEST_CASE("compose writes line images") {
  fixtures::TempDir dir;
  std::string words;
  for (int i = 0; i < 5; ++i) {
    const std::string img = "w" + std::to_string(i) + ".png";
    save_raster(dir / img, Raster::filled(20 + 10 * i, 32, 1, kInk));
    words += img + "\tword" + std::to_string(i) + "\n";
  }
  write_text_file(dir / "words.tsv", words);
  const auto out_dir = dir / "lines";
  const auto r = run({"compose", "--words", (dir / "words.tsv").string(), "--out-dir", out_dir.string(),
                      "--words-per-line", "3"});
  REQUIRE(r.code == cli::kExitOk);
  const auto first = load_raster(out_dir / "line_00000.png");
  CHECK(first.width == 20 + 30 + 40 + 2 * 16);
  CHECK(first.height == 32);
  CHECK(load_raster(out_dir / "line_00001.png").width == 50 + 60 + 16);
  CHECK(read_text_file(out_dir / "lines.tsv") ==
        "line_00000.png\tword0 word1 word2\nline_00001.png\tword3 word4\n");

  CHECK(run({"compose", "--words", (dir / "words.tsv").string(), "--out-dir", out_dir.string(),
             "--source-char-width", "16"})
            .code == cli::kExitUsage);
  const auto half = dir / "half";
  REQUIRE(run({"compose", "--words", (dir / "words.tsv").string(), "--out-dir", half.string(), "--words-per-line",
               "1", "--source-char-width", "16", "--target-char-width", "8"})
              .code == cli::kExitOk);
  CHECK(load_raster(half / "line_00000.png").width == 10);
}

TEST_CASE("augment is reproducible") {
  fixtures::TempDir dir;
  write_lines(dir, "set.tsv", 2, 90, 30);
  const auto a = dir / "a";
  const auto b = dir / "b";
  REQUIRE(run({"augment", "--manifest", (dir / "set.tsv").string(), "--out-dir", a.string(), "--seed", "5",
               "--copies", "2"})
              .code == cli::kExitOk);
  REQUIRE(run({"augment", "--manifest", (dir / "set.tsv").string(), "--out-dir", b.string(), "--seed", "5",
               "--copies", "2"})
              .code == cli::kExitOk);
  for (int i = 0; i < 4; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "aug_%05d.png", i);
    CHECK(load_raster(a / name) == load_raster(b / name));
  }
  CHECK(read_text_file(a / "lines.tsv") == read_text_file(b / "lines.tsv"));

  write_text_file(dir / "neutral.json", augmentation_config_to_json(AugmentationConfig::neutral()));
  const auto n = dir / "n";
  REQUIRE(run({"augment", "--manifest", (dir / "set.tsv").string(), "--out-dir", n.string(), "--seed", "5",
               "--config", (dir / "neutral.json").string()})
              .code == cli::kExitOk);
  CHECK(load_raster(n / "aug_00000.png") == load_raster(dir / "l0.png"));
}

TEST_CASE("the installed binary reports exit codes") {
  const std::string cli = HTRSEL_CLI_PATH;
  const auto status = [](const std::string& cmd) {
    const int raw = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status(cli + " plan --preset Leopardi --seed 1") == 0);
  CHECK(status(cli + " plan --preset Leopardi") == 2);
  CHECK(status(cli + " rank --target /nonexistent/fp.json") == 1);
}
