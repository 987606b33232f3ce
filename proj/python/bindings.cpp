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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstring>

#include "htrsel/corpus.hpp"
#include "htrsel/documents.hpp"
#include "htrsel/error.hpp"
#include "htrsel/imaging.hpp"
#include "htrsel/metrics.hpp"
#include "htrsel/planner.hpp"
#include "htrsel/similarity.hpp"

namespace py = pybind11;
using namespace htrsel;

namespace {

using Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

Raster to_raster(const Array& a) {
  const auto info = a.request();
  Raster r;
  if (info.ndim == 2) {
    r.channels = 1;
  } else if (info.ndim == 3 && (info.shape[2] == 1 || info.shape[2] == 3)) {
    r.channels = static_cast<int>(info.shape[2]);
  } else {
    throw InvalidRaster("expected an (H, W) or (H, W, 3) uint8 array");
  }
  r.height = static_cast<int>(info.shape[0]);
  r.width = static_cast<int>(info.shape[1]);
  r.pixels.resize(static_cast<std::size_t>(info.size));
  if (info.size > 0) std::memcpy(r.pixels.data(), info.ptr, r.pixels.size());
  return r;
}

Array to_array(const Raster& r) {
  std::vector<py::ssize_t> shape{r.height, r.width};
  if (r.channels != 1) shape.push_back(r.channels);
  Array a(shape);
  if (!r.pixels.empty()) std::memcpy(a.mutable_data(), r.pixels.data(), r.pixels.size());
  return a;
}

LogBase parse_base(const std::string& s) {
  if (s == "e") return LogBase::natural;
  if (s == "2") return LogBase::two;
  throw py::value_error("log base must be 'e' or '2'");
}

RankKey parse_key(const std::string& s) {
  const auto key = parse_rank_key(s);
  if (!key) throw py::value_error("rank key must be 'lexicographic' or 'mean'");
  return *key;
}

std::vector<WordImage> to_words(const std::vector<std::pair<Array, std::string>>& items) {
  std::vector<WordImage> words;
  words.reserve(items.size());
  for (const auto& [a, t] : items) words.push_back({to_raster(a), t});
  return words;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dataset selection toolkit for handwritten text recognition";
  m.attr("__version__") = "0.1.0";

  auto domain = py::register_exception<DomainError>(m, "DomainError", PyExc_RuntimeError);
  py::register_exception<MalformedManifest>(m, "MalformedManifest", domain);
  py::register_exception<EmptyManifest>(m, "EmptyManifest", domain);
  py::register_exception<NoObservableNgrams>(m, "NoObservableNgrams", domain);
  py::register_exception<ImageLoadFailure>(m, "ImageLoadFailure", domain);
  py::register_exception<ArityMismatch>(m, "ArityMismatch", domain);
  py::register_exception<InvalidAlpha>(m, "InvalidAlpha", domain);
  py::register_exception<EmptyCandidateSet>(m, "EmptyCandidateSet", domain);
  py::register_exception<EmptySampleSet>(m, "EmptySampleSet", domain);
  py::register_exception<EmptyWordList>(m, "EmptyWordList", domain);
  py::register_exception<InvalidRaster>(m, "InvalidRaster", domain);
  py::register_exception<InvalidConfig>(m, "InvalidConfig", domain);
  py::register_exception<EmptyReference>(m, "EmptyReference", domain);
  py::register_exception<EmptyPairSet>(m, "EmptyPairSet", domain);
  py::register_exception<InvalidFraction>(m, "InvalidFraction", domain);
  py::register_exception<MalformedDocument>(m, "MalformedDocument", domain);

  // corpus

  py::class_<DatasetMetadata>(m, "DatasetMetadata")
      .def(py::init<>())
      .def_readwrite("language", &DatasetMetadata::language)
      .def_readwrite("period", &DatasetMetadata::period)
      .def_property(
          "authors", [](const DatasetMetadata& d) { return std::string(to_string(d.author_count)); },
          [](DatasetMetadata& d, const std::string& s) {
            const auto a = parse_author_count(s);
            if (!a) throw py::value_error("authors must be one, many or unknown");
            d.author_count = *a;
          })
      .def_readwrite("training_lines", &DatasetMetadata::training_lines);

  py::class_<DatasetManifest>(m, "DatasetManifest")
      .def_readonly("dataset_id", &DatasetManifest::dataset_id)
      .def_readonly("base_dir", &DatasetManifest::base_dir)
      .def_readonly("metadata", &DatasetManifest::metadata)
      .def_property_readonly("entries",
                             [](const DatasetManifest& mf) {
                               std::vector<std::pair<std::string, std::string>> out;
                               for (const auto& e : mf.entries) out.emplace_back(e.image_path, e.transcript);
                               return out;
                             })
      .def("transcripts", &DatasetManifest::transcripts)
      .def("__len__", [](const DatasetManifest& mf) { return mf.entries.size(); });

  m.def("parse_manifest", &parse_manifest, py::arg("text"), py::arg("default_id"),
        py::arg("base_dir") = std::filesystem::path{});
  m.def("ingest_manifest", &ingest_manifest, py::arg("path"));

  py::class_<CharNgramDistribution>(m, "CharNgramDistribution")
      .def_readonly("n", &CharNgramDistribution::n)
      .def_readonly("probs", &CharNgramDistribution::probs)
      .def_readonly("total_ngrams_observed", &CharNgramDistribution::total_ngrams_observed)
      .def_readonly("smoothing_alpha", &CharNgramDistribution::smoothing_alpha)
      .def("probability", &CharNgramDistribution::probability, py::arg("gram"))
      .def("__len__", [](const CharNgramDistribution& d) { return d.probs.size(); });

  m.def(
      "ngram_distribution",
      [](const std::vector<std::string>& lines, int n, double alpha) { return ngram_distribution(lines, n, alpha); },
      py::arg("transcripts"), py::arg("n"), py::arg("smoothing_alpha") = kDefaultSmoothingAlpha);

  py::class_<DatasetFingerprint>(m, "DatasetFingerprint")
      .def_readonly("dataset_id", &DatasetFingerprint::dataset_id)
      .def_readonly("charset", &DatasetFingerprint::charset)
      .def_readonly("unigram", &DatasetFingerprint::unigram)
      .def_readonly("bigram", &DatasetFingerprint::bigram)
      .def_readonly("trigram", &DatasetFingerprint::trigram)
      .def_readwrite("avg_char_width_px", &DatasetFingerprint::avg_char_width_px)
      .def_readonly("width_reference_height_px", &DatasetFingerprint::width_reference_height_px)
      .def_readonly("line_count", &DatasetFingerprint::line_count)
      .def_readwrite("metadata", &DatasetFingerprint::metadata)
      .def("to_json", &fingerprint_to_json)
      .def_static("from_json", [](const std::string& s) { return fingerprint_from_json(s); });

  m.def(
      "fingerprint_dataset",
      [](const DatasetManifest& manifest, bool images, double alpha, int reference_height) {
        return fingerprint_dataset(manifest, images, {alpha, reference_height});
      },
      py::arg("manifest"), py::arg("images_available") = false, py::arg("smoothing_alpha") = kDefaultSmoothingAlpha,
      py::arg("width_reference_height") = kRecognizerHeight);

  // similarity

  m.def(
      "kl_divergence",
      [](const CharNgramDistribution& p, const CharNgramDistribution& q, double alpha, const std::string& base) {
        return kl_divergence(p, q, alpha, parse_base(base));
      },
      py::arg("p"), py::arg("q"), py::arg("smoothing_alpha") = kDefaultSmoothingAlpha, py::arg("base") = "e");

  py::class_<LexicalSimilarityTable>(m, "LexicalSimilarityTable")
      .def(py::init<>())
      .def("insert", &LexicalSimilarityTable::insert)
      .def("lookup", &LexicalSimilarityTable::lookup)
      .def("__len__", &LexicalSimilarityTable::size)
      .def_static("parse", [](const std::string& s) { return LexicalSimilarityTable::parse(s); })
      .def_static("load", &LexicalSimilarityTable::load);

  py::class_<SimilarityRecord>(m, "SimilarityRecord")
      .def(py::init([](std::string id, double u, double b, double t) {
             SimilarityRecord r;
             r.candidate_id = std::move(id);
             r.kl_unigram = u;
             r.kl_bigram = b;
             r.kl_trigram = t;
             return r;
           }),
           py::arg("candidate_id"), py::arg("kl_unigram"), py::arg("kl_bigram"), py::arg("kl_trigram"))
      .def_readwrite("candidate_id", &SimilarityRecord::candidate_id)
      .def_readwrite("kl_unigram", &SimilarityRecord::kl_unigram)
      .def_readwrite("kl_bigram", &SimilarityRecord::kl_bigram)
      .def_readwrite("kl_trigram", &SimilarityRecord::kl_trigram)
      .def_readwrite("lexical_similarity", &SimilarityRecord::lexical_similarity)
      .def_readwrite("char_width_delta_px", &SimilarityRecord::char_width_delta_px)
      .def_readwrite("candidate_avg_char_width_px", &SimilarityRecord::candidate_avg_char_width_px)
      .def_property_readonly("kl_mean", &SimilarityRecord::kl_mean)
      .def("__repr__", [](const SimilarityRecord& r) { return "<SimilarityRecord " + r.candidate_id + ">"; });

  m.def(
      "compare_fingerprints",
      [](const DatasetFingerprint& t, const DatasetFingerprint& c, const LexicalSimilarityTable& lex, double alpha,
         const std::string& base) { return compare_fingerprints(t, c, lex, {alpha, parse_base(base)}); },
      py::arg("target"), py::arg("candidate"), py::arg("lex") = LexicalSimilarityTable{},
      py::arg("smoothing_alpha") = kDefaultSmoothingAlpha, py::arg("base") = "e");
  m.def(
      "rank_candidates",
      [](const DatasetFingerprint& t, const std::vector<DatasetFingerprint>& cands, const LexicalSimilarityTable& lex,
         const std::string& key, double alpha, const std::string& base) {
        return rank_candidates(t, cands, lex, parse_key(key), {alpha, parse_base(base)});
      },
      py::arg("target"), py::arg("candidates"), py::arg("lex") = LexicalSimilarityTable{},
      py::arg("key") = "lexicographic", py::arg("smoothing_alpha") = kDefaultSmoothingAlpha, py::arg("base") = "e");
  m.def(
      "rank_records",
      [](std::vector<SimilarityRecord> records, const std::string& key) {
        return rank_records(std::move(records), parse_key(key));
      },
      py::arg("records"), py::arg("key") = "lexicographic");

  // metrics

  m.def("char_edit_distance", &char_edit_distance, py::arg("a"), py::arg("b"));
  m.def("word_edit_distance", &word_edit_distance, py::arg("a"), py::arg("b"));
  m.def(
      "cer", [](std::string ref, std::string hyp) { return cer({std::move(ref), std::move(hyp)}); },
      py::arg("reference"), py::arg("hypothesis"));
  m.def(
      "wer", [](std::string ref, std::string hyp) { return wer({std::move(ref), std::move(hyp)}); },
      py::arg("reference"), py::arg("hypothesis"));

  py::class_<ErrorReport>(m, "ErrorReport")
      .def_readonly("cer", &ErrorReport::cer)
      .def_readonly("wer", &ErrorReport::wer)
      .def_readonly("pair_count", &ErrorReport::pair_count)
      .def_readonly("total_ref_chars", &ErrorReport::total_ref_chars)
      .def_readonly("total_ref_words", &ErrorReport::total_ref_words)
      .def_readonly("char_edits", &ErrorReport::char_edits)
      .def_readonly("word_edits", &ErrorReport::word_edits)
      .def("to_json", &error_report_to_json);

  m.def(
      "aggregate_report",
      [](const std::vector<std::pair<std::string, std::string>>& pairs) {
        std::vector<EvalPair> eval;
        for (const auto& [r, h] : pairs) eval.push_back({r, h});
        return aggregate_report(eval);
      },
      py::arg("pairs"));
  m.def("format_percent", &format_percent, py::arg("rate"));

  // imaging

  m.def(
      "load_raster", [](const std::filesystem::path& p) { return to_array(load_raster(p)); }, py::arg("path"));
  m.def(
      "save_raster", [](const std::filesystem::path& p, const Array& a) { save_raster(p, to_raster(a)); },
      py::arg("path"), py::arg("image"));
  m.def(
      "normalize_height", [](const Array& a, int h) { return to_array(resize_to_height(to_raster(a), h)); },
      py::arg("image"), py::arg("target_height") = kRecognizerHeight);
  m.def(
      "estimate_avg_char_width",
      [](const std::vector<std::pair<Array, std::string>>& samples, int reference_height) {
        return estimate_avg_char_width(std::span<const WordImage>(to_words(samples)), reference_height);
      },
      py::arg("samples"), py::arg("reference_height") = kWordHeight);
  m.def(
      "width_adjust",
      [](const Array& a, double source, double target) {
        return to_array(width_adjust(WordImage{to_raster(a), ""}, source, target).pixels);
      },
      py::arg("image"), py::arg("source_char_width"), py::arg("target_char_width"));
  m.def(
      "compose_line",
      [](const std::vector<std::pair<Array, std::string>>& words, int spacing, int height) {
        const auto line = compose_line(std::span<const WordImage>(to_words(words)), spacing, height);
        return std::make_pair(to_array(line.pixels), line.transcript);
      },
      py::arg("words"), py::arg("spacing") = kWordSpacing, py::arg("line_height") = kWordHeight);

  py::class_<AugmentationConfig>(m, "AugmentationConfig")
      .def(py::init<>())
      .def_static("neutral", &AugmentationConfig::neutral, py::arg("seed") = 0)
      .def_static("from_json", [](const std::string& s) { return augmentation_config_from_json(s); })
      .def("to_json", &augmentation_config_to_json)
      .def("validate", &AugmentationConfig::validate)
      .def_readwrite("seed", &AugmentationConfig::seed)
      .def_readwrite("blur_kernel", &AugmentationConfig::blur_kernel)
      .def_readwrite("homography_jitter_frac", &AugmentationConfig::homography_jitter_frac)
      .def("__eq__", [](const AugmentationConfig& a, const AugmentationConfig& b) { return a == b; });

  m.def(
      "augment",
      [](const Array& a, const AugmentationConfig& cfg, std::uint64_t index) {
        return to_array(augment(LineImage{to_raster(a), ""}, cfg, index).pixels);
      },
      py::arg("image"), py::arg("config"), py::arg("image_index") = 0);

  // planner

  py::class_<Split>(m, "Split")
      .def_readonly("fraction", &Split::fraction)
      .def_readonly("line_count", &Split::line_count)
      .def_readonly("selected_indices", &Split::selected_indices);
  py::class_<SplitPlan>(m, "SplitPlan")
      .def_readonly("total_lines", &SplitPlan::total_lines)
      .def_readonly("splits", &SplitPlan::splits)
      .def("to_json", &split_plan_to_json);

  m.def("split_line_count", &split_line_count, py::arg("total_lines"), py::arg("fraction"));
  m.def(
      "make_split_plan",
      [](std::size_t total, const std::vector<double>& fractions, std::uint64_t seed) {
        return make_split_plan(total, fractions, seed);
      },
      py::arg("total_lines"), py::arg("fractions") = default_fractions(), py::arg("seed"));
  m.def("load_paper_presets", [] {
    py::dict out;
    for (const auto& p : load_paper_presets()) out[py::str(p.dataset_id)] = p.split_counts;
    return out;
  });

  py::class_<SelectionReport>(m, "SelectionReport")
      .def_readonly("target_id", &SelectionReport::target_id)
      .def_readonly("ranked", &SelectionReport::ranked)
      .def_readonly("recommended", &SelectionReport::recommended)
      .def_readonly("plan", &SelectionReport::plan)
      .def_readonly("notes", &SelectionReport::notes)
      .def("to_json", &selection_report_to_json);

  m.def(
      "emit_report",
      [](const DatasetFingerprint& target, const std::vector<SimilarityRecord>& ranked, const SplitPlan& plan,
         double near_tie) { return emit_report(target, ranked, plan, {near_tie}); },
      py::arg("target"), py::arg("ranked"), py::arg("plan"), py::arg("near_tie_unigram_delta") = 0.01);
}
