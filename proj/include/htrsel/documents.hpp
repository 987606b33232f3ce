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
#include <span>
#include <string>
#include <string_view>

#include "htrsel/corpus.hpp"
#include "htrsel/imaging.hpp"
#include "htrsel/metrics.hpp"
#include "htrsel/planner.hpp"
#include "htrsel/similarity.hpp"

// JSON documents exchanged by the CLI. Keys are emitted in sorted order and
// real numbers are rounded to 12 significant digits, so identical inputs
// give byte-identical files.
namespace htrsel {

/// Rounds to 12 significant digits (the precision written to documents).
double round_significant(double value);

std::string fingerprint_to_json(const DatasetFingerprint& fp);
/// Throws MalformedDocument.
DatasetFingerprint fingerprint_from_json(std::string_view text);

std::string ranking_report_to_json(std::string_view target_id, RankKey key, LogBase base,
                                   std::span<const SimilarityRecord> ranked);
std::string error_report_to_json(const ErrorReport& report);
std::string split_plan_to_json(const SplitPlan& plan);
std::string selection_report_to_json(const SelectionReport& report);

/// Reads an augmentation config; missing keys keep their defaults.
AugmentationConfig augmentation_config_from_json(std::string_view text);
std::string augmentation_config_to_json(const AugmentationConfig& cfg);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace htrsel
