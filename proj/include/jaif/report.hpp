// Copyright 2026 The jaif Authors. All Rights Reserved.
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

#ifndef JAIF_REPORT_HPP_
#define JAIF_REPORT_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jaif {

struct AccuracyCell {
  std::string key;    // condition, class label or "overall"
  std::string label;  // true label of the cell's samples (empty when mixed)
  std::size_t n = 0;
  std::size_t correct = 0;

  double accuracy() const { return n ? double(correct) / double(n) : 0.0; }
};

// One row of the single/double table: single-compressed images with first
// strength b0, and images compressed at b0 then again at b1.
struct RdPairRow {
  double b0 = 0;
  std::optional<double> b1;
  std::size_t single_n = 0, single_correct = 0;
  std::size_t double_n = 0, double_correct = 0;
};

struct ExperimentReport {
  std::string cue;
  std::string config_hash;
  std::string manifest_hash;
  std::string config_json;  // canonical config echo
  std::vector<std::string> classes;
  std::size_t train_count = 0;
  std::size_t val_count = 0;
  std::size_t test_count = 0;
  bool extractor_deterministic = true;
  AccuracyCell overall;
  std::vector<AccuracyCell> per_class;
  std::vector<AccuracyCell> per_condition;
  std::vector<RdPairRow> rd_pairs;
  std::string feature_file;
  std::string sidecar_file;
  // Wall-clock time; serialized only on request so reports stay reproducible.
  double runtime_seconds = 0;
};

enum class ReportFormat { kJson, kCsv, kMarkdown };

ReportFormat parse_report_format(std::string_view s);

std::string report_to_json(const ExperimentReport& r, bool include_runtime = false);
ExperimentReport report_from_json(const std::string& text);
std::string report_to_csv(const ExperimentReport& r);
std::string report_to_markdown(const ExperimentReport& r);

// Throws ContractError for a report without test samples, DataError when the
// path cannot be written.
void emit_report(const ExperimentReport& r, ReportFormat format, const std::filesystem::path& path,
                 bool include_runtime = false);

}  // namespace jaif

#endif  // JAIF_REPORT_HPP_
