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

#ifndef JAIF_EXPERIMENT_HPP_
#define JAIF_EXPERIMENT_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "jaif/features.hpp"
#include "jaif/forest.hpp"
#include "jaif/manifest.hpp"
#include "jaif/report.hpp"

namespace jaif {

struct ExperimentConfig {
  Cue cue = Cue::kColor;
  // Manifest labels mapped to classes 0, 1, ...; entries with other labels are ignored.
  std::vector<std::string> classes;
  FeatureSettings features;
  ForestConfig forest;
  // Attacked entries (postprocessing other than "preprocess") are kept out of
  // training unless this is set.
  bool train_on_postprocessed = false;
  // Execution only; not part of the config hash.
  int workers = 0;
  std::filesystem::path features_out;
};

std::string experiment_config_to_json(const ExperimentConfig& c);
ExperimentConfig experiment_config_from_json(const std::string& text);
std::string config_hash(const ExperimentConfig& c);

// Extracts the cue's features, trains on the train split, evaluates the test
// split. Throws DataError for an empty train or test split.
ExperimentReport run_detection_experiment(const DatasetManifest& manifest,
                                          const ExperimentConfig& config);

}  // namespace jaif

#endif  // JAIF_EXPERIMENT_HPP_
