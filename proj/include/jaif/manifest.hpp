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

#ifndef JAIF_MANIFEST_HPP_
#define JAIF_MANIFEST_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jaif {

inline constexpr int kManifestVersion = 1;

enum class Split { kTrain, kVal, kTest };

std::string_view to_string(Split s);
Split parse_split(std::string_view s);

struct Provenance {
  std::string codec_id;            // empty when never compressed
  std::optional<double> strength;  // last compression strength
  std::optional<double> b0;        // first strength of a double compression
  std::optional<double> b1;        // second strength of a double compression
  std::string generator_id;        // set for synthesized images
  std::string postprocessing;      // e.g. "preprocess", "jpeg90", "resize90"
};

struct ManifestEntry {
  std::string image_id;
  // Pristine origin shared by all variants of one source image.
  std::string source_id;
  std::filesystem::path image_path;
  std::string label;
  Split split = Split::kTrain;
  Provenance provenance;

  // Evaluation cell key, e.g. "single/sim_latent@16" or "double/sim_latent@24>6+resize90".
  std::string condition() const;
};

struct DatasetManifest {
  int version = kManifestVersion;
  std::vector<std::string> labels;
  std::vector<ManifestEntry> entries;
  // Relative image paths resolve against this directory.
  std::filesystem::path root;

  std::filesystem::path resolve(const ManifestEntry& e) const;

  // Throws DataError on unknown labels, duplicate ids, sources shared by the
  // train and test splits, or (with check_paths) missing image files.
  void validate(bool check_paths = true) const;
};

DatasetManifest load_manifest(const std::filesystem::path& path);
void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);

std::string manifest_to_json(const DatasetManifest& manifest);
DatasetManifest manifest_from_json(const std::string& text, const std::filesystem::path& root);

// Shortest decimal form of a strength ("16", "0.75").
std::string format_strength(double v);

}  // namespace jaif

#endif  // JAIF_MANIFEST_HPP_
