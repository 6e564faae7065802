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

#ifndef JAIF_FEATURES_HPP_
#define JAIF_FEATURES_HPP_

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "jaif/codec.hpp"
#include "jaif/cue_color.hpp"
#include "jaif/cue_quant.hpp"
#include "jaif/cue_rd.hpp"
#include "jaif/forest.hpp"
#include "jaif/manifest.hpp"

namespace jaif {

enum class Cue { kColor, kRd, kQuant };

std::string_view to_string(Cue c);
Cue parse_cue(std::string_view s);

std::string_view to_string(LatentSource s);
LatentSource parse_latent_source(std::string_view s);

struct FeatureSettings {
  ColorFeatureOptions color;
  // Center channels whose row vectors are concatenated into one sample.
  std::vector<Channel> color_channels = {Channel::kB};
  // Codec whose analysis (quant) or recompression chain (rd) probes the image.
  CodecSettings extractor;
  QuantMode quant_mode = QuantMode::kFull;
  QuantFeatureOptions quant;
};

// Per-image features of one cue, in the order of `image_ids`.
struct FeatureSet {
  Cue cue = Cue::kColor;
  FeatureSettings settings;
  std::vector<std::string> image_ids;
  std::vector<std::array<ColorCorrFeature, 3>> color;
  std::vector<RdFeature> rd;
  std::vector<QuantFeature> quant;

  std::size_t size() const { return image_ids.size(); }
};

FeatureSet extract_feature_set(const DatasetManifest& manifest,
                               const std::vector<std::size_t>& entries, Cue cue,
                               const FeatureSettings& settings, int workers = 0);

// One row per image, laid out for the classifier.
FeatureMatrix feature_matrix(const FeatureSet& set);

// Writes the cue's CSV and a sidecar JSON next to it (path + ".json").
void write_feature_set(const FeatureSet& set, const std::filesystem::path& csv);
FeatureSet read_feature_set(const std::filesystem::path& csv);

std::filesystem::path sidecar_path(const std::filesystem::path& csv);

}  // namespace jaif

#endif  // JAIF_FEATURES_HPP_
