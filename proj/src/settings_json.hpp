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

// JSON mapping of settings structs shared by feature sidecars, experiment
// configs and reports.

#ifndef JAIF_SRC_SETTINGS_JSON_HPP_
#define JAIF_SRC_SETTINGS_JSON_HPP_

#include <nlohmann/json.hpp>

#include "jaif/codec.hpp"
#include "jaif/features.hpp"
#include "jaif/forest.hpp"

namespace jaif::detail {

using Json = nlohmann::ordered_json;

Json codec_settings_json(const CodecSettings& s);
CodecSettings codec_settings_from(const Json& j);

Json forest_config_json(const ForestConfig& c);
ForestConfig forest_config_from(const Json& j);

// Only the fields that the cue actually reads.
Json feature_settings_json(const FeatureSettings& s, Cue cue);
FeatureSettings feature_settings_from(const Json& j, Cue cue);

std::string fnv1a_hex(const std::string& text);

}  // namespace jaif::detail

#endif  // JAIF_SRC_SETTINGS_JSON_HPP_
