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

#include "settings_json.hpp"

#include <cstdio>

#include "jaif/error.hpp"

namespace jaif::detail {

Json codec_settings_json(const CodecSettings& s) {
  Json j;
  j["codec_id"] = s.codec_id;
  j["strength"] = s.strength;
  j["seed"] = s.seed;
  if (s.codec_id == "sim_latent") j["latent_block"] = s.latent_block;
  if (s.codec_id == "external") j["command"] = s.command;
  return j;
}

CodecSettings codec_settings_from(const Json& j) {
  CodecSettings s;
  s.codec_id = j.value("codec_id", s.codec_id);
  s.strength = j.value("strength", s.strength);
  s.seed = j.value("seed", s.seed);
  s.latent_block = j.value("latent_block", s.latent_block);
  s.command = j.value("command", s.command);
  return s;
}

Json forest_config_json(const ForestConfig& c) {
  Json j;
  j["n_trees"] = c.n_trees;
  j["max_depth"] = c.max_depth ? Json(*c.max_depth) : Json();
  j["features_per_split"] = std::string(to_string(c.features_per_split));
  j["fixed_features"] = c.fixed_features;
  j["min_leaf"] = c.min_leaf;
  j["seed"] = c.seed;
  j["bootstrap"] = c.bootstrap;
  return j;
}

ForestConfig forest_config_from(const Json& j) {
  ForestConfig c;
  c.n_trees = j.value("n_trees", c.n_trees);
  if (j.contains("max_depth") && !j["max_depth"].is_null()) c.max_depth = j["max_depth"].get<int>();
  if (j.contains("features_per_split")) {
    c.features_per_split = parse_split_features(j["features_per_split"].get<std::string>());
  }
  c.fixed_features = j.value("fixed_features", c.fixed_features);
  c.min_leaf = j.value("min_leaf", c.min_leaf);
  c.seed = j.value("seed", c.seed);
  c.bootstrap = j.value("bootstrap", c.bootstrap);
  c.validate();
  return c;
}

Json feature_settings_json(const FeatureSettings& s, Cue cue) {
  Json j;
  switch (cue) {
    case Cue::kColor: {
      j["patch"] = s.color.patch;
      j["filter_id"] = std::string(filter_name(s.color.filter));
      Json ch = Json::array();
      for (Channel c : s.color_channels) ch.push_back(std::string(1, channel_letter(c)));
      j["channels"] = ch;
      break;
    }
    case Cue::kRd:
      j["extractor"] = codec_settings_json(s.extractor);
      j["recompressions"] = kRdRecompressions;
      j["psnr"] = "rgb_all_samples";
      break;
    case Cue::kQuant:
      j["extractor"] = codec_settings_json(s.extractor);
      j["mode"] = std::string(to_string(s.quant_mode));
      j["crop"] = s.quant.crop;
      j["latent_source"] = std::string(to_string(s.quant.source));
      break;
  }
  return j;
}

FeatureSettings feature_settings_from(const Json& j, Cue cue) {
  FeatureSettings s;
  switch (cue) {
    case Cue::kColor:
      s.color.patch = j.value("patch", s.color.patch);
      if (j.contains("filter_id")) s.color.filter = parse_filter(j["filter_id"].get<std::string>());
      if (j.contains("channels")) {
        s.color_channels.clear();
        for (const auto& c : j["channels"]) s.color_channels.push_back(parse_channel(c.get<std::string>()));
        if (s.color_channels.empty()) throw ContractError("color cue needs at least one channel");
      }
      break;
    case Cue::kRd:
      if (j.contains("extractor")) s.extractor = codec_settings_from(j["extractor"]);
      break;
    case Cue::kQuant:
      if (j.contains("extractor")) s.extractor = codec_settings_from(j["extractor"]);
      if (j.contains("mode")) s.quant_mode = parse_quant_mode(j["mode"].get<std::string>());
      s.quant.crop = j.value("crop", s.quant.crop);
      if (j.contains("latent_source")) {
        s.quant.source = parse_latent_source(j["latent_source"].get<std::string>());
      }
      break;
  }
  return s;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace jaif::detail
