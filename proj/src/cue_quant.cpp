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

#include "jaif/cue_quant.hpp"

#include <numeric>
#include <string>

namespace jaif {

std::string_view to_string(QuantMode m) { return m == QuantMode::kFull ? "full" : "truncated"; }

QuantMode parse_quant_mode(std::string_view s) {
  if (s == "full") return QuantMode::kFull;
  if (s == "truncated") return QuantMode::kTruncated;
  throw ContractError("unknown quantization feature mode '" + std::string(s) + "'");
}

QuantFeature quant_feature_from_latent(const LatentTensor& y, QuantMode mode) {
  y.validate();
  QuantFeature f;
  f.mode = mode;
  f.values.reserve(static_cast<std::size_t>(y.channels()));
  for (int c = 0; c < y.channels(); ++c) f.values.push_back(channel_phi(y.channel(c), mode));
  return f;
}

QuantFeature extract_quant_features(const Image8& img, const Codec& codec, QuantMode mode,
                                    const QuantFeatureOptions& opt) {
  if (!codec.exposes_latents()) {
    throw UnsupportedError("codec '" + std::string(codec.id()) +
                           "' does not expose latents; quantization features need them");
  }
  const Image8 patch = center_crop(img, opt.crop, opt.crop);
  if (opt.source == LatentSource::kReencoded) {
    return quant_feature_from_latent(codec.analyze(codec.encode_decode(patch).decoded), mode);
  }
  return quant_feature_from_latent(codec.analyze(patch), mode);
}

QuantFeature extract_quant_features(const Image8& img, const CodecSettings& settings,
                                    QuantMode mode, const QuantFeatureOptions& opt) {
  return extract_quant_features(img, *make_codec(settings), mode, opt);
}

double mean_phi(const QuantFeature& f) {
  if (f.values.empty()) throw ContractError("mean_phi: empty feature");
  return std::accumulate(f.values.begin(), f.values.end(), 0.0) / double(f.values.size());
}

}  // namespace jaif
