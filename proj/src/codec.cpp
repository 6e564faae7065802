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

#include "jaif/codec.hpp"

#include <cmath>
#include <string>

#include "jaif/codecs.hpp"

namespace jaif {

LatentTensor::LatentTensor(int channels, int height, int width)
    : channels_(channels), height_(height), width_(width) {
  if (channels < 1 || height < 1 || width < 1) {
    throw ContractError("latent tensor needs C>=1 and non-empty spatial dims");
  }
  values_.assign(static_cast<std::size_t>(channels) * height * width, 0.0f);
}

Eigen::Map<Eigen::VectorXf> LatentTensor::channel(int c) {
  return {values_.data() + static_cast<std::size_t>(c) * channel_size(),
          static_cast<Eigen::Index>(channel_size())};
}

Eigen::Map<const Eigen::VectorXf> LatentTensor::channel(int c) const {
  return {values_.data() + static_cast<std::size_t>(c) * channel_size(),
          static_cast<Eigen::Index>(channel_size())};
}

void LatentTensor::validate() const {
  if (channels_ < 1 || height_ < 1 || width_ < 1) throw DataError("empty latent tensor");
  for (float v : values_) {
    if (!std::isfinite(v)) throw DataError("latent tensor holds non-finite values");
  }
}

LatentTensor Codec::analyze(const Image8&) const {
  throw UnsupportedError("codec '" + std::string(id()) + "' does not expose latents");
}

CodecResult IdentityCodec::encode_decode(const Image8& img) const {
  require_colorspace(img.colorspace(), ColorSpace::kRGB, "encode_decode");
  CodecResult r;
  r.decoded = img;
  r.bits_y = 24LL * img.height() * img.width();
  r.bits_z = 0;
  r.height = img.height();
  r.width = img.width();
  return r;
}

std::unique_ptr<Codec> make_codec(const CodecSettings& settings) {
  if (settings.codec_id == "identity") return std::make_unique<IdentityCodec>(settings);
  if (settings.codec_id == "baseline_dct") return std::make_unique<BaselineDctCodec>(settings);
  if (settings.codec_id == "sim_latent") return std::make_unique<SimLatentCodec>(settings);
  if (settings.codec_id == "external") return std::make_unique<ExternalCodec>(settings);
  throw ContractError("unknown codec id '" + settings.codec_id + "'");
}

std::vector<CodecResult> recompress_chain(const Codec& codec, const Image8& img, int k) {
  if (k < 1) throw ContractError("recompress_chain: k must be >= 1, got " + std::to_string(k));
  std::vector<CodecResult> chain;
  chain.reserve(k);
  for (int i = 0; i < k; ++i) {
    const Image8& input = i == 0 ? img : chain.back().decoded;
    const std::string where =
        "recompression step " + std::to_string(i + 1) + " (" + std::string(codec.id()) + "): ";
    try {
      chain.push_back(codec.encode_decode(input));
    } catch (const CodecFailure& e) {
      throw CodecFailure(where + e.what(), e.status(), e.stderr_excerpt());
    } catch (const UnsupportedError& e) {
      throw UnsupportedError(where + e.what());
    } catch (const ContractError& e) {
      throw ContractError(where + e.what());
    } catch (const DataError& e) {
      throw DataError(where + e.what());
    }
  }
  return chain;
}

std::vector<CodecResult> recompress_chain(const Image8& img, const CodecSettings& settings, int k) {
  return recompress_chain(*make_codec(settings), img, k);
}

}  // namespace jaif
