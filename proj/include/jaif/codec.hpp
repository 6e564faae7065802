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

#ifndef JAIF_CODEC_HPP_
#define JAIF_CODEC_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "jaif/image.hpp"

namespace jaif {

struct CodecSettings {
  // "identity", "baseline_dct", "sim_latent" or "external".
  std::string codec_id = "sim_latent";
  // Quality 1-100 (baseline_dct), global quantizer step (sim_latent) or
  // target bpp (external).
  double strength = 8.0;
  std::uint64_t seed = 0;
  // sim_latent chroma block size; the luma block is twice as large.
  int latent_block = 4;
  // External codec command (executable path, optionally with leading arguments).
  std::string command;
};

// C x H' x W' latent coefficients, channel-major.
class LatentTensor {
 public:
  LatentTensor() = default;
  LatentTensor(int channels, int height, int width);

  int channels() const { return channels_; }
  int height() const { return height_; }
  int width() const { return width_; }
  std::size_t channel_size() const { return static_cast<std::size_t>(height_) * width_; }

  // Spatial slice of one channel, flattened row-major.
  Eigen::Map<Eigen::VectorXf> channel(int c);
  Eigen::Map<const Eigen::VectorXf> channel(int c) const;
  float& at(int c, int i, int j) { return values_[index(c, i, j)]; }
  float at(int c, int i, int j) const { return values_[index(c, i, j)]; }

  std::span<const float> values() const { return values_; }
  std::span<float> values() { return values_; }

  // Throws DataError on non-finite values or empty shape.
  void validate() const;

 private:
  std::size_t index(int c, int i, int j) const {
    return (static_cast<std::size_t>(c) * height_ + i) * width_ + j;
  }
  int channels_ = 0;
  int height_ = 0;
  int width_ = 0;
  std::vector<float> values_;
};

struct CodecResult {
  Image8 decoded;
  std::int64_t bits_y = 0;
  std::int64_t bits_z = 0;
  std::optional<LatentTensor> latent;
  int height = 0;
  int width = 0;

  double bpp() const { return double(bits_y + bits_z) / (double(height) * width); }
};

class Codec {
 public:
  virtual ~Codec() = default;

  virtual std::string_view id() const = 0;
  virtual const CodecSettings& settings() const = 0;

  // Full round trip: analysis, quantization, rate accounting, synthesis.
  virtual CodecResult encode_decode(const Image8& img) const = 0;

  // Whether the codec reports separate latent/side-information rates.
  virtual bool reports_rates() const { return true; }
  virtual bool exposes_latents() const { return false; }
  // Bit-identical results for equal inputs.
  virtual bool deterministic() const { return true; }

  // Analysis transform output before quantization, in quantizer-step units.
  virtual LatentTensor analyze(const Image8& img) const;
};

// Pass-through reference codec: decoded == input, bits_y = 24*h*w, bits_z = 0.
class IdentityCodec final : public Codec {
 public:
  explicit IdentityCodec(CodecSettings s) : settings_(std::move(s)) {}
  std::string_view id() const override { return "identity"; }
  const CodecSettings& settings() const override { return settings_; }
  CodecResult encode_decode(const Image8& img) const override;

 private:
  CodecSettings settings_;
};

// Throws ContractError for unknown codec ids or out-of-range strengths.
std::unique_ptr<Codec> make_codec(const CodecSettings& settings);

// result[0] = encode_decode(img), result[i] = encode_decode(result[i-1].decoded).
std::vector<CodecResult> recompress_chain(const Codec& codec, const Image8& img, int k);
std::vector<CodecResult> recompress_chain(const Image8& img, const CodecSettings& settings, int k);

}  // namespace jaif

#endif  // JAIF_CODEC_HPP_
