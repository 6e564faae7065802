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

#ifndef JAIF_CODECS_HPP_
#define JAIF_CODECS_HPP_

#include <filesystem>
#include <mutex>

#include <Eigen/Core>

#include "jaif/codec.hpp"

namespace jaif {

// 8x8 block DCT codec in the style of baseline JPEG: BT.601 YCbCr, 4:2:0
// chroma, IJG-scaled quantization tables. Rate is the order-0 entropy of the
// quantized DC-difference and AC symbol streams per component; there is no
// side channel, so bits_z is always 0.
class BaselineDctCodec final : public Codec {
 public:
  explicit BaselineDctCodec(CodecSettings s);

  std::string_view id() const override { return "baseline_dct"; }
  const CodecSettings& settings() const override { return settings_; }
  CodecResult encode_decode(const Image8& img) const override;

  int quality() const { return quality_; }
  // IJG quality scaling of the Annex K tables, entries clamped to [1,255].
  static Eigen::Matrix<int, 8, 8, Eigen::RowMajor> quant_table(int quality, bool chroma);

 private:
  CodecSettings settings_;
  int quality_;
  Eigen::MatrixXd dct_;
};

// Block-transform stand-in for a learned codec with a hyperprior.
//
// The RGB input goes to full-range YUV with 4:2:0 chroma. The analysis
// transform is a non-overlapping block DCT: 2p x 2p on luma and p x p on each
// half-resolution chroma plane, so one latent position covers a 2p x 2p pixel
// area and carries C = 4p^2 + 2p^2 = 6p^2 channels (one per frequency/plane
// pair). Channel c is divided by step * weight(c) so the quantizer rounds to
// integers. The hyperprior stand-in z is a 4x-downsampled log-variance map of
// y. Both rates are order-0 entropy estimates; synthesis is the exact inverse.
class SimLatentCodec final : public Codec {
 public:
  explicit SimLatentCodec(CodecSettings s);

  std::string_view id() const override { return "sim_latent"; }
  const CodecSettings& settings() const override { return settings_; }
  CodecResult encode_decode(const Image8& img) const override;
  bool exposes_latents() const override { return true; }
  LatentTensor analyze(const Image8& img) const override;

  int block() const { return p_; }
  int luma_block() const { return 2 * p_; }
  int channel_count() const { return 6 * p_ * p_; }
  double channel_step(int c) const { return step_ * weights_[c]; }

  // Transform-level entry points on unit-scaled YUV420 planes.
  LatentTensor analyze_planes(const ImageD& yuv420) const;
  ImageD synthesize_planes(const LatentTensor& y, int width, int height) const;
  // Synthesis followed by chroma upsampling, RGB conversion and 8-bit rounding.
  Image8 synthesize(const LatentTensor& y, int width, int height) const;

  static LatentTensor quantize(const LatentTensor& y);
  // Entropy estimate of the quantized latents, summed over per-channel streams.
  static std::int64_t latent_bits(const LatentTensor& yq);
  std::int64_t side_bits(const LatentTensor& y) const;

 private:
  CodecSettings settings_;
  int p_;
  double step_;
  Eigen::MatrixXd luma_dct_;
  Eigen::MatrixXd chroma_dct_;
  std::vector<double> weights_;
};

// Adapter for codecs living in another process. Each round trip runs
//   <cmd> encode --strength <s> --in <png> --out <bin> --meta <json>
//   <cmd> decode --in <bin> --out <png> [--latent <file>]
// inside a private temporary directory. The meta JSON must carry integer
// bits_y and bits_z and may name a latent_file (LAT1 layout).
class ExternalCodec final : public Codec {
 public:
  // request_latents adds --latent to the decode call.
  ExternalCodec(CodecSettings s, bool request_latents = false);

  std::string_view id() const override { return "external"; }
  const CodecSettings& settings() const override { return settings_; }
  CodecResult encode_decode(const Image8& img) const override;
  bool exposes_latents() const override { return request_latents_; }
  bool deterministic() const override { return false; }
  // Latents as reported by the external decoder (already quantized).
  LatentTensor analyze(const Image8& img) const override;

 private:
  CodecSettings settings_;
  bool request_latents_;
  std::vector<std::string> argv0_;
  mutable std::mutex mu_;
};

// Runs argv without a shell. Throws CodecFailure on non-zero exit, carrying the
// status and up to 2 KiB of stderr.
void run_process(const std::vector<std::string>& argv, const std::string& step_name);

// LAT1: "LAT1", u32 C, u32 H, u32 W (little-endian), then C*H*W float32.
void write_latent(const std::filesystem::path& path, const LatentTensor& t);
LatentTensor read_latent(const std::filesystem::path& path);

}  // namespace jaif

#endif  // JAIF_CODECS_HPP_
