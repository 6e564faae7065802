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

#include <cmath>
#include <string>
#include <vector>

#include "jaif/codecs.hpp"
#include "jaif/color.hpp"
#include "jaif/transform.hpp"

namespace jaif {
namespace {

constexpr double kChromaWeight = 1.5;
constexpr int kSidePool = 4;

double freq_weight(int u, int v, int n) { return 1.0 + 4.0 * (u + v) / n; }

// Forward block DCT of a padded plane into consecutive latent channels.
void analyze_plane(const PlaneD& plane, const Eigen::MatrixXd& d, int first_channel,
                   const std::vector<double>& steps, LatentTensor& out) {
  const int n = static_cast<int>(d.rows());
  Eigen::MatrixXd tmp(n, n), coef(n, n);
  for (int bi = 0; bi < out.height(); ++bi) {
    for (int bj = 0; bj < out.width(); ++bj) {
      tmp.noalias() = d * plane.block(bi * n, bj * n, n, n).matrix();
      coef.noalias() = tmp * d.transpose();
      for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
          const int c = first_channel + u * n + v;
          out.at(c, bi, bj) = static_cast<float>(coef(u, v) / steps[c]);
        }
      }
    }
  }
}

PlaneD synthesize_plane(const LatentTensor& y, const Eigen::MatrixXd& d, int first_channel,
                        const std::vector<double>& steps) {
  const int n = static_cast<int>(d.rows());
  PlaneD plane(static_cast<Eigen::Index>(y.height()) * n, static_cast<Eigen::Index>(y.width()) * n);
  Eigen::MatrixXd coef(n, n), tmp(n, n);
  for (int bi = 0; bi < y.height(); ++bi) {
    for (int bj = 0; bj < y.width(); ++bj) {
      for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
          const int c = first_channel + u * n + v;
          coef(u, v) = static_cast<double>(y.at(c, bi, bj)) * steps[c];
        }
      }
      tmp.noalias() = d.transpose() * coef;
      plane.block(bi * n, bj * n, n, n) = (tmp * d).array();
    }
  }
  return plane;
}

}  // namespace

SimLatentCodec::SimLatentCodec(CodecSettings s) : settings_(std::move(s)) {
  p_ = settings_.latent_block;
  step_ = settings_.strength;
  if (p_ < 1 || p_ > 16) {
    throw ContractError("sim_latent: latent_block must lie in [1,16], got " + std::to_string(p_));
  }
  if (!(step_ > 0.0 && step_ <= 1000.0)) {
    throw ContractError("sim_latent: step must lie in (0,1000], got " + std::to_string(step_));
  }
  const int n = 2 * p_;
  luma_dct_ = dct_matrix(n);
  chroma_dct_ = dct_matrix(p_);
  weights_.reserve(channel_count());
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) weights_.push_back(freq_weight(u, v, n));
  }
  for (int plane = 0; plane < 2; ++plane) {
    for (int u = 0; u < p_; ++u) {
      for (int v = 0; v < p_; ++v) weights_.push_back(kChromaWeight * freq_weight(u, v, p_));
    }
  }
}

LatentTensor SimLatentCodec::analyze_planes(const ImageD& yuv420) const {
  require_colorspace(yuv420.colorspace(), ColorSpace::kYUV420, "sim_latent analysis");
  const int n = 2 * p_;
  const int hb = (yuv420.height() + n - 1) / n;
  const int wb = (yuv420.width() + n - 1) / n;
  std::vector<double> steps(weights_.size());
  for (std::size_t c = 0; c < steps.size(); ++c) steps[c] = step_ * weights_[c];

  LatentTensor y(channel_count(), hb, wb);
  analyze_plane(pad_replicate(yuv420.plane(0) * 255.0 - 128.0, hb * n, wb * n), luma_dct_, 0,
                steps, y);
  for (int c = 1; c < 3; ++c) {
    analyze_plane(pad_replicate((yuv420.plane(c) - 0.5) * 255.0, hb * p_, wb * p_), chroma_dct_,
                  n * n + (c - 1) * p_ * p_, steps, y);
  }
  return y;
}

ImageD SimLatentCodec::synthesize_planes(const LatentTensor& y, int width, int height) const {
  const int n = 2 * p_;
  if (y.channels() != channel_count() || y.height() * n < height || y.width() * n < width) {
    throw ContractError("sim_latent synthesis: latent shape does not match codec and image size");
  }
  std::vector<double> steps(weights_.size());
  for (std::size_t c = 0; c < steps.size(); ++c) steps[c] = step_ * weights_[c];

  const int ch = (height + 1) / 2, cw = (width + 1) / 2;
  std::array<PlaneD, 3> planes;
  planes[0] = (synthesize_plane(y, luma_dct_, 0, steps).block(0, 0, height, width) + 128.0) / 255.0;
  for (int c = 1; c < 3; ++c) {
    planes[c] =
        synthesize_plane(y, chroma_dct_, n * n + (c - 1) * p_ * p_, steps).block(0, 0, ch, cw) /
            255.0 +
        0.5;
  }
  return ImageD(std::move(planes), ColorSpace::kYUV420);
}

Image8 SimLatentCodec::synthesize(const LatentTensor& y, int width, int height) const {
  return convert_depth<std::uint8_t>(
      yuv_to_rgb(chroma_upsample_420(synthesize_planes(y, width, height))));
}

LatentTensor SimLatentCodec::analyze(const Image8& img) const {
  require_colorspace(img.colorspace(), ColorSpace::kRGB, "sim_latent analysis");
  return analyze_planes(chroma_downsample_420(rgb_to_yuv(convert_depth<double>(img))));
}

LatentTensor SimLatentCodec::quantize(const LatentTensor& y) {
  LatentTensor q = y;
  for (float& v : q.values()) v = static_cast<float>(round_half_away(v));
  return q;
}

std::int64_t SimLatentCodec::latent_bits(const LatentTensor& yq) {
  double bits = 0.0;
  for (int c = 0; c < yq.channels(); ++c) {
    const auto ch = yq.channel(c);
    bits += shannon_bits(std::span<const float>(ch.data(), static_cast<std::size_t>(ch.size())));
  }
  return static_cast<std::int64_t>(std::ceil(bits));
}

std::int64_t SimLatentCodec::side_bits(const LatentTensor& y) const {
  const int zh = (y.height() + kSidePool - 1) / kSidePool;
  const int zw = (y.width() + kSidePool - 1) / kSidePool;
  std::vector<int> z;
  z.reserve(static_cast<std::size_t>(zh) * zw);
  for (int zi = 0; zi < zh; ++zi) {
    for (int zj = 0; zj < zw; ++zj) {
      double acc = 0.0;
      int count = 0;
      for (int i = zi * kSidePool; i < std::min(y.height(), (zi + 1) * kSidePool); ++i) {
        for (int j = zj * kSidePool; j < std::min(y.width(), (zj + 1) * kSidePool); ++j) {
          double energy = 0.0;
          for (int c = 0; c < y.channels(); ++c) energy += double(y.at(c, i, j)) * y.at(c, i, j);
          acc += std::log2(energy / y.channels() + 1.0 / 16.0);
          ++count;
        }
      }
      z.push_back(static_cast<int>(round_half_away(2.0 * acc / count)));
    }
  }
  return static_cast<std::int64_t>(std::ceil(shannon_bits(z)));
}

CodecResult SimLatentCodec::encode_decode(const Image8& img) const {
  const LatentTensor y = analyze(img);
  LatentTensor yq = quantize(y);
  CodecResult r;
  r.bits_y = latent_bits(yq);
  r.bits_z = side_bits(y);
  r.decoded = synthesize(yq, img.width(), img.height());
  r.height = img.height();
  r.width = img.width();
  r.latent = std::move(yq);
  return r;
}

}  // namespace jaif
