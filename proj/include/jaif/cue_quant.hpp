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

#ifndef JAIF_CUE_QUANT_HPP_
#define JAIF_CUE_QUANT_HPP_

#include <cmath>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "jaif/codec.hpp"
#include "jaif/image.hpp"

namespace jaif {

enum class QuantMode { kFull, kTruncated };

std::string_view to_string(QuantMode m);
QuantMode parse_quant_mode(std::string_view s);

// Where the probed latents come from: the analysis transform of the input
// (default), or the analysis of the probe codec's own decoded round trip.
enum class LatentSource { kAnalysis, kReencoded };

struct QuantFeature {
  QuantMode mode = QuantMode::kFull;
  std::vector<double> values;
  int channel_count() const { return static_cast<int>(values.size()); }
};

struct QuantFeatureOptions {
  int crop = 256;
  LatentSource source = LatentSource::kAnalysis;
};

// Cosine similarity between a latent channel and its rounding to the nearest
// integer (ties away from zero). In truncated mode the rounded vector is first
// reduced to its sign pattern. Zero norms give 0.
template <typename Derived>
double channel_phi(const Eigen::DenseBase<Derived>& y, QuantMode mode) {
  if (y.size() == 0) throw ContractError("channel_phi: empty channel");
  const Eigen::ArrayXd v = y.derived().template cast<double>().array();
  Eigen::ArrayXd q = v.round();
  if (mode == QuantMode::kTruncated) q = q.sign();
  const double nv = v.matrix().norm();
  const double nq = q.matrix().norm();
  if (nv == 0.0 || nq == 0.0) return 0.0;
  return std::clamp((v * q).sum() / (nv * nq), -1.0, 1.0);
}

QuantFeature quant_feature_from_latent(const LatentTensor& y, QuantMode mode);

// Center crop, latent probe, one value per channel. Throws UnsupportedError
// if the codec does not expose latents.
QuantFeature extract_quant_features(const Image8& img, const Codec& codec, QuantMode mode,
                                    const QuantFeatureOptions& opt = {});
QuantFeature extract_quant_features(const Image8& img, const CodecSettings& settings,
                                    QuantMode mode, const QuantFeatureOptions& opt = {});

double mean_phi(const QuantFeature& f);

}  // namespace jaif

#endif  // JAIF_CUE_QUANT_HPP_
