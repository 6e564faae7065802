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

#ifndef JAIF_SYNTH_HPP_
#define JAIF_SYNTH_HPP_

#include <cstdint>

#include "jaif/codecs.hpp"
#include "jaif/image.hpp"

namespace jaif {

// Procedural stand-in for a camera photo. The scene has multi-octave value
// noise for luminance, smoother chroma fields, a global gradient, colored
// shapes and sharp chroma-only detail. It is sampled through an RGGB color
// filter array with sensor noise and bilinearly demosaiced.
struct TextureOptions {
  // Per-image sensor noise std dev (8-bit units) is drawn uniformly from
  // sensor_noise +- sensor_noise_jitter.
  double sensor_noise = 5.0;
  double sensor_noise_jitter = 1.5;
  int shapes = 12;
  int chroma_shapes = 40;  // per chroma plane, placed independently
  double chroma_edge_softness = 0.5;
  double chroma_detail = 2.0;  // amplitude of fine independent chroma texture
  bool camera = true;          // false renders the scene directly, without CFA or noise
};

Image8 textured_image(int width, int height, std::uint64_t seed, const TextureOptions& opt = {});

// Uniform-noise image (each sample iid in [lo, hi]).
Image8 noise_image(int width, int height, std::uint64_t seed, int lo = 0, int hi = 255);

// Image produced by a decoder without a quantizer: sim_latent synthesis of
// continuous latents taken from a procedural scene and perturbed by Laplace
// noise of scale `jitter` (in latent units).
Image8 decoder_synthesized_image(const SimLatentCodec& decoder, int width, int height,
                                 std::uint64_t seed, double jitter = 0.2);

// Bilinear resize by a scale factor (area-style sampling at pixel centers).
Image8 resize_bilinear(const Image8& img, double factor);

}  // namespace jaif

#endif  // JAIF_SYNTH_HPP_
