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

#ifndef JAIF_CORPUS_HPP_
#define JAIF_CORPUS_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "jaif/codec.hpp"
#include "jaif/manifest.hpp"
#include "jaif/synth.hpp"

namespace jaif {

struct SourceGroup {
  enum class Kind { kProcedural, kFiles, kSynthesized };
  Kind kind = Kind::kProcedural;
  std::string name;  // image id prefix; defaults to "g<index>"
  int count = 0;     // derived from paths for kFiles
  int width = 512;
  int height = 512;
  std::vector<std::filesystem::path> paths;
  std::string label;  // defaults to "original" / "synthesized"
  // Images are assigned in order: first `train`, then `val`, then `test`.
  int train = 0;
  int val = 0;
  int test = 0;
  TextureOptions texture;
  // Decoder used for kSynthesized.
  double decoder_step = 8.0;
  int decoder_block = 4;
  double jitter = 0.2;
};

struct VariantSpec {
  enum class Kind { kOriginal, kSingle, kDouble, kPreprocess };
  Kind kind = Kind::kOriginal;
  std::vector<double> strengths;  // single: strengths; double: first strengths b0
  double b1 = 0.0;                // double: second strength
  std::string label;              // defaults to the kind name
  std::vector<Split> splits;      // empty = every split
};

struct AttackSpec {
  enum class Kind { kJpeg, kResize };
  Kind kind = Kind::kJpeg;
  double value = 90;  // JPEG quality, or resize factor in (0,1]
  std::vector<Split> splits = {Split::kTest};
  std::vector<std::string> labels;  // empty = every label
};

struct CorpusSpec {
  std::filesystem::path output_dir;
  std::uint64_t seed = 0;
  CodecSettings codec;
  std::vector<SourceGroup> sources;
  std::vector<VariantSpec> variants;
  std::vector<AttackSpec> attacks;
  // Attacked images smaller than this (either side) are rejected.
  int min_size = 0;
  int workers = 0;
};

CorpusSpec corpus_spec_from_json(const std::string& text, const std::filesystem::path& base_dir);
CorpusSpec load_corpus_spec(const std::filesystem::path& path);

// Writes images under output_dir/images and the manifest to output_dir/manifest.json.
DatasetManifest build_corpus(const CorpusSpec& spec);

std::string attack_name(const AttackSpec& a);
Image8 apply_attack(const Image8& img, const AttackSpec& a);

}  // namespace jaif

#endif  // JAIF_CORPUS_HPP_
