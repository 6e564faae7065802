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

// Minimal external codec used by the adapter tests. The "bitstream" is a PNG
// of the input with every sample rounded to a multiple of 4.
//
//   fake_codec encode --strength S --in in.png --out out.bin --meta meta.json
//   fake_codec decode --in in.bin --out out.png [--latent lat.bin]
//   fake_codec fail ...           exits 7 after writing to stderr

#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "jaif/codecs.hpp"
#include "jaif/image_io.hpp"

int main(int argc, char** argv) {
  if (argc < 2) return 64;
  const std::string mode = argv[1];
  std::map<std::string, std::string> opt;
  for (int i = 2; i + 1 < argc; i += 2) opt[argv[i]] = argv[i + 1];
  try {
    if (mode == "fail") {
      std::cerr << "fake codec: refusing on purpose\n";
      return 7;
    }
    if (mode == "encode") {
      jaif::Image8 img = jaif::read_png(opt.at("--in"));
      for (int c = 0; c < 3; ++c) {
        for (auto& v : img.plane(c).reshaped()) v = static_cast<std::uint8_t>(v / 4 * 4);
      }
      jaif::write_png(opt.at("--out"), img);
      std::ofstream(opt.at("--meta")) << "{\"bits_y\": " << 2 * img.width() * img.height()
                                      << ", \"bits_z\": 64}\n";
      return 0;
    }
    if (mode == "decode") {
      std::filesystem::copy_file(opt.at("--in"), opt.at("--out"),
                                 std::filesystem::copy_options::overwrite_existing);
      if (opt.count("--latent")) {
        const jaif::Image8 img = jaif::read_png(opt.at("--in"));
        jaif::LatentTensor t(3, img.height() / 2, img.width() / 2);
        for (int c = 0; c < 3; ++c) {
          for (int i = 0; i < t.height(); ++i) {
            for (int j = 0; j < t.width(); ++j) t.at(c, i, j) = img.plane(c)(2 * i, 2 * j) / 4.0f;
          }
        }
        jaif::write_latent(opt.at("--latent"), t);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "fake codec: " << e.what() << "\n";
    return 3;
  }
  return 64;
}
