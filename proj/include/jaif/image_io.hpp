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

#ifndef JAIF_IMAGE_IO_HPP_
#define JAIF_IMAGE_IO_HPP_

#include <filesystem>

#include "jaif/image.hpp"

namespace jaif {

// Lossless 8-bit RGB I/O. Grayscale and alpha PNGs are expanded/stripped on read.
Image8 read_png(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const Image8& img);

// Binary PPM (P6, maxval 255).
Image8 read_ppm(const std::filesystem::path& path);
void write_ppm(const std::filesystem::path& path, const Image8& img);

// Dispatch on extension: .png, .ppm.
Image8 read_image(const std::filesystem::path& path);
void write_image(const std::filesystem::path& path, const Image8& img);

}  // namespace jaif

#endif  // JAIF_IMAGE_IO_HPP_
