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

#include "jaif/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

namespace jaif {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw DataError("cannot open '" + path.string() + "'");
  return f;
}

[[noreturn]] void png_fail(png_structp, png_const_charp msg) { throw DataError(msg); }
void png_warn(png_structp, png_const_charp) {}

void require_rgb(const Image8& img) {
  require_colorspace(img.colorspace(), ColorSpace::kRGB, "image write");
}

}  // namespace

Image8 read_png(const std::filesystem::path& path) {
  FilePtr f = open_file(path, "rb");
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_fail, png_warn);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw DataError("libpng initialisation failed");
  }
  struct Guard {
    png_structp* p;
    png_infop* i;
    ~Guard() { png_destroy_read_struct(p, i, nullptr); }
  } guard{&png, &info};

  try {
    png_init_io(png, f.get());
    png_read_info(png, info);
    png_set_strip_16(png);
    png_set_strip_alpha(png);
    png_set_packing(png);
    png_set_expand(png);
    png_set_gray_to_rgb(png);
    png_read_update_info(png, info);
    const int w = static_cast<int>(png_get_image_width(png, info));
    const int h = static_cast<int>(png_get_image_height(png, info));
    const std::size_t rowbytes = png_get_rowbytes(png, info);
    if (rowbytes != static_cast<std::size_t>(w) * 3) {
      throw DataError("unsupported PNG layout in '" + path.string() + "'");
    }
    std::vector<png_byte> buf(rowbytes * h);
    std::vector<png_bytep> rows(h);
    for (int y = 0; y < h; ++y) rows[y] = buf.data() + y * rowbytes;
    png_read_image(png, rows.data());
    Image8 img(w, h, ColorSpace::kRGB);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        for (int c = 0; c < 3; ++c) img.plane(c)(y, x) = rows[y][3 * x + c];
      }
    }
    return img;
  } catch (const DataError& e) {
    throw DataError("corrupt PNG '" + path.string() + "': " + e.what());
  }
}

void write_png(const std::filesystem::path& path, const Image8& img) {
  require_rgb(img);
  FilePtr f = open_file(path, "wb");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_fail, png_warn);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw DataError("libpng initialisation failed");
  }
  struct Guard {
    png_structp* p;
    png_infop* i;
    ~Guard() { png_destroy_write_struct(p, i); }
  } guard{&png, &info};

  const int w = img.width(), h = img.height();
  std::vector<png_byte> row(static_cast<std::size_t>(w) * 3);
  png_init_io(png, f.get());
  png_set_IHDR(png, info, w, h, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < 3; ++c) row[3 * x + c] = img.plane(c)(y, x);
    }
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
}

namespace {

// Reads the next whitespace/comment separated header token of a PNM file.
std::string pnm_token(std::istream& in) {
  std::string tok;
  while (in) {
    const int ch = in.get();
    if (ch == '#') {
      std::string skip;
      std::getline(in, skip);
      continue;
    }
    if (std::isspace(ch) || ch == EOF) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(ch));
  }
  return tok;
}

}  // namespace

Image8 read_ppm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  if (pnm_token(in) != "P6") throw DataError("'" + path.string() + "' is not a binary PPM");
  int w = 0, h = 0, maxval = 0;
  try {
    w = std::stoi(pnm_token(in));
    h = std::stoi(pnm_token(in));
    maxval = std::stoi(pnm_token(in));
  } catch (const std::exception&) {
    throw DataError("corrupt PPM header in '" + path.string() + "'");
  }
  if (w <= 0 || h <= 0 || maxval != 255) {
    throw DataError("unsupported PPM geometry or maxval in '" + path.string() + "'");
  }
  std::vector<char> buf(static_cast<std::size_t>(w) * h * 3);
  in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (in.gcount() != static_cast<std::streamsize>(buf.size())) {
    throw DataError("truncated PPM '" + path.string() + "'");
  }
  Image8 img(w, h, ColorSpace::kRGB);
  std::size_t k = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < 3; ++c) img.plane(c)(y, x) = static_cast<std::uint8_t>(buf[k++]);
    }
  }
  return img;
}

void write_ppm(const std::filesystem::path& path, const Image8& img) {
  require_rgb(img);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << "P6\n" << img.width() << " " << img.height() << "\n255\n";
  std::vector<char> buf(static_cast<std::size_t>(img.width()) * img.height() * 3);
  std::size_t k = 0;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      for (int c = 0; c < 3; ++c) buf[k++] = static_cast<char>(img.plane(c)(y, x));
    }
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw DataError("short write to '" + path.string() + "'");
}

Image8 read_image(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".png" || ext == ".PNG") return read_png(path);
  if (ext == ".ppm" || ext == ".PPM") return read_ppm(path);
  throw ContractError("unsupported image extension '" + ext + "' (expected .png or .ppm)");
}

void write_image(const std::filesystem::path& path, const Image8& img) {
  const auto ext = path.extension().string();
  if (ext == ".png" || ext == ".PNG") return write_png(path, img);
  if (ext == ".ppm" || ext == ".PPM") return write_ppm(path, img);
  throw ContractError("unsupported image extension '" + ext + "' (expected .png or .ppm)");
}

}  // namespace jaif
