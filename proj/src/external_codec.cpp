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

#include <fcntl.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "jaif/codecs.hpp"
#include "jaif/image_io.hpp"

extern char** environ;

namespace jaif {
namespace fs = std::filesystem;

namespace {

constexpr std::size_t kStderrExcerpt = 2048;

std::vector<std::string> split_command(const std::string& cmd) {
  std::istringstream in(cmd);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

class TempDir {
 public:
  TempDir() {
    std::string tmpl = (fs::temp_directory_path() / "jaif-ext-XXXXXX").string();
    if (!::mkdtemp(tmpl.data())) throw DataError("cannot create temporary directory");
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string read_excerpt(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::string s(kStderrExcerpt, '\0');
  in.read(s.data(), static_cast<std::streamsize>(s.size()));
  s.resize(static_cast<std::size_t>(in.gcount()));
  return s;
}

void put_u32(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> b = {char(v & 0xff), char((v >> 8) & 0xff), char((v >> 16) & 0xff),
                                 char((v >> 24) & 0xff)};
  out.write(b.data(), 4);
}

std::uint32_t get_u32(std::istream& in) {
  std::array<unsigned char, 4> b{};
  in.read(reinterpret_cast<char*>(b.data()), 4);
  return std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 | std::uint32_t(b[2]) << 16 |
         std::uint32_t(b[3]) << 24;
}

}  // namespace

void run_process(const std::vector<std::string>& argv, const std::string& step_name) {
  if (argv.empty()) throw ContractError("external codec: empty command");
  const fs::path err_file =
      fs::temp_directory_path() / ("jaif-stderr-" + std::to_string(::getpid()) + "-" +
                                   std::to_string(reinterpret_cast<std::uintptr_t>(&argv)));
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_addopen(&actions, STDOUT_FILENO, "/dev/null", O_WRONLY, 0);
  posix_spawn_file_actions_addopen(&actions, STDERR_FILENO, err_file.c_str(),
                                   O_WRONLY | O_CREAT | O_TRUNC, 0600);
  std::vector<char*> args;
  for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);

  pid_t pid = 0;
  const int rc = ::posix_spawnp(&pid, args[0], &actions, nullptr, args.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  if (rc != 0) {
    std::error_code ec;
    fs::remove(err_file, ec);
    throw CodecFailure("external codec " + step_name + ": cannot start '" + argv[0] +
                           "': " + std::strerror(rc),
                       127, "");
  }
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0) {
    if (errno != EINTR) break;
  }
  const std::string excerpt = read_excerpt(err_file);
  std::error_code ec;
  fs::remove(err_file, ec);
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
  if (code != 0) {
    throw CodecFailure("external codec " + step_name + " failed with status " +
                           std::to_string(code) + (excerpt.empty() ? "" : ": " + excerpt),
                       code, excerpt);
  }
}

ExternalCodec::ExternalCodec(CodecSettings s, bool request_latents)
    : settings_(std::move(s)), request_latents_(request_latents) {
  argv0_ = split_command(settings_.command);
  if (argv0_.empty()) throw ContractError("external codec: no command configured");
  if (!(settings_.strength > 0.0)) {
    throw ContractError("external codec: strength (bpp) must be positive");
  }
}

CodecResult ExternalCodec::encode_decode(const Image8& img) const {
  std::lock_guard lock(mu_);
  TempDir dir;
  const fs::path in_png = dir.path() / "input.png";
  const fs::path bin = dir.path() / "stream.bin";
  const fs::path meta = dir.path() / "meta.json";
  const fs::path out_png = dir.path() / "decoded.png";
  const fs::path latent = dir.path() / "latent.bin";
  write_png(in_png, img);

  std::ostringstream strength;
  strength.precision(17);
  strength << settings_.strength;
  auto enc = argv0_;
  enc.insert(enc.end(), {"encode", "--strength", strength.str(), "--in", in_png.string(), "--out",
                         bin.string(), "--meta", meta.string()});
  run_process(enc, "encode");
  auto dec = argv0_;
  dec.insert(dec.end(), {"decode", "--in", bin.string(), "--out", out_png.string()});
  if (request_latents_) dec.insert(dec.end(), {"--latent", latent.string()});
  run_process(dec, "decode");

  nlohmann::json m;
  try {
    std::ifstream in(meta);
    if (!in) throw DataError("external codec wrote no meta file");
    m = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("external codec meta is not valid JSON: ") + e.what());
  }
  for (const char* key : {"bits_y", "bits_z"}) {
    if (!m.contains(key) || !m[key].is_number_integer() || m[key].get<std::int64_t>() < 0) {
      throw DataError(std::string("external codec meta lacks a non-negative integer '") + key +
                      "'");
    }
  }
  CodecResult r;
  r.decoded = read_png(out_png);
  if (r.decoded.width() != img.width() || r.decoded.height() != img.height()) {
    throw DataError("external codec decoded image has the wrong size");
  }
  r.bits_y = m["bits_y"].get<std::int64_t>();
  r.bits_z = m["bits_z"].get<std::int64_t>();
  r.height = img.height();
  r.width = img.width();
  fs::path latent_path;
  if (m.contains("latent_file") && m["latent_file"].is_string()) {
    latent_path = m["latent_file"].get<std::string>();
    if (latent_path.is_relative()) latent_path = dir.path() / latent_path;
  } else if (request_latents_ && fs::exists(latent)) {
    latent_path = latent;
  }
  if (!latent_path.empty()) r.latent = read_latent(latent_path);
  return r;
}

LatentTensor ExternalCodec::analyze(const Image8& img) const {
  CodecResult r = encode_decode(img);
  if (!r.latent) {
    throw UnsupportedError("external codec did not report latents for this image");
  }
  return std::move(*r.latent);
}

void write_latent(const fs::path& path, const LatentTensor& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write latent file '" + path.string() + "'");
  out.write("LAT1", 4);
  put_u32(out, static_cast<std::uint32_t>(t.channels()));
  put_u32(out, static_cast<std::uint32_t>(t.height()));
  put_u32(out, static_cast<std::uint32_t>(t.width()));
  for (float v : t.values()) {
    std::uint32_t bits = 0;
    std::memcpy(&bits, &v, 4);
    put_u32(out, bits);
  }
  if (!out) throw DataError("short write to latent file '" + path.string() + "'");
}

LatentTensor read_latent(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open latent file '" + path.string() + "'");
  std::array<char, 4> magic{};
  in.read(magic.data(), 4);
  if (!in || std::string(magic.data(), 4) != "LAT1") {
    throw DataError("latent file '" + path.string() + "' lacks the LAT1 magic");
  }
  const std::uint32_t c = get_u32(in), h = get_u32(in), w = get_u32(in);
  if (!in || c == 0 || h == 0 || w == 0 || std::uint64_t(c) * h * w > (1ULL << 31)) {
    throw DataError("latent file '" + path.string() + "' has an invalid header");
  }
  LatentTensor t(static_cast<int>(c), static_cast<int>(h), static_cast<int>(w));
  for (float& v : t.values()) {
    const std::uint32_t bits = get_u32(in);
    std::memcpy(&v, &bits, 4);
  }
  if (!in) throw DataError("latent file '" + path.string() + "' is truncated");
  t.validate();
  return t;
}

}  // namespace jaif
