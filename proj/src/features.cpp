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

#include "jaif/features.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "jaif/error.hpp"
#include "jaif/image_io.hpp"
#include "jaif/parallel.hpp"
#include "jaif/version.hpp"
#include "settings_json.hpp"

namespace jaif {

using detail::Json;

std::string_view to_string(Cue c) {
  switch (c) {
    case Cue::kColor: return "color";
    case Cue::kRd: return "rd";
    case Cue::kQuant: return "quant";
  }
  return "color";
}

Cue parse_cue(std::string_view s) {
  if (s == "color") return Cue::kColor;
  if (s == "rd") return Cue::kRd;
  if (s == "quant") return Cue::kQuant;
  throw ContractError("unknown cue '" + std::string(s) + "' (expected color, rd or quant)");
}

std::string_view to_string(LatentSource s) {
  return s == LatentSource::kAnalysis ? "analysis" : "reencoded";
}

LatentSource parse_latent_source(std::string_view s) {
  if (s == "analysis") return LatentSource::kAnalysis;
  if (s == "reencoded") return LatentSource::kReencoded;
  throw ContractError("unknown latent source '" + std::string(s) + "'");
}

FeatureSet extract_feature_set(const DatasetManifest& manifest,
                               const std::vector<std::size_t>& entries, Cue cue,
                               const FeatureSettings& settings, int workers) {
  FeatureSet set;
  set.cue = cue;
  set.settings = settings;
  const std::size_t n = entries.size();
  for (std::size_t i : entries) {
    if (i >= manifest.entries.size()) throw ContractError("feature extraction: entry out of range");
    set.image_ids.push_back(manifest.entries[i].image_id);
  }
  std::unique_ptr<Codec> codec;
  if (cue != Cue::kColor) {
    codec = make_codec(settings.extractor);
    if (cue == Cue::kRd && !codec->reports_rates()) {
      throw UnsupportedError("rd features: codec '" + settings.extractor.codec_id +
                             "' does not report latent and side-information rates");
    }
    if (cue == Cue::kQuant && !codec->exposes_latents()) {
      throw UnsupportedError("quant features: codec '" + settings.extractor.codec_id +
                             "' does not expose latents");
    }
  }
  switch (cue) {
    case Cue::kColor: set.color.resize(n); break;
    case Cue::kRd: set.rd.resize(n); break;
    case Cue::kQuant: set.quant.resize(n); break;
  }
  parallel_for(n, workers, [&](std::size_t k) {
    const ManifestEntry& e = manifest.entries[entries[k]];
    try {
      const Image8 img = read_image(manifest.resolve(e));
      switch (cue) {
        case Cue::kColor: set.color[k] = extract_color_features(img, settings.color); break;
        case Cue::kRd: set.rd[k] = extract_rd_features(img, *codec); break;
        case Cue::kQuant:
          set.quant[k] = extract_quant_features(img, *codec, settings.quant_mode, settings.quant);
          break;
      }
    } catch (const UnsupportedError& ex) {
      throw UnsupportedError("image '" + e.image_id + "': " + ex.what());
    } catch (const CodecFailure&) {
      throw;
    } catch (const ContractError& ex) {
      throw ContractError("image '" + e.image_id + "': " + ex.what());
    } catch (const DataError& ex) {
      throw DataError("image '" + e.image_id + "': " + ex.what());
    }
  });
  return set;
}

FeatureMatrix feature_matrix(const FeatureSet& set) {
  const std::size_t n = set.size();
  switch (set.cue) {
    case Cue::kColor: {
      if (n == 0) return FeatureMatrix(0, 0);
      const auto& chans = set.settings.color_channels;
      const int len = static_cast<int>(set.color[0][0].values.size());
      FeatureMatrix x(n, len * chans.size());
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < chans.size(); ++c) {
          const auto& v = set.color[i][static_cast<int>(chans[c])].values;
          if (static_cast<int>(v.size()) != len) throw DataError("color features differ in length");
          for (int r = 0; r < len; ++r) x(i, c * len + r) = v[r];
        }
      }
      return x;
    }
    case Cue::kRd: {
      FeatureMatrix x(n, kRdFeatureDim);
      for (std::size_t i = 0; i < n; ++i) x.row(i) = flatten(set.rd[i]).transpose();
      return x;
    }
    case Cue::kQuant: {
      if (n == 0) return FeatureMatrix(0, 0);
      const int c = set.quant[0].channel_count();
      FeatureMatrix x(n, c);
      for (std::size_t i = 0; i < n; ++i) {
        if (set.quant[i].channel_count() != c) throw DataError("quant features differ in length");
        for (int k = 0; k < c; ++k) x(i, k) = set.quant[i].values[k];
      }
      return x;
    }
  }
  return {};
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
  return std::filesystem::path(csv.string() + ".json");
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double to_double(const std::string& s, const std::filesystem::path& path) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DataError("feature file " + path.string() + ": bad number '" + s + "'");
  }
}

}  // namespace

void write_feature_set(const FeatureSet& set, const std::filesystem::path& csv) {
  std::ofstream out(csv, std::ios::binary);
  if (!out) throw DataError("cannot write feature file " + csv.string());
  switch (set.cue) {
    case Cue::kColor:
      out << "image_id,center_channel,row_index,rho\n";
      for (std::size_t i = 0; i < set.size(); ++i) {
        for (const auto& f : set.color[i]) {
          for (std::size_t r = 0; r < f.values.size(); ++r) {
            out << set.image_ids[i] << ',' << channel_letter(f.center_channel) << ',' << r << ','
                << num(f.values[r]) << '\n';
          }
        }
      }
      break;
    case Cue::kRd: {
      out << "image_id,codec_id,strength";
      for (auto name : rd_feature_names()) out << ',' << name;
      out << '\n';
      for (std::size_t i = 0; i < set.size(); ++i) {
        out << set.image_ids[i] << ',' << set.settings.extractor.codec_id << ','
            << num(set.settings.extractor.strength);
        const RdVector v = flatten(set.rd[i]);
        for (int k = 0; k < kRdFeatureDim; ++k) out << ',' << num(v[k]);
        out << '\n';
      }
      break;
    }
    case Cue::kQuant:
      out << "image_id,mode,channel_index,phi\n";
      for (std::size_t i = 0; i < set.size(); ++i) {
        const auto& f = set.quant[i];
        for (std::size_t c = 0; c < f.values.size(); ++c) {
          out << set.image_ids[i] << ',' << to_string(f.mode) << ',' << c << ',' << num(f.values[c])
              << '\n';
        }
      }
      break;
  }
  if (!out) throw DataError("failed writing feature file " + csv.string());

  Json side;
  side["cue"] = std::string(to_string(set.cue));
  side["code_version"] = kVersion;
  side["count"] = set.size();
  side["settings"] = detail::feature_settings_json(set.settings, set.cue);
  if (set.cue == Cue::kQuant) {
    side["channel_count"] = set.quant.empty() ? 0 : set.quant[0].channel_count();
  }
  if (set.cue == Cue::kColor) side["feature_length"] = set.color.empty() ? 0 : set.color[0][0].values.size();
  std::ofstream sc(sidecar_path(csv), std::ios::binary);
  if (!sc) throw DataError("cannot write sidecar " + sidecar_path(csv).string());
  sc << side.dump(1) << '\n';
}

FeatureSet read_feature_set(const std::filesystem::path& csv) {
  FeatureSet set;
  {
    std::ifstream sc(sidecar_path(csv), std::ios::binary);
    if (!sc) throw DataError("missing sidecar " + sidecar_path(csv).string());
    try {
      const Json side = Json::parse(sc);
      set.cue = parse_cue(side.at("cue").get<std::string>());
      set.settings = detail::feature_settings_from(side.at("settings"), set.cue);
    } catch (const nlohmann::json::exception& ex) {
      throw DataError("corrupt sidecar " + sidecar_path(csv).string() + ": " + ex.what());
    }
  }
  std::ifstream in(csv, std::ios::binary);
  if (!in) throw DataError("cannot read feature file " + csv.string());
  std::string line;
  std::getline(in, line);
  std::map<std::string, std::size_t> index;
  auto slot = [&](const std::string& id) {
    auto [it, inserted] = index.emplace(id, set.image_ids.size());
    if (inserted) {
      set.image_ids.push_back(id);
      switch (set.cue) {
        case Cue::kColor:
          set.color.emplace_back();
          for (int c = 0; c < 3; ++c) {
            set.color.back()[c].center_channel = static_cast<Channel>(c);
            set.color.back()[c].filter_id = set.settings.color.filter;
          }
          break;
        case Cue::kRd: set.rd.emplace_back(); break;
        case Cue::kQuant:
          set.quant.emplace_back();
          set.quant.back().mode = set.settings.quant_mode;
          break;
      }
    }
    return it->second;
  };
  auto place = [&](std::vector<double>& v, const std::string& idx, double value) {
    const std::size_t k = static_cast<std::size_t>(to_double(idx, csv));
    if (k >= v.size()) v.resize(k + 1, 0.0);
    v[k] = value;
  };
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv(line);
    switch (set.cue) {
      case Cue::kColor: {
        if (f.size() != 4) throw DataError("feature file " + csv.string() + ": bad row '" + line + "'");
        const std::size_t i = slot(f[0]);
        place(set.color[i][static_cast<int>(parse_channel(f[1]))].values, f[2], to_double(f[3], csv));
        break;
      }
      case Cue::kRd: {
        if (f.size() != 3 + kRdFeatureDim) {
          throw DataError("feature file " + csv.string() + ": bad row '" + line + "'");
        }
        const std::size_t i = slot(f[0]);
        RdVector v;
        for (int k = 0; k < kRdFeatureDim; ++k) v[k] = to_double(f[3 + k], csv);
        set.rd[i] = unflatten(v);
        break;
      }
      case Cue::kQuant: {
        if (f.size() != 4) throw DataError("feature file " + csv.string() + ": bad row '" + line + "'");
        const std::size_t i = slot(f[0]);
        place(set.quant[i].values, f[2], to_double(f[3], csv));
        break;
      }
    }
  }
  return set;
}

}  // namespace jaif
