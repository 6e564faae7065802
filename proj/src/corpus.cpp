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

#include "jaif/corpus.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "jaif/codecs.hpp"
#include "jaif/cue_color.hpp"
#include "jaif/error.hpp"
#include "jaif/image_io.hpp"
#include "jaif/parallel.hpp"

namespace jaif {

using nlohmann::json;

namespace {

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!ok.count(it.key())) throw ContractError(where + ": unknown key '" + it.key() + "'");
  }
}

std::vector<Split> parse_splits(const json& j) {
  std::vector<Split> out;
  for (const auto& s : j) out.push_back(parse_split(s.get<std::string>()));
  return out;
}

bool split_allowed(const std::vector<Split>& allowed, Split s) {
  return allowed.empty() || std::find(allowed.begin(), allowed.end(), s) != allowed.end();
}

std::string variant_default_label(VariantSpec::Kind k) {
  switch (k) {
    case VariantSpec::Kind::kOriginal: return "original";
    case VariantSpec::Kind::kSingle: return "single";
    case VariantSpec::Kind::kDouble: return "double";
    case VariantSpec::Kind::kPreprocess: return "preprocessed";
  }
  return "original";
}

SourceGroup parse_source(const json& j, const std::filesystem::path& base, std::size_t index) {
  check_keys(j, {"kind", "name", "count", "width", "height", "paths", "label", "split", "texture",
                 "decoder_step", "decoder_block", "jitter"},
             "corpus source");
  SourceGroup g;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "procedural") {
    g.kind = SourceGroup::Kind::kProcedural;
  } else if (kind == "files") {
    g.kind = SourceGroup::Kind::kFiles;
  } else if (kind == "synthesized") {
    g.kind = SourceGroup::Kind::kSynthesized;
  } else {
    throw ContractError("corpus source: unknown kind '" + kind + "'");
  }
  g.name = j.value("name", "g" + std::to_string(index));
  g.width = j.value("width", g.width);
  g.height = j.value("height", g.height);
  if (g.kind == SourceGroup::Kind::kFiles) {
    for (const auto& p : j.at("paths")) {
      std::filesystem::path path = p.get<std::string>();
      g.paths.push_back(path.is_absolute() ? path : base / path);
    }
    g.count = static_cast<int>(g.paths.size());
  } else {
    g.count = j.at("count").get<int>();
  }
  g.label = j.value("label", g.kind == SourceGroup::Kind::kSynthesized ? "synthesized" : "original");
  if (j.contains("split")) {
    const json& s = j["split"];
    check_keys(s, {"train", "val", "test"}, "corpus source split");
    g.train = s.value("train", 0);
    g.val = s.value("val", 0);
    g.test = s.value("test", 0);
  } else {
    g.train = g.count;
  }
  if (g.count < 0 || g.train < 0 || g.val < 0 || g.test < 0 || g.train + g.val + g.test != g.count) {
    throw ContractError("corpus source '" + g.name + "': split counts must add up to " +
                        std::to_string(g.count));
  }
  if (j.contains("texture")) {
    const json& t = j["texture"];
    check_keys(t, {"sensor_noise", "sensor_noise_jitter", "shapes", "chroma_shapes",
                   "chroma_edge_softness", "chroma_detail", "camera"},
               "corpus texture");
    g.texture.sensor_noise = t.value("sensor_noise", g.texture.sensor_noise);
    g.texture.sensor_noise_jitter = t.value("sensor_noise_jitter", g.texture.sensor_noise_jitter);
    g.texture.shapes = t.value("shapes", g.texture.shapes);
    g.texture.chroma_shapes = t.value("chroma_shapes", g.texture.chroma_shapes);
    g.texture.chroma_edge_softness = t.value("chroma_edge_softness", g.texture.chroma_edge_softness);
    g.texture.chroma_detail = t.value("chroma_detail", g.texture.chroma_detail);
    g.texture.camera = t.value("camera", g.texture.camera);
  }
  g.decoder_step = j.value("decoder_step", g.decoder_step);
  g.decoder_block = j.value("decoder_block", g.decoder_block);
  g.jitter = j.value("jitter", g.jitter);
  return g;
}

VariantSpec parse_variant(const json& j) {
  check_keys(j, {"kind", "strengths", "b0", "b1", "label", "splits"}, "corpus variant");
  VariantSpec v;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "original") {
    v.kind = VariantSpec::Kind::kOriginal;
  } else if (kind == "single") {
    v.kind = VariantSpec::Kind::kSingle;
    v.strengths = j.at("strengths").get<std::vector<double>>();
  } else if (kind == "double") {
    v.kind = VariantSpec::Kind::kDouble;
    v.strengths = j.at("b0").get<std::vector<double>>();
    v.b1 = j.at("b1").get<double>();
  } else if (kind == "preprocess") {
    v.kind = VariantSpec::Kind::kPreprocess;
  } else {
    throw ContractError("corpus variant: unknown kind '" + kind + "'");
  }
  v.label = j.value("label", variant_default_label(v.kind));
  if (j.contains("splits")) v.splits = parse_splits(j["splits"]);
  return v;
}

AttackSpec parse_attack(const json& j) {
  check_keys(j, {"kind", "quality", "factor", "splits", "labels"}, "corpus attack");
  AttackSpec a;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "jpeg") {
    a.kind = AttackSpec::Kind::kJpeg;
    a.value = j.at("quality").get<double>();
  } else if (kind == "resize") {
    a.kind = AttackSpec::Kind::kResize;
    a.value = j.at("factor").get<double>();
    if (!(a.value > 0.0 && a.value <= 1.0)) throw ContractError("resize factor must be in (0,1]");
  } else {
    throw ContractError("corpus attack: unknown kind '" + kind + "'");
  }
  if (j.contains("splits")) a.splits = parse_splits(j["splits"]);
  if (j.contains("labels")) a.labels = j["labels"].get<std::vector<std::string>>();
  return a;
}

struct Pending {
  ManifestEntry entry;
  Image8 image;
};

std::string strength_tag(double v) {
  std::string s = format_strength(v);
  for (char& c : s) {
    if (c == '.') c = 'p';
  }
  return s;
}

}  // namespace

std::string attack_name(const AttackSpec& a) {
  if (a.kind == AttackSpec::Kind::kJpeg) return "jpeg" + format_strength(a.value);
  return "resize" + format_strength(std::round(a.value * 1000.0) / 10.0);
}

Image8 apply_attack(const Image8& img, const AttackSpec& a) {
  if (a.kind == AttackSpec::Kind::kResize) return resize_bilinear(img, a.value);
  CodecSettings s;
  s.codec_id = "baseline_dct";
  s.strength = a.value;
  return BaselineDctCodec(s).encode_decode(img).decoded;
}

CorpusSpec corpus_spec_from_json(const std::string& text, const std::filesystem::path& base_dir) {
  CorpusSpec spec;
  try {
    const json j = json::parse(text);
    check_keys(j, {"output_dir", "seed", "codec", "sources", "variants", "attacks", "min_size",
                   "workers"},
               "corpus spec");
    std::filesystem::path out = j.at("output_dir").get<std::string>();
    spec.output_dir = out.is_absolute() ? out : base_dir / out;
    spec.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("codec")) {
      const json& c = j["codec"];
      check_keys(c, {"codec_id", "latent_block", "command"}, "corpus codec");
      spec.codec.codec_id = c.value("codec_id", spec.codec.codec_id);
      spec.codec.latent_block = c.value("latent_block", spec.codec.latent_block);
      spec.codec.command = c.value("command", "");
    }
    spec.codec.seed = spec.seed;
    std::size_t index = 0;
    for (const auto& s : j.at("sources")) spec.sources.push_back(parse_source(s, base_dir, index++));
    if (j.contains("variants")) {
      for (const auto& v : j["variants"]) spec.variants.push_back(parse_variant(v));
    }
    if (j.contains("attacks")) {
      for (const auto& a : j["attacks"]) spec.attacks.push_back(parse_attack(a));
    }
    spec.min_size = j.value("min_size", 0);
    spec.workers = j.value("workers", 0);
  } catch (const json::exception& ex) {
    throw ContractError(std::string("malformed corpus spec: ") + ex.what());
  }
  std::set<std::string> names;
  for (const auto& g : spec.sources) {
    if (!names.insert(g.name).second) throw ContractError("duplicate source name '" + g.name + "'");
  }
  return spec;
}

CorpusSpec load_corpus_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ContractError("cannot read corpus spec " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return corpus_spec_from_json(ss.str(), path.parent_path());
}

DatasetManifest build_corpus(const CorpusSpec& spec) {
  namespace fs = std::filesystem;
  const fs::path image_dir = spec.output_dir / "images";
  std::error_code ec;
  fs::create_directories(image_dir, ec);
  if (ec || !fs::is_directory(image_dir)) {
    throw DataError("cannot create output directory " + image_dir.string());
  }

  struct Task {
    const SourceGroup* group;
    std::size_t group_index;
    int index;
  };
  std::vector<Task> tasks;
  for (std::size_t g = 0; g < spec.sources.size(); ++g) {
    for (int i = 0; i < spec.sources[g].count; ++i) tasks.push_back({&spec.sources[g], g, i});
  }

  std::unique_ptr<Codec> codec;
  const bool needs_codec = std::any_of(spec.variants.begin(), spec.variants.end(), [](const auto& v) {
    return v.kind == VariantSpec::Kind::kSingle || v.kind == VariantSpec::Kind::kDouble;
  });
  auto codec_at = [&](double strength) {
    CodecSettings s = spec.codec;
    s.strength = strength;
    return make_codec(s);
  };
  if (needs_codec) codec = codec_at(spec.codec.strength);  // validates the codec id early

  std::vector<std::vector<ManifestEntry>> produced(tasks.size());
  parallel_for(tasks.size(), spec.workers, [&](std::size_t t) {
    const Task& task = tasks[t];
    const SourceGroup& g = *task.group;
    char num[16];
    std::snprintf(num, sizeof num, "%04d", task.index);
    const std::string source_id = g.name + "-" + num;
    const Split split = task.index < g.train               ? Split::kTrain
                        : task.index < g.train + g.val ? Split::kVal
                                                       : Split::kTest;
    const std::uint64_t seed = mix_seed(spec.seed ^ mix_seed(task.group_index * 1000003ULL + task.index));

    std::vector<Pending> items;
    auto base = [&](const std::string& id, const std::string& label) {
      ManifestEntry e;
      e.image_id = id;
      e.source_id = source_id;
      e.label = label;
      e.split = split;
      return e;
    };

    if (g.kind == SourceGroup::Kind::kSynthesized) {
      CodecSettings ds;
      ds.strength = g.decoder_step;
      ds.latent_block = g.decoder_block;
      ManifestEntry e = base(source_id, g.label);
      e.provenance.generator_id = "sim_decoder";
      items.push_back({std::move(e), decoder_synthesized_image(SimLatentCodec(ds), g.width,
                                                               g.height, seed, g.jitter)});
    } else {
      const Image8 source = g.kind == SourceGroup::Kind::kFiles
                                ? read_image(g.paths[task.index])
                                : textured_image(g.width, g.height, seed, g.texture);
      for (const VariantSpec& v : spec.variants) {
        if (!split_allowed(v.splits, split)) continue;
        switch (v.kind) {
          case VariantSpec::Kind::kOriginal:
            items.push_back({base(source_id, v.label), source});
            break;
          case VariantSpec::Kind::kPreprocess: {
            ManifestEntry e = base(source_id + ".prep", v.label);
            e.provenance.postprocessing = "preprocess";
            items.push_back({std::move(e), preprocess_only(source)});
            break;
          }
          case VariantSpec::Kind::kSingle:
            for (double s : v.strengths) {
              ManifestEntry e = base(source_id + ".s" + strength_tag(s), v.label);
              e.provenance.codec_id = spec.codec.codec_id;
              e.provenance.strength = s;
              items.push_back({std::move(e), codec_at(s)->encode_decode(source).decoded});
            }
            break;
          case VariantSpec::Kind::kDouble: {
            const auto second = codec_at(v.b1);
            for (double s : v.strengths) {
              ManifestEntry e =
                  base(source_id + ".d" + strength_tag(s) + "-" + strength_tag(v.b1), v.label);
              e.provenance.codec_id = spec.codec.codec_id;
              e.provenance.strength = v.b1;
              e.provenance.b0 = s;
              e.provenance.b1 = v.b1;
              items.push_back(
                  {std::move(e), second->encode_decode(codec_at(s)->encode_decode(source).decoded).decoded});
            }
            break;
          }
        }
      }
    }

    const std::size_t clean = items.size();
    for (const AttackSpec& a : spec.attacks) {
      if (!split_allowed(a.splits, split)) continue;
      for (std::size_t i = 0; i < clean; ++i) {
        const ManifestEntry& src = items[i].entry;
        if (!a.labels.empty() &&
            std::find(a.labels.begin(), a.labels.end(), src.label) == a.labels.end()) {
          continue;
        }
        Image8 attacked = apply_attack(items[i].image, a);
        if (attacked.width() < spec.min_size || attacked.height() < spec.min_size) {
          throw ContractError("attack " + attack_name(a) + " shrinks '" + src.image_id + "' to " +
                              std::to_string(attacked.width()) + "x" +
                              std::to_string(attacked.height()) + ", below min_size " +
                              std::to_string(spec.min_size));
        }
        ManifestEntry e = src;
        e.image_id += "." + attack_name(a);
        if (!e.provenance.postprocessing.empty()) e.provenance.postprocessing += ",";
        e.provenance.postprocessing += attack_name(a);
        items.push_back({std::move(e), std::move(attacked)});
      }
    }

    for (Pending& p : items) {
      p.entry.image_path = fs::path("images") / (p.entry.image_id + ".png");
      write_image(spec.output_dir / p.entry.image_path, p.image);
      produced[t].push_back(std::move(p.entry));
    }
  });

  DatasetManifest m;
  m.root = spec.output_dir;
  std::set<std::string> labels;
  for (auto& list : produced) {
    for (auto& e : list) {
      labels.insert(e.label);
      m.entries.push_back(std::move(e));
    }
  }
  m.labels.assign(labels.begin(), labels.end());
  m.validate(true);
  save_manifest(m, spec.output_dir / "manifest.json");
  return m;
}

}  // namespace jaif
