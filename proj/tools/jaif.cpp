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

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "jaif/corpus.hpp"
#include "jaif/cue_rd.hpp"
#include "jaif/error.hpp"
#include "jaif/experiment.hpp"
#include "jaif/features.hpp"
#include "jaif/forest.hpp"
#include "jaif/image_io.hpp"
#include "jaif/manifest.hpp"
#include "jaif/report.hpp"
#include "jaif/spectrum.hpp"
#include "jaif/version.hpp"

namespace {

using namespace jaif;

struct FeatureFlags {
  std::string cue = "color";
  std::string codec = "sim_latent";
  double strength = 8.0;
  int latent_block = 4;
  std::string command;
  int patch = 512;
  std::string filter = "laplacian3";
  std::string channels = "b";
  std::string mode = "full";
  int crop = 256;
  std::string latent_source = "analysis";
};

void add_feature_flags(CLI::App* app, FeatureFlags& f, bool with_cue) {
  if (with_cue) app->add_option("--cue", f.cue, "color, rd or quant")->required();
  app->add_option("--codec", f.codec, "extractor codec for rd/quant");
  app->add_option("--strength", f.strength, "extractor strength");
  app->add_option("--latent-block", f.latent_block, "sim_latent chroma block size");
  app->add_option("--codec-command", f.command, "external codec command");
  app->add_option("--patch", f.patch, "color patch size");
  app->add_option("--filter", f.filter, "laplacian3 or kv5");
  app->add_option("--channels", f.channels, "color center channels, e.g. b or rgb");
  app->add_option("--mode", f.mode, "quant mode: full or truncated");
  app->add_option("--crop", f.crop, "quant center crop");
  app->add_option("--latent-source", f.latent_source, "analysis or reencoded");
}

FeatureSettings to_settings(const FeatureFlags& f, std::uint64_t seed) {
  FeatureSettings s;
  s.color.patch = f.patch;
  s.color.filter = parse_filter(f.filter);
  s.color_channels.clear();
  for (char c : f.channels) s.color_channels.push_back(parse_channel(std::string(1, c)));
  if (s.color_channels.empty()) throw ContractError("--channels must name at least one channel");
  s.extractor.codec_id = f.codec;
  s.extractor.strength = f.strength;
  s.extractor.latent_block = f.latent_block;
  s.extractor.command = f.command;
  s.extractor.seed = seed;
  s.quant_mode = parse_quant_mode(f.mode);
  s.quant.crop = f.crop;
  s.quant.source = parse_latent_source(f.latent_source);
  return s;
}

struct ForestFlags {
  int trees = 500;
  int max_depth = 0;
  int min_leaf = 1;
  std::string per_split = "sqrt";
};

void add_forest_flags(CLI::App* app, ForestFlags& f) {
  app->add_option("--trees", f.trees, "number of trees");
  app->add_option("--max-depth", f.max_depth, "maximum depth (0 = unlimited)");
  app->add_option("--min-leaf", f.min_leaf, "minimum samples per leaf");
  app->add_option("--features-per-split", f.per_split, "sqrt, all or a count");
}

ForestConfig to_forest(const ForestFlags& f, std::uint64_t seed, int workers) {
  ForestConfig c;
  c.n_trees = f.trees;
  if (f.max_depth > 0) c.max_depth = f.max_depth;
  c.min_leaf = f.min_leaf;
  if (f.per_split == "sqrt" || f.per_split == "all") {
    c.features_per_split = parse_split_features(f.per_split);
  } else {
    c.features_per_split = SplitFeatures::kFixed;
    try {
      c.fixed_features = std::stoi(f.per_split);
    } catch (const std::exception&) {
      throw ContractError("--features-per-split must be sqrt, all or a count");
    }
  }
  c.seed = seed;
  c.workers = workers;
  c.validate();
  return c;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ContractError("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_attacked(const ManifestEntry& e) {
  return !e.provenance.postprocessing.empty() && e.provenance.postprocessing != "preprocess";
}

// Rows of `set` matching manifest entries selected by `keep`, with class indices.
void select_rows(const FeatureSet& set, const DatasetManifest& m,
                 const std::vector<std::string>& classes,
                 const std::function<bool(const ManifestEntry&)>& keep, FeatureMatrix& x,
                 std::vector<int>& y, std::vector<std::string>& ids) {
  std::map<std::string, std::size_t> row;
  for (std::size_t i = 0; i < set.image_ids.size(); ++i) row[set.image_ids[i]] = i;
  const FeatureMatrix all = feature_matrix(set);
  std::vector<std::size_t> rows;
  for (const auto& e : m.entries) {
    auto c = std::find(classes.begin(), classes.end(), e.label);
    if (c == classes.end() || !keep(e)) continue;
    auto it = row.find(e.image_id);
    if (it == row.end()) throw DataError("no features for image '" + e.image_id + "'");
    rows.push_back(it->second);
    y.push_back(static_cast<int>(c - classes.begin()));
    ids.push_back(e.image_id);
  }
  x.resize(rows.size(), all.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) x.row(i) = all.row(rows[i]);
}

int run(int argc, char** argv) {
  CLI::App app{"JPEG-AI compression forensics toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kVersion));
  std::uint64_t seed = 0;
  bool seed_given = false;
  int workers = 0;
  app.add_option_function<std::uint64_t>(
         "--seed", [&](const std::uint64_t& v) { seed = v, seed_given = true; }, "random seed")
      ->group("Global");
  app.add_option("--workers", workers, "worker threads (0 = all cores)")->group("Global");

  // corpus build
  auto* corpus = app.add_subcommand("corpus", "corpus tools");
  corpus->require_subcommand(1);
  auto* build = corpus->add_subcommand("build", "materialize a corpus from a JSON spec");
  std::string spec_path, out_dir;
  build->add_option("--spec", spec_path, "corpus spec JSON")->required();
  build->add_option("--out", out_dir, "output directory (overrides the spec)");

  // features extract
  auto* features = app.add_subcommand("features", "feature tools");
  features->require_subcommand(1);
  auto* extract = features->add_subcommand("extract", "extract cue features for a manifest");
  FeatureFlags fx;
  std::string manifest_path, out_path, split_filter = "all";
  add_feature_flags(extract, fx, true);
  extract->add_option("--manifest", manifest_path, "manifest JSON")->required();
  extract->add_option("--out", out_path, "feature CSV")->required();
  extract->add_option("--split", split_filter, "all, train, val or test");

  // train
  auto* train = app.add_subcommand("train", "train a random forest on extracted features");
  std::string features_path, model_path, classes_arg, channels_override;
  ForestFlags ff;
  bool train_post = false;
  train->add_option("--features", features_path, "feature CSV")->required();
  train->add_option("--manifest", manifest_path, "manifest JSON")->required();
  train->add_option("--classes", classes_arg, "comma separated labels")->required();
  train->add_option("--model", model_path, "output model JSON")->required();
  train->add_option("--channels", channels_override, "color center channels");
  train->add_flag("--train-on-postprocessed", train_post, "keep attacked entries in training");
  add_forest_flags(train, ff);

  // predict
  auto* predict = app.add_subcommand("predict", "apply a model to extracted features");
  std::string pred_split = "test";
  predict->add_option("--model", model_path, "model JSON")->required();
  predict->add_option("--features", features_path, "feature CSV")->required();
  predict->add_option("--out", out_path, "predictions CSV")->required();
  predict->add_option("--manifest", manifest_path, "manifest JSON for accuracy");
  predict->add_option("--split", pred_split, "split scored against the manifest");

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "run a detection experiment");
  FeatureFlags fe;
  std::string config_path, report_path, format = "json", features_out;
  bool runtime = false;
  ForestFlags fe_forest;
  add_feature_flags(evaluate, fe, false);
  evaluate->add_option("--cue", fe.cue, "color, rd or quant");
  evaluate->add_option("--manifest", manifest_path, "manifest JSON")->required();
  evaluate->add_option("--classes", classes_arg, "comma separated labels");
  evaluate->add_option("--config", config_path, "experiment config JSON (overrides flags)");
  evaluate->add_option("--report", report_path, "report path")->required();
  evaluate->add_option("--format", format, "json, csv or markdown");
  evaluate->add_option("--features-out", features_out, "also write the feature CSV");
  evaluate->add_flag("--runtime", runtime, "include runtime in a JSON report");
  evaluate->add_flag("--train-on-postprocessed", train_post, "keep attacked entries in training");
  add_forest_flags(evaluate, fe_forest);

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "average Fourier spectrum of residuals");
  std::vector<std::string> images;
  std::string label;
  bool linear = false, no_highpass = false;
  int period = 0;
  spectrum->add_option("--images", images, "input images");
  spectrum->add_option("--manifest", manifest_path, "manifest JSON");
  spectrum->add_option("--label", label, "manifest label to average");
  spectrum->add_option("--out", out_path, "output .png or .csv")->required();
  spectrum->add_flag("--linear", linear, "magnitude instead of log(1+magnitude)");
  spectrum->add_flag("--no-highpass", no_highpass, "use luma instead of its residual");
  spectrum->add_option("--period", period, "print the grid peak ratio for this period");

  // recompress-curve
  auto* curve = app.add_subcommand("recompress-curve", "rate/PSNR per recompression step");
  std::string image_path, codec_id = "sim_latent", strengths_arg;
  int k = 4, curve_block = 4;
  std::string curve_command;
  curve->add_option("--image", image_path, "input image")->required();
  curve->add_option("--codec", codec_id, "codec id");
  curve->add_option("--strengths", strengths_arg, "comma separated strengths")->required();
  curve->add_option("-k,--k", k, "number of compressions");
  curve->add_option("--latent-block", curve_block, "sim_latent chroma block size");
  curve->add_option("--codec-command", curve_command, "external codec command");
  curve->add_option("--out", out_path, "output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*build) {
    CorpusSpec spec = load_corpus_spec(spec_path);
    if (!out_dir.empty()) spec.output_dir = out_dir;
    if (seed_given) spec.seed = spec.codec.seed = seed;
    if (workers > 0) spec.workers = workers;
    const DatasetManifest m = build_corpus(spec);
    std::cout << "wrote " << m.entries.size() << " entries to "
              << (spec.output_dir / "manifest.json").string() << "\n";
  } else if (*extract) {
    const DatasetManifest m = load_manifest(manifest_path);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < m.entries.size(); ++i) {
      if (split_filter == "all" || m.entries[i].split == parse_split(split_filter)) idx.push_back(i);
    }
    const FeatureSet set = extract_feature_set(m, idx, parse_cue(fx.cue), to_settings(fx, seed), workers);
    write_feature_set(set, out_path);
    std::cout << "wrote " << set.size() << " feature rows to " << out_path << "\n";
  } else if (*train) {
    FeatureSet set = read_feature_set(features_path);
    if (!channels_override.empty()) {
      set.settings.color_channels.clear();
      for (char c : channels_override) set.settings.color_channels.push_back(parse_channel(std::string(1, c)));
    }
    const DatasetManifest m = load_manifest(manifest_path);
    const auto classes = split_list(classes_arg);
    if (classes.size() < 2) throw ContractError("--classes needs at least two labels");
    FeatureMatrix x;
    std::vector<int> y;
    std::vector<std::string> ids;
    select_rows(set, m, classes,
                [&](const ManifestEntry& e) {
                  return e.split == Split::kTrain && (train_post || !is_attacked(e));
                },
                x, y, ids);
    if (ids.empty()) throw DataError("no training rows for the given classes");
    const ForestModel model = rf_train(x, y, to_forest(ff, seed, workers));
    model_save(model, model_path);
    nlohmann::ordered_json meta;
    meta["cue"] = std::string(to_string(set.cue));
    meta["classes"] = classes;
    std::string chans;
    for (Channel c : set.settings.color_channels) chans += channel_letter(c);
    meta["color_channels"] = chans;
    std::ofstream(model_path + ".meta.json") << meta.dump(1) << "\n";
    std::cout << "trained " << model.trees.size() << " trees on " << ids.size() << " rows\n";
  } else if (*predict) {
    const ForestModel model = model_load(model_path);
    FeatureSet set = read_feature_set(features_path);
    std::vector<std::string> classes;
    std::ifstream meta_in(model_path + ".meta.json");
    if (meta_in) {
      const auto meta = nlohmann::json::parse(meta_in);
      classes = meta.at("classes").get<std::vector<std::string>>();
      set.settings.color_channels.clear();
      for (char c : meta.value("color_channels", std::string("b"))) {
        set.settings.color_channels.push_back(parse_channel(std::string(1, c)));
      }
    }
    const FeatureMatrix x = feature_matrix(set);
    const Prediction p = rf_predict(model, x);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw DataError("cannot write " + out_path);
    out << "image_id,predicted";
    for (std::size_t c = 0; c < model.classes.size(); ++c) {
      const int cls = model.classes[c];
      out << ",p_" << (cls >= 0 && std::size_t(cls) < classes.size() ? classes[cls] : std::to_string(cls));
    }
    out << "\n";
    std::map<std::string, std::string> predicted;
    for (std::size_t i = 0; i < set.size(); ++i) {
      const int cls = p.labels[i];
      const std::string name = cls >= 0 && std::size_t(cls) < classes.size() ? classes[cls] : std::to_string(cls);
      predicted[set.image_ids[i]] = name;
      out << set.image_ids[i] << ',' << name;
      for (Eigen::Index c = 0; c < p.proba.cols(); ++c) out << ',' << p.proba(i, c);
      out << "\n";
    }
    if (!manifest_path.empty()) {
      const DatasetManifest m = load_manifest(manifest_path);
      std::size_t n = 0, ok = 0;
      for (const auto& e : m.entries) {
        auto it = predicted.find(e.image_id);
        if (it == predicted.end() || e.split != parse_split(pred_split)) continue;
        if (std::find(classes.begin(), classes.end(), e.label) == classes.end()) continue;
        ++n;
        ok += it->second == e.label;
      }
      if (n) std::cout << "accuracy " << double(ok) / double(n) << " on " << n << " rows\n";
    }
  } else if (*evaluate) {
    ExperimentConfig cfg;
    if (!config_path.empty()) {
      cfg = experiment_config_from_json(read_text(config_path));
    } else {
      cfg.cue = parse_cue(fe.cue);
      cfg.classes = split_list(classes_arg);
      cfg.features = to_settings(fe, seed);
      cfg.forest = to_forest(fe_forest, seed, workers);
      cfg.train_on_postprocessed = train_post;
    }
    cfg.workers = workers;
    cfg.features_out = features_out;
    const DatasetManifest m = load_manifest(manifest_path);
    const ExperimentReport r = run_detection_experiment(m, cfg);
    emit_report(r, parse_report_format(format), report_path, runtime);
    std::cout << "accuracy " << r.overall.accuracy() << " on " << r.overall.n << " test images\n";
  } else if (*spectrum) {
    std::vector<Image8> imgs;
    for (const auto& p : images) imgs.push_back(read_image(p));
    if (!manifest_path.empty()) {
      const DatasetManifest m = load_manifest(manifest_path);
      for (const auto& e : m.entries) {
        if (label.empty() || e.label == label) imgs.push_back(read_image(m.resolve(e)));
      }
    }
    if (imgs.empty()) throw ContractError("spectrum: no input images");
    SpectrumOptions opt;
    opt.log_scale = !linear;
    opt.highpass = !no_highpass;
    const Eigen::ArrayXXd s = avg_fourier_spectrum(imgs, opt);
    if (out_path.size() > 4 && out_path.substr(out_path.size() - 4) == ".csv") {
      std::ofstream out(out_path);
      if (!out) throw DataError("cannot write " + out_path);
      out.precision(9);
      for (Eigen::Index i = 0; i < s.rows(); ++i) {
        for (Eigen::Index j = 0; j < s.cols(); ++j) out << (j ? "," : "") << s(i, j);
        out << "\n";
      }
    } else {
      Image8 vis(static_cast<int>(s.cols()), static_cast<int>(s.rows()), ColorSpace::kRGB);
      for (int c = 0; c < 3; ++c) {
        vis.plane(c) = (s * 255.0).round().min(255.0).max(0.0).cast<std::uint8_t>();
      }
      write_image(out_path, vis);
    }
    if (period > 0) std::cout << "grid peak ratio " << grid_peak_ratio(s, period) << "\n";
  } else if (*curve) {
    const Image8 img = read_image(image_path);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw DataError("cannot write " + out_path);
    out << "codec_id,strength,k,rate_bpp,p_inp,p_inc\n";
    for (const auto& s : split_list(strengths_arg)) {
      CodecSettings cs;
      cs.codec_id = codec_id;
      cs.strength = std::stod(s);
      cs.latent_block = curve_block;
      cs.command = curve_command;
      cs.seed = seed;
      const auto codec = make_codec(cs);
      for (const RdCurvePoint& pt : recompression_curve(img, *codec, k)) {
        out << codec_id << ',' << s << ',' << pt.k << ',' << pt.rate_bpp << ',' << pt.p_inp << ','
            << pt.p_inc << "\n";
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const jaif::ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const jaif::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
