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

// Acceptance suite. Prints one PASS/FAIL line per criterion.
//
//   jaif_acceptance [--only N[,M...]] [--strict] [--keep DIR]
//
// Exit status is non-zero when a criterion fails, except for the criteria in
// kKnownFailures, which the stand-in codec cannot meet (see README). --strict
// counts those too.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <unistd.h>

#include "jaif/codecs.hpp"
#include "jaif/corpus.hpp"
#include "jaif/cue_color.hpp"
#include "jaif/cue_quant.hpp"
#include "jaif/cue_rd.hpp"
#include "jaif/experiment.hpp"
#include "jaif/forest.hpp"
#include "jaif/metrics.hpp"
#include "jaif/spectrum.hpp"
#include "jaif/synth.hpp"

namespace {

using namespace jaif;
namespace fs = std::filesystem;

const std::set<int> kKnownFailures = {9, 12};

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

fs::path g_work;

DatasetManifest corpus(const std::string& name, const std::string& body) {
  const std::string json = "{\"output_dir\": \"" + (g_work / name).string() + "\", " + body + "}";
  return build_corpus(corpus_spec_from_json(json, g_work));
}

// Accuracy over the condition cells selected by `keep`.
double pooled(const ExperimentReport& r, const std::function<bool(const AccuracyCell&)>& keep,
              std::size_t* n_out = nullptr) {
  std::size_t n = 0, ok = 0;
  for (const auto& c : r.per_condition) {
    if (!keep(c)) continue;
    n += c.n;
    ok += c.correct;
  }
  if (n_out) *n_out = n;
  return n ? double(ok) / double(n) : 0.0;
}

bool attacked(const AccuracyCell& c) { return c.key.find('+') != std::string::npos; }

// 1: rho and phi against loop oracles.
Outcome formula_oracles() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 3.0);
  std::uniform_int_distribution<int> len(1, 64);
  double worst_rho = 0.0, worst_phi = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = len(rng);
    Eigen::ArrayXd r(m), g(m), b(m);
    for (int i = 0; i < m; ++i) r(i) = n(rng), g(i) = n(rng), b(i) = n(rng);
    for (Channel c : {Channel::kR, Channel::kG, Channel::kB}) {
      const Eigen::ArrayXd* ch[3] = {&r, &g, &b};
      const int ci = static_cast<int>(c);
      const Eigen::ArrayXd& x = *ch[ci];
      const Eigen::ArrayXd& o1 = *ch[(ci + 1) % 3];
      const Eigen::ArrayXd& o2 = *ch[(ci + 2) % 3];
      double dot = 0, n1 = 0, n2 = 0;
      for (int i = 0; i < m; ++i) {
        const double d1 = std::fabs(x(i) - o1(i)), d2 = std::fabs(x(i) - o2(i));
        dot += d1 * d2, n1 += d1 * d1, n2 += d2 * d2;
      }
      const double want = (n1 == 0 || n2 == 0) ? 0.0 : dot / std::sqrt(n1 * n2);
      const double got = row_color_correlation(r, g, b, c);
      worst_rho = std::max(worst_rho, std::fabs(got - want) / std::max(std::fabs(want), 1e-300));
    }
    Eigen::VectorXd y(m);
    for (int i = 0; i < m; ++i) y(i) = n(rng);
    for (QuantMode mode : {QuantMode::kFull, QuantMode::kTruncated}) {
      double dot = 0, ny = 0, nq = 0;
      for (int i = 0; i < m; ++i) {
        double q = y(i) < 0 ? -std::floor(-y(i) + 0.5) : std::floor(y(i) + 0.5);
        if (mode == QuantMode::kTruncated) q = (q > 0) - (q < 0);
        dot += y(i) * q, ny += y(i) * y(i), nq += q * q;
      }
      const double want = nq == 0 ? 0.0 : dot / std::sqrt(ny * nq);
      const double got = channel_phi(y, mode);
      const double err = want == 0 ? std::fabs(got) : std::fabs(got - want) / std::fabs(want);
      worst_phi = std::max(worst_phi, err);
    }
  }
  const double t = seconds_since(t0);
  return {worst_rho <= 1e-9 && worst_phi <= 1e-9 && t < 10.0,
          fmt("max rel err rho %.2e phi %.2e, %.2fs", worst_rho, worst_phi, t)};
}

// 2: preprocessing lifts rho(r).
Outcome preprocessing_lift() {
  const auto t0 = Clock::now();
  const int n = 50;
  double before = 0, after = 0;
  for (int i = 0; i < n; ++i) {
    const Image8 img = textured_image(512, 512, 1000 + i);
    before += mean_value(extract_color_features(img)[0]);
    after += mean_value(extract_color_features(preprocess_only(img))[0]);
  }
  before /= n, after /= n;
  const double t = seconds_since(t0);
  return {after - before >= 0.1 && t < 120.0,
          fmt("mean rho(r) %.4f -> %.4f, lift %.4f over %d images, %.1fs", before, after,
              after - before, n, t)};
}

// 3: rho range and flat-row sentinel.
Outcome rho_bounds() {
  std::size_t total = 0, inside = 0, flat_rows = 0, flat_zero = 0;
  ColorFeatureOptions opt;
  opt.patch = 256;
  CodecSettings s;
  for (int i = 0; i < 12; ++i) {
    Image8 img = textured_image(256, 256, 2000 + i);
    // Flat top band: residual rows 0..38 vanish.
    for (int c = 0; c < 3; ++c) img.plane(c).topRows(40).setConstant(std::uint8_t(60 + 10 * c));
    s.strength = 4.0 * (1 + i % 4);
    const Image8 variants[] = {img, preprocess_only(img), SimLatentCodec(s).encode_decode(img).decoded};
    for (int k = 0; k < 3; ++k) {
      const auto feats = extract_color_features(variants[k], opt);
      for (const auto& f : feats) {
        for (std::size_t r = 0; r < f.values.size(); ++r) {
          ++total;
          inside += f.values[r] >= 0.0 && f.values[r] <= 1.0;
          if (k == 0 && r < 38) {
            ++flat_rows;
            flat_zero += f.values[r] == 0.0;
          }
        }
      }
    }
  }
  return {inside == total && flat_zero == flat_rows,
          fmt("%zu/%zu values in [0,1], %zu/%zu flat rows exactly 0", inside, total, flat_zero,
              flat_rows)};
}

// 4: RD curve monotonicity.
Outcome rd_monotonicity() {
  const auto t0 = Clock::now();
  std::vector<CodecSettings> settings;
  for (double q : {30.0, 50.0, 80.0}) settings.push_back({"baseline_dct", q});
  for (double step : {4.0, 8.0, 16.0}) settings.push_back({"sim_latent", step});
  int cases = 0, inp_ok = 0, inc_ok = 0;
  for (int i = 0; i < 20; ++i) {
    const Image8 img = textured_image(256, 256, 3000 + i);
    for (const auto& s : settings) {
      const RdFeature f = extract_rd_features(img, s);
      const auto chain = recompress_chain(img, s, 1);
      const double p1 = psnr(img, chain[0].decoded);
      ++cases;
      inp_ok += f.p_inp2 <= p1 + 0.01 && f.p_inp3 <= f.p_inp2 + 0.01;
      inc_ok += f.p_inc3 >= f.p_inc2 - 0.5;
    }
  }
  const double t = seconds_since(t0);
  const double fi = double(inp_ok) / cases, fc = double(inc_ok) / cases;
  return {fi >= 0.95 && fc >= 0.95 && t < 300.0,
          fmt("p_inp non-increasing %d/%d, p_inc(3)>=p_inc(2)-0.5 %d/%d, %.1fs", inp_ok, cases,
              inc_ok, cases, t)};
}

// 5: 17-dim contract.
Outcome rd_contract() {
  bool ok = rd_feature_names().size() == 17;
  const char* order[] = {"r_y1",   "r_y2",   "r_y3",   "r_z1",   "r_z2",  "r_z3",
                         "r1",     "r2",     "r3",     "p_inp2", "p_inp3", "p_inc2",
                         "p_inc3", "d_r32",  "d_r21",  "d_pinp", "d_pinc"};
  for (int i = 0; i < 17; ++i) ok = ok && rd_feature_names()[i] == order[i];
  RdVector probe;
  for (int i = 0; i < 17; ++i) probe(i) = i + 0.5;
  ok = ok && flatten(unflatten(probe)) == probe;

  double worst = 0.0;
  for (int i = 0; i < 6; ++i) {
    const Image8 img = textured_image(160, 128, 4000 + i);
    const CodecSettings s = i % 2 ? CodecSettings{"baseline_dct", 40.0 + 10 * i}
                                  : CodecSettings{"sim_latent", 3.0 + i};
    const RdFeature f = extract_rd_features(img, s);
    for (int k = 0; k < 3; ++k) worst = std::max(worst, std::fabs(f.r[k] - (f.r_y[k] + f.r_z[k]) / (160.0 * 128.0)));
    worst = std::max({worst, std::fabs(f.d_r32 - (f.r[2] - f.r[1])), std::fabs(f.d_r21 - (f.r[1] - f.r[0])),
                      std::fabs(f.d_pinp - (f.p_inp3 - f.p_inp2)), std::fabs(f.d_pinc - (f.p_inc3 - f.p_inc2))});
  }
  const Image8 img = textured_image(64, 48, 4100);
  RdVector want;
  want << 73728, 73728, 73728, 0, 0, 0, 24, 24, 24, 100, 100, 100, 100, 0, 0, 0, 0;
  const bool identity = flatten(extract_rd_features(img, IdentityCodec({"identity"}))) == want;
  return {ok && worst <= 1e-12 && identity,
          fmt("order %s, redundancy max err %.1e, identity vector %s", ok ? "stable" : "BROKEN",
              worst, identity ? "exact" : "MISMATCH")};
}

// 6: quantization trend.
Outcome quant_trend() {
  const auto t0 = Clock::now();
  const std::vector<double> steps = {32, 16, 8, 4};  // increasing rate
  CodecSettings probe{"sim_latent", 4.0};
  std::vector<double> phi(steps.size(), 0.0), bpp(steps.size(), 0.0);
  double pristine = 0, synthesized = 0;
  const int n = 30;
  const SimLatentCodec decoder(CodecSettings{"sim_latent", 8.0});
  for (int i = 0; i < n; ++i) {
    const Image8 img = textured_image(256, 256, 5000 + i);
    pristine += mean_phi(extract_quant_features(img, probe, QuantMode::kFull));
    const Image8 syn = decoder_synthesized_image(decoder, 256, 256, 6000 + i);
    synthesized += mean_phi(extract_quant_features(syn, probe, QuantMode::kFull));
    for (std::size_t s = 0; s < steps.size(); ++s) {
      const CodecResult r = SimLatentCodec(CodecSettings{"sim_latent", steps[s]}).encode_decode(img);
      bpp[s] += r.bpp() / n;
      phi[s] += mean_phi(extract_quant_features(r.decoded, probe, QuantMode::kFull)) / n;
    }
  }
  pristine /= n, synthesized /= n;
  bool increasing = true;
  for (std::size_t s = 1; s < steps.size(); ++s) increasing = increasing && phi[s] > phi[s - 1];
  const double coarse = std::max(phi[0], phi[1]);
  const double t = seconds_since(t0);
  std::string d;
  for (std::size_t s = 0; s < steps.size(); ++s) d += fmt("%.2fbpp:%.3f ", bpp[s], phi[s]);
  d += fmt("pristine %.3f synthesized %.3f, %.1fs", pristine, synthesized, t);
  return {increasing && pristine > coarse && synthesized > coarse && t < 300.0, d};
}

// 7: compression detection with rho(b).
Outcome color_detection() {
  const auto t0 = Clock::now();
  const DatasetManifest m = corpus("c7", R"("seed": 7, "min_size": 512,
    "sources": [{"kind": "procedural", "count": 300, "width": 512, "height": 512,
                 "split": {"train": 200, "test": 100}}],
    "variants": [{"kind": "original"},
                 {"kind": "single", "strengths": [8], "splits": ["train"]},
                 {"kind": "single", "strengths": [4, 8, 16], "splits": ["test"]}])");
  ExperimentConfig c;
  c.cue = Cue::kColor;
  c.classes = {"original", "single"};
  c.forest.seed = 7;
  const ExperimentReport r = run_detection_experiment(m, c);
  std::size_t n_orig = 0;
  const double orig = pooled(r, [](const AccuracyCell& x) { return x.key == "original"; }, &n_orig);
  std::string d;
  double sum = 0, coarsest = 0;
  for (double step : {4.0, 8.0, 16.0}) {
    const std::string key = "single/sim_latent@" + format_strength(step);
    const double comp = pooled(r, [&](const AccuracyCell& x) { return x.key == key; });
    const double acc = 0.5 * (orig + comp);  // balanced: originals vs this step
    sum += acc;
    coarsest = acc;
    d += fmt("step %g: %.3f ", step, acc);
  }
  const double avg = sum / 3.0;
  const double t = seconds_since(t0);
  d += fmt("(originals %.3f), average %.3f, %.0fs", orig, avg, t);
  return {coarsest >= 0.9 && avg >= 0.7 && t < 600.0, d};
}

// 8: recompression detection with RD features.
Outcome rd_detection() {
  const auto t0 = Clock::now();
  const DatasetManifest m = corpus("c8", R"("seed": 8,
    "sources": [{"kind": "procedural", "count": 120, "width": 256, "height": 256,
                 "split": {"train": 80, "test": 40}}],
    "variants": [{"kind": "single", "strengths": [6], "splits": ["train"]},
                 {"kind": "double", "b0": [24], "b1": 6, "splits": ["train"]},
                 {"kind": "single", "strengths": [64, 24, 10, 6, 4, 2], "splits": ["test"]},
                 {"kind": "double", "b0": [64, 24, 10, 6, 4, 2], "b1": 6, "splits": ["test"]}])");
  ExperimentConfig c;
  c.cue = Cue::kRd;
  c.classes = {"single", "double"};
  c.features.extractor = CodecSettings{"sim_latent", 16.0};
  c.forest.seed = 8;
  const ExperimentReport r = run_detection_experiment(m, c);
  std::size_t n = 0, ok = 0;
  std::string d;
  for (const RdPairRow& row : r.rd_pairs) {
    // Larger step means lower rate: b0 < b1 in bitrate.
    if (row.b0 > 6.0) n += row.double_n, ok += row.double_correct;
    d += fmt("b0 %g: single %.2f double %.2f; ", row.b0,
             row.single_n ? double(row.single_correct) / row.single_n : 0.0,
             row.double_n ? double(row.double_correct) / row.double_n : 0.0);
  }
  const double recall = n ? double(ok) / n : 0.0;
  d += fmt("recall(b0<b1) %.3f over %zu, %.0fs", recall, n, seconds_since(t0));
  return {recall >= 0.8, d};
}

// Shared corpus for 9 and 10.
const DatasetManifest& quant_corpus() {
  static const DatasetManifest m = corpus("c9", R"("seed": 9, "min_size": 256,
    "sources": [{"kind": "procedural", "count": 80, "width": 320, "height": 320,
                 "split": {"train": 40, "test": 40}},
                {"kind": "synthesized", "name": "syn", "count": 80, "width": 320, "height": 320,
                 "split": {"train": 40, "test": 40}, "decoder_step": 8, "decoder_block": 4,
                 "jitter": 0.2}],
    "variants": [{"kind": "single", "strengths": [16], "splits": ["train"]},
                 {"kind": "single", "strengths": [4, 8, 16, 32], "splits": ["test"]}],
    "attacks": [{"kind": "jpeg", "quality": 90, "labels": ["single", "synthesized"]},
                {"kind": "resize", "factor": 0.9, "labels": ["single", "synthesized"]}])");
  return m;
}

ExperimentReport quant_report(QuantMode mode) {
  ExperimentConfig c;
  c.cue = Cue::kQuant;
  c.classes = {"single", "synthesized"};
  c.features.extractor = CodecSettings{"sim_latent", 4.0, 0, 3};
  c.features.quant_mode = mode;
  c.forest.seed = 9;
  return run_detection_experiment(quant_corpus(), c);
}

// Balanced accuracy over clean conditions: mean of class accuracies.
double clean_balanced(const ExperimentReport& r, const std::string& suffix = "") {
  auto cls = [&](const std::string& label) {
    return pooled(r, [&](const AccuracyCell& x) {
      if (x.label != label) return false;
      if (suffix.empty()) return !attacked(x);
      return x.key.size() > suffix.size() && x.key.ends_with(suffix);
    });
  };
  return 0.5 * (cls("single") + cls("synthesized"));
}

std::optional<ExperimentReport> g_full;

// 9: compressed vs synthesized.
Outcome quant_detection() {
  const auto t0 = Clock::now();
  g_full = quant_report(QuantMode::kFull);
  const ExperimentReport trunc = quant_report(QuantMode::kTruncated);
  const double full = clean_balanced(*g_full), tr = clean_balanced(trunc);
  std::string d = fmt("full %.3f truncated %.3f; per step (full/trunc):", full, tr);
  for (double s : {4.0, 8.0, 16.0, 32.0}) {
    const std::string key = "single/sim_latent@" + format_strength(s);
    auto at = [&](const ExperimentReport& r) {
      return pooled(r, [&](const AccuracyCell& x) { return x.key == key; });
    };
    d += fmt(" %g:%.2f/%.2f", s, at(*g_full), at(trunc));
  }
  d += fmt(", %.0fs", seconds_since(t0));
  return {full >= 0.9 && tr >= 0.7 && tr < full, d};
}

// 10: robustness under JPEG 90 and resize 90.
Outcome quant_robustness() {
  if (!g_full) g_full = quant_report(QuantMode::kFull);
  const double clean = clean_balanced(*g_full);
  const double jpeg = clean_balanced(*g_full, "+jpeg90");
  const double resize = clean_balanced(*g_full, "+resize90");
  return {clean - jpeg <= 0.15 && clean - resize <= 0.15,
          fmt("clean %.3f, jpeg90 %.3f (drop %.3f), resize90 %.3f (drop %.3f)", clean, jpeg,
              clean - jpeg, resize, clean - resize)};
}

// 11: blobs and determinism.
Outcome classifier_sanity() {
  auto blobs = [](std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    std::pair<FeatureMatrix, std::vector<int>> d;
    d.first.resize(1000, 10);
    for (int i = 0; i < 1000; ++i) {
      d.second.push_back(i % 2);
      for (int j = 0; j < 10; ++j) d.first(i, j) = n(rng) + 4.0 * (i % 2);
    }
    return d;
  };
  const auto train = blobs(11), test = blobs(12);
  ForestConfig c;
  c.seed = 11;
  const ForestModel m = rf_train(train.first, train.second, c);
  const double acc = accuracy(rf_predict(m, test.first).labels, test.second);
  c.workers = 1;
  const std::string a = model_to_json(rf_train(train.first, train.second, c));
  c.workers = 3;
  const bool same = a == model_to_json(rf_train(train.first, train.second, c)) && a == model_to_json(m);
  return {acc >= 0.99 && same,
          fmt("blob accuracy %.4f, models %s", acc, same ? "byte-identical" : "DIFFER")};
}

// 12: block grid in the average spectrum.
Outcome spectrum_grid() {
  std::vector<Image8> raw, comp;
  const SimLatentCodec codec(CodecSettings{"sim_latent", 8.0});
  for (int i = 0; i < 20; ++i) {
    raw.push_back(noise_image(256, 256, 7000 + i));
    comp.push_back(codec.encode_decode(raw.back()).decoded);
  }
  const int period = codec.luma_block();
  const double r_raw = grid_peak_ratio(avg_fourier_spectrum(raw), period);
  const double r_comp = grid_peak_ratio(avg_fourier_spectrum(comp), period);
  return {r_comp >= 3.0 && r_raw < 3.0,
          fmt("peak/background at period %d: compressed %.3f, uncompressed %.3f", period, r_comp,
              r_raw)};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  bool strict = false;
  fs::path keep;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--strict") {
      strict = true;
    } else if (a == "--only" && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      std::string tok;
      while (std::getline(ss, tok, ',')) only.insert(std::stoi(tok));
    } else if (a == "--keep" && i + 1 < argc) {
      keep = argv[++i];
    } else {
      std::cerr << "usage: jaif_acceptance [--only N,...] [--strict] [--keep DIR]\n";
      return 2;
    }
  }
  g_work = keep.empty() ? fs::temp_directory_path() / ("jaif-acceptance-" + std::to_string(::getpid()))
                        : keep;
  fs::create_directories(g_work);

  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"formula oracles", formula_oracles},
      {"preprocessing correlation lift", preprocessing_lift},
      {"rho bounds and sentinels", rho_bounds},
      {"RD monotonicity", rd_monotonicity},
      {"RD 17-dim contract", rd_contract},
      {"quantization trend", quant_trend},
      {"compression detection", color_detection},
      {"recompression detection", rd_detection},
      {"compressed vs synthesized", quant_detection},
      {"robustness to postprocessing", quant_robustness},
      {"classifier sanity", classifier_sanity},
      {"spectrum grid", spectrum_grid},
  };
  int unexpected = 0, passed = 0, run = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    ++run;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const bool known = kKnownFailures.count(id) > 0;
    if (o.pass) {
      ++passed;
    } else if (strict || !known) {
      ++unexpected;
    }
    std::cout << "criterion " << id << " " << (o.pass ? "PASS" : "FAIL")
              << (!o.pass && known ? " (known)" : "") << " " << criteria[i].first << ": "
              << o.detail << std::endl;
  }
  std::cout << passed << "/" << run << " criteria passed" << std::endl;
  if (keep.empty()) fs::remove_all(g_work);
  return unexpected ? 1 : 0;
}
