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

#include <doctest.h>

#include <random>

#include "jaif/codecs.hpp"
#include "jaif/cue_quant.hpp"
#include "jaif/synth.hpp"
#include "test_util.hpp"

using namespace jaif;

namespace {

CodecSettings sim(double step, int block = 4) {
  CodecSettings s;
  s.strength = step;
  s.latent_block = block;
  return s;
}

double mean_phi_of(const Image8& img, double step) {
  return mean_phi(extract_quant_features(img, sim(step), QuantMode::kFull));
}

}  // namespace

TEST_SUITE("cue_quant") {

TEST_CASE("phi oracles") {
  using V = Eigen::VectorXd;
  CHECK(channel_phi(V{{3, -1, 0, 2}}, QuantMode::kFull) == doctest::Approx(1.0));
  CHECK(channel_phi(V{{0.4, -0.49, 0.1}}, QuantMode::kFull) == 0.0);
  CHECK(channel_phi(V{{0, 0}}, QuantMode::kFull) == 0.0);
  const double want = 5.9 / (std::sqrt(5.93) * std::sqrt(6.0));
  CHECK(channel_phi(V{{1.2, -0.7, 2.0}}, QuantMode::kFull) == doctest::Approx(want).epsilon(1e-12));
  CHECK(want == doctest::Approx(0.9891).epsilon(1e-4));
  CHECK_THROWS_AS(channel_phi(V(0), QuantMode::kFull), ContractError);
  CHECK(channel_phi(V{{0.5, -0.5}}, QuantMode::kFull) == doctest::Approx(1.0));
}

TEST_CASE("phi matches a loop oracle and stays in range") {
  std::mt19937 rng(7);
  std::normal_distribution<double> n(0.0, 2.0);
  for (int trial = 0; trial < 300; ++trial) {
    Eigen::VectorXd y(1 + trial % 30);
    for (auto& v : y) v = n(rng);
    for (QuantMode mode : {QuantMode::kFull, QuantMode::kTruncated}) {
      double dot = 0, ny = 0, nq = 0;
      for (double v : y) {
        double q = v < 0 ? -std::floor(-v + 0.5) : std::floor(v + 0.5);
        if (mode == QuantMode::kTruncated) q = (q > 0) - (q < 0);
        dot += v * q, ny += v * v, nq += q * q;
      }
      const double want = nq == 0 ? 0.0 : dot / std::sqrt(ny * nq);
      const double got = channel_phi(y, mode);
      CHECK(std::abs(got - want) <= 1e-9 * std::max(1.0, std::abs(want)));
      CHECK(got >= -1.0);
      CHECK(got <= 1.0);
    }
  }
}

TEST_CASE("phi probes the integer grid") {
  const Eigen::VectorXd y{{1.0, 1.0, 1.0, 3.0}};
  const Eigen::VectorXd scaled = 0.3 * y;
  CHECK(std::abs(channel_phi(y, QuantMode::kFull) - channel_phi(scaled, QuantMode::kFull)) > 0.1);
}

TEST_CASE("truncated phi only sees the sign pattern") {
  const Eigen::VectorXd a{{0.9, -2.2, 0.1, 3.4}};
  const Eigen::VectorXd b{{0.9, -1.2, 0.1, 1.4}};
  const double pa = channel_phi(a, QuantMode::kTruncated);
  const Eigen::ArrayXd sa = a.array().round().sign();
  const Eigen::ArrayXd sb = b.array().round().sign();
  CHECK((sa == sb).all());
  const double manual = (a.array() * sa).sum() / (a.norm() * sa.matrix().norm());
  CHECK(pa == doctest::Approx(manual).epsilon(1e-12));
  CHECK(parse_quant_mode("truncated") == QuantMode::kTruncated);
  CHECK(to_string(QuantMode::kFull) == "full");
}

TEST_CASE("mean phi") {
  QuantFeature f;
  f.values = {1, 1, 1, 1};
  CHECK(mean_phi(f) == 1.0);
  f.values = {1, 0, 1, 0};
  CHECK(mean_phi(f) == 0.5);
}

TEST_CASE("feature length follows the probe codec") {
  const Image8 img = textured_image(300, 280, 1);
  CHECK(extract_quant_features(img, sim(4, 4), QuantMode::kFull).channel_count() == 96);
  CHECK(extract_quant_features(img, sim(4, 3), QuantMode::kFull).channel_count() == 54);
  CHECK_THROWS_AS(extract_quant_features(textured_image(200, 300, 1), sim(4), QuantMode::kFull),
                  ContractError);
  CodecSettings dct;
  dct.codec_id = "baseline_dct";
  dct.strength = 50;
  CHECK_THROWS_AS(extract_quant_features(img, dct, QuantMode::kFull), UnsupportedError);
}

TEST_CASE("decoded images sit on the probe grid") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const Image8 img = textured_image(256, 256, 40 + seed);
    const Image8 dec = SimLatentCodec(sim(8)).encode_decode(img).decoded;
    CHECK(mean_phi_of(dec, 8) > mean_phi_of(img, 8));
    const Image8 noise = noise_image(256, 256, 50 + seed, 64, 192);
    const Image8 noise_dec = SimLatentCodec(sim(8)).encode_decode(noise).decoded;
    CHECK(mean_phi_of(noise_dec, 8) > mean_phi_of(noise, 8));
  }
}

TEST_CASE("coarse steps zero out channels") {
  const Image8 img = textured_image(256, 256, 60);
  CHECK(mean_phi_of(img, 128) < mean_phi_of(img, 2));
}

TEST_CASE("reencoded latent source") {
  const Image8 img = textured_image(256, 256, 61);
  QuantFeatureOptions opt;
  opt.source = LatentSource::kReencoded;
  const QuantFeature f = extract_quant_features(img, sim(8), QuantMode::kFull, opt);
  CHECK(f.channel_count() == 96);
  for (double v : f.values) {
    CHECK(v >= -1.0);
    CHECK(v <= 1.0);
  }
}

}  // TEST_SUITE
