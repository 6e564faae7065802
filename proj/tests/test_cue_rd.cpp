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
#include "jaif/cue_rd.hpp"
#include "jaif/synth.hpp"
#include "test_util.hpp"

using namespace jaif;

namespace {

class SilentCodec final : public Codec {
 public:
  std::string_view id() const override { return "silent"; }
  const CodecSettings& settings() const override { return s_; }
  CodecResult encode_decode(const Image8& img) const override {
    CodecResult r;
    r.decoded = img;
    r.height = img.height();
    r.width = img.width();
    return r;
  }
  bool reports_rates() const override { return false; }

 private:
  CodecSettings s_;
};

void check_redundancy(const RdFeature& f, double hw) {
  for (int k = 0; k < 3; ++k) CHECK(std::abs(f.r[k] - (f.r_y[k] + f.r_z[k]) / hw) <= 1e-12 * f.r[k]);
  CHECK(std::abs(f.d_r32 - (f.r[2] - f.r[1])) <= 1e-12);
  CHECK(std::abs(f.d_r21 - (f.r[1] - f.r[0])) <= 1e-12);
  CHECK(std::abs(f.d_pinp - (f.p_inp3 - f.p_inp2)) <= 1e-12);
  CHECK(std::abs(f.d_pinc - (f.p_inc3 - f.p_inc2)) <= 1e-12);
  for (double p : {f.p_inp2, f.p_inp3, f.p_inc2, f.p_inc3}) {
    CHECK(p >= 0.0);
    CHECK(p <= 100.0);
  }
}

}  // namespace

TEST_SUITE("cue_rd") {

TEST_CASE("identity codec feature vector") {
  const Image8 img = test::random_image(10, 6, 1);
  const RdFeature f = extract_rd_features(img, IdentityCodec({"identity"}));
  const RdVector v = flatten(f);
  RdVector want;
  want << 1440, 1440, 1440, 0, 0, 0, 24, 24, 24, 100, 100, 100, 100, 0, 0, 0, 0;
  CHECK(v == want);
}

TEST_CASE("flatten order and names") {
  const auto& names = rd_feature_names();
  CHECK(names.size() == 17);
  CHECK(names[0] == "r_y1");
  CHECK(names[9] == "p_inp2");
  CHECK(names[16] == "d_pinc");
  RdVector v;
  for (int i = 0; i < 17; ++i) v(i) = i * 1.5 - 4.0;
  CHECK(flatten(unflatten(v)) == v);
  const RdFeature f = unflatten(v);
  CHECK(f.r_z[0] == v(3));
  CHECK(f.p_inc3 == v(12));
  CHECK(f.d_r32 == v(13));
  CHECK_THROWS_AS(unflatten(Eigen::VectorXd::Zero(16)), ContractError);
}

TEST_CASE("redundant fields are consistent") {
  const Image8 img = textured_image(96, 64, 2);
  CodecSettings s;
  s.strength = 8;
  check_redundancy(extract_rd_features(img, s), 96.0 * 64.0);
  s.codec_id = "baseline_dct";
  s.strength = 50;
  const RdFeature f = extract_rd_features(img, s);
  check_redundancy(f, 96.0 * 64.0);
  CHECK(f.p_inc2 >= f.p_inp2 - 0.5);
}

TEST_CASE("codec without rates is refused") {
  CHECK_THROWS_AS(extract_rd_features(test::random_image(8, 8, 2), SilentCodec()), UnsupportedError);
}

// The stand-in codec becomes exactly idempotent at coarse steps, so this
// trend is inverted here; kept to track it.
TEST_CASE("incremental psnr grows with rate" * doctest::may_fail()) {
  const Image8 img = textured_image(128, 128, 3);
  CodecSettings fine, coarse;
  fine.strength = 3;
  coarse.strength = 32;
  const RdFeature a = extract_rd_features(img, fine);
  const RdFeature b = extract_rd_features(img, coarse);
  CHECK(a.p_inc2 > b.p_inc2);
  CHECK(a.p_inc3 > b.p_inc3);
}

TEST_CASE("recompression curve") {
  const Image8 img = textured_image(64, 64, 4);
  CodecSettings s;
  s.strength = 6;
  const auto codec = make_codec(s);
  const auto curve = recompression_curve(img, *codec, 4);
  REQUIRE(curve.size() == 4);
  CHECK(curve[0].k == 1);
  CHECK(curve[0].p_inc == curve[0].p_inp);
  for (std::size_t k = 1; k < curve.size(); ++k) CHECK(curve[k].p_inp <= curve[k - 1].p_inp + 0.01);
  const RdFeature f = extract_rd_features(img, *codec);
  CHECK(curve[1].p_inp == f.p_inp2);
  CHECK(curve[2].p_inc == f.p_inc3);
  CHECK(curve[0].rate_bpp == f.r[0]);
}

}  // TEST_SUITE
