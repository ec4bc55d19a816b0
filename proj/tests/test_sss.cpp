// Copyright 2026 The spshare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdio>

#include "doctest.h"
#include "spshare/sim.hpp"
#include "spshare/sss.hpp"
#include "util.hpp"

using namespace spshare;

TEST_SUITE("sss") {

TEST_CASE("share parameter validation") {
  const Field f = Field::prime(7);
  CHECK_THROWS_AS(ShareParams(f, {1, 1}, 0.5, 0.1), InvalidArgument);   // duplicate
  CHECK_THROWS_AS(ShareParams(f, {0, 2}, 0.5, 0.1), InvalidArgument);   // zero point
  CHECK_THROWS_AS(ShareParams(f, {1}, 0.5, 0.1), InvalidArgument);      // n < 2
  CHECK_THROWS_AS(ShareParams(f, 7, 0.5, 0.1), InvalidArgument);        // n >= q
  CHECK_THROWS_AS(ShareParams(f, 3, 0.5, 0.4), InvalidArgument);        // n * ps > 1
  CHECK_NOTHROW(ShareParams(f, 3, 0.5, 0.3));
}

TEST_CASE("p1=1, ps=0 hands every share the zero pattern of the input") {
  const Field f = Field::prime(89);
  const SourceModel source(f, 0.9);
  const FieldMatrix a = gen_matrix(source, 30, 40, 5);
  const ShareSet set = deal(a, ShareParams(f, 4, 1.0, 0.0), 6);
  for (const FieldMatrix& share : set.shares)
    for (std::size_t i = 0; i < a.size(); ++i)
      REQUIRE((share.data()[i] == 0) == (a.data()[i] == 0));
}

TEST_CASE("uniform parameters give uniform shares") {
  const Field f = Field::prime(89);
  const SourceModel source(f, 0.95);
  const FieldMatrix a = gen_matrix(source, 1000, 1000, 8);
  const ShareSet set = deal(a, ShareParams::uniform(f, 3), 9);
  for (const FieldMatrix& share : set.shares) {
    std::vector<std::uint64_t> counts(89, 0);
    for (std::uint32_t v : share.data()) ++counts[v];
    CHECK(testutil::chi2_stat(counts, std::vector<double>(89, 1.0 / 89)) <
          testutil::chi2_quantile_99(88));
  }
}

TEST_CASE("share sparsity tracks p1*s + ps*(1-s)") {
  const Field f = Field::prime(89);
  const double s = 0.95;
  const SourceModel source(f, s);
  const FieldMatrix a = gen_matrix(source, 1000, 1000, 10);
  const ShareParams params(f, 3, 0.9, 0.1);
  const ShareSet set = deal(a, params, 11);
  const double s_d = 0.9 * s + 0.1 * (1 - s);
  const double se = std::sqrt(s_d * (1 - s_d) / a.size());
  for (const FieldMatrix& share : set.shares)
    CHECK(std::abs(share.sparsity() - s_d) < 3.0 * se);
}

TEST_CASE("any two shares reconstruct the input exactly") {
  for (const Field& f : {Field::prime(89), Field::gf256()}) {
    const SourceModel source(f, 0.9);
    const FieldMatrix a = gen_matrix(source, 12, 9, f.q());
    const ShareParams params(f, 4, 0.8, 0.05);
    const ShareSet set = deal(a, params, 13);
    for (std::uint32_t i = 0; i < 4; ++i)
      for (std::uint32_t j = 0; j < 4; ++j) {
        if (i == j) continue;
        REQUIRE(reconstruct(set.shares[i], set.alphas[i], set.shares[j], set.alphas[j]) == a);
      }
  }
}

TEST_CASE("reconstruction edge cases") {
  const Field f = Field::prime(89);
  const FieldMatrix zero(3, 3, f);
  const ShareSet set = deal(zero, ShareParams(f, 2, 0.5, 0.2), 14);
  CHECK(reconstruct(set.shares[0], 1, set.shares[1], 2) == zero);
  CHECK_THROWS_AS(reconstruct(set.shares[0], 1, set.shares[1], 1), InvalidArgument);
}

TEST_CASE("share differences are scalar multiples of the pad") {
  const Field f = Field::gf256();
  const SourceModel source(f, 0.93);
  const FieldMatrix a = gen_matrix(source, 10, 10, 15);
  const ShareParams params(f, 5, 0.7, 0.02);
  const ShareSet set = deal(a, params, 16);
  for (std::uint32_t i = 0; i < 5; ++i)
    for (std::uint32_t j = 0; j < 5; ++j) {
      if (i == j) continue;
      const std::uint32_t d = f.sub(set.alphas[i], set.alphas[j]);
      REQUIRE(sub(set.shares[i], set.shares[j]) == scalar_mul(d, set.pad));
    }
}

TEST_CASE("closed-form per-share leakage agrees with the channel route") {
  Rng rng(0x5EED);
  for (std::uint32_t q : {7u, 89u}) {
    const Field f = Field::prime(q);
    for (double s : {0.5, 0.9}) {
      if (!(s > 1.0 / q)) continue;
      const SourceModel source(f, s);
      for (int trial = 0; trial < 6; ++trial) {
        const std::uint32_t n = 2 + rng.next_below(3);
        const double p1 = rng.next_unit();
        const double ps = rng.next_unit() / n;
        const ShareParams params(f, n, p1, ps);
        const SssLeakage leak = sss_leakage(params, source);
        for (std::uint32_t i = 0; i < n; ++i) {
          REQUIRE(std::abs(leak.report.per_share[i] - leak.via_channel[i]) < 1e-10);
          REQUIRE(std::abs(leak.via_channel[i] - leak.via_channel[0]) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("uniform parameters leak nothing") {
  const Field f = Field::prime(89);
  const SourceModel source(f, 0.95);
  const SssLeakage leak = sss_leakage(ShareParams::uniform(f, 4), source);
  CHECK(leak.report.total < 1e-12);
  for (double v : leak.via_channel) CHECK(v < 1e-12);
}

TEST_CASE("dealing is deterministic and per-share symmetric") {
  const Field f = Field::prime(89);
  const SourceModel source(f, 0.9);
  const FieldMatrix a = gen_matrix(source, 8, 8, 17);
  const ShareParams params(f, 3, 0.6, 0.1);
  const ShareSet s1 = deal(a, params, 18);
  const ShareSet s2 = deal(a, params, 18);
  for (std::uint32_t i = 0; i < 3; ++i) REQUIRE(s1.shares[i] == s2.shares[i]);
  CHECK(s1.pad == s2.pad);
}

TEST_CASE("share file round trip") {
  const Field f = Field::prime(89);
  const SourceModel source(f, 0.9);
  const FieldMatrix a = gen_matrix(source, 5, 7, 19);
  const ShareSet set = deal(a, ShareParams(f, 3, 0.5, 0.2), 20);
  const std::string path = "share_roundtrip.tmp";
  write_share_file(path, set.shares[1], set.alphas[1], 1, 3);
  const ShareFile back = read_share_file(path);
  CHECK(back.alpha == set.alphas[1]);
  CHECK(back.share_index == 1);
  CHECK(back.n == 3);
  CHECK(back.matrix.rows() == 5);
  CHECK(back.matrix.data() == set.shares[1].data());
  std::remove(path.c_str());
}

}  // TEST_SUITE
