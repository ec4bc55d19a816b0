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

#include <sstream>

#include "doctest.h"
#include "spshare/field.hpp"
#include "spshare/rng.hpp"

using namespace spshare;

namespace {
// shift-and-add polynomial multiplication, the defining form
std::uint32_t slow_gf256_mul(std::uint32_t a, std::uint32_t b, std::uint32_t mod) {
  std::uint32_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    a <<= 1;
    if (a & 0x100) a ^= mod;
    b >>= 1;
  }
  return r;
}
}  // namespace

TEST_SUITE("field") {

TEST_CASE("construction validates the cardinality") {
  CHECK_THROWS_AS(Field::prime(91), InvalidArgument);  // 7 * 13
  CHECK_THROWS_AS(Field::prime(1), InvalidArgument);
  CHECK_NOTHROW(Field::prime(2));
  CHECK_NOTHROW(Field::prime(89));
  CHECK_NOTHROW(Field::prime(5081));
  CHECK_NOTHROW(Field::gf256());
  CHECK_NOTHROW(Field::gf256(0x11D));
  CHECK_THROWS_AS(Field::gf256(0x11C), InvalidArgument);  // divisible by x
  CHECK_THROWS_AS(Field::gf256(0x1B), InvalidArgument);   // wrong degree
}

TEST_CASE("addition wraps and doubles cancel in characteristic 2") {
  const Field f89 = Field::prime(89);
  CHECK(f89.add(88, 1) == 0);
  const Field f256 = Field::gf256();
  CHECK(f256.add(0x53, 0x53) == 0x00);
  const Field f5081 = Field::prime(5081);
  CHECK(f5081.add(5080, 5080) == 5079);
}

TEST_CASE("multiplication basics") {
  const Field f89 = Field::prime(89);
  for (std::uint32_t x = 0; x < 89; ++x) CHECK(f89.mul(1, x) == x);
  CHECK(f89.mul(30, 3) == 1);
  const Field f256 = Field::gf256();
  CHECK(f256.mul(0x53, 0xCA) == 0x01);
}

TEST_CASE("inverses") {
  const Field f89 = Field::prime(89);
  CHECK(f89.inv(1) == 1);
  CHECK(f89.inv(3) == 30);
  CHECK_THROWS_AS(f89.inv(0), InvalidArgument);
  const Field f256 = Field::gf256();
  CHECK(f256.inv(1) == 1);
  CHECK_THROWS_AS(f256.inv(0), InvalidArgument);
}

TEST_CASE("gf256 table multiply matches shift-and-add exhaustively") {
  for (std::uint32_t mod : {0x11Bu, 0x11Du}) {
    const Field f = Field::gf256(mod);
    for (std::uint32_t a = 0; a < 256; ++a)
      for (std::uint32_t b = 0; b < 256; ++b)
        REQUIRE(f.mul(a, b) == slow_gf256_mul(a, b, mod));
  }
}

TEST_CASE("field laws on random triples") {
  for (const Field& f : {Field::prime(89), Field::gf256(), Field::prime(5081)}) {
    Rng rng(0xF1E1D);
    const std::uint32_t q = f.q();
    for (int i = 0; i < 10000; ++i) {
      const std::uint32_t a = rng.next_below(q), b = rng.next_below(q), c = rng.next_below(q);
      REQUIRE(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
      REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      if (a != 0) REQUIRE(f.mul(a, f.inv(a)) == 1);
      REQUIRE(f.add(a, f.neg(a)) == 0);
    }
  }
}

TEST_CASE("elements of different fields do not mix") {
  const Field f89 = Field::prime(89);
  const Field f97 = Field::prime(97);
  FieldElement a{5, &f89}, b{7, &f97};
  CHECK_THROWS_AS(add(a, b), InvalidArgument);
  CHECK_THROWS_AS(mul(a, b), InvalidArgument);
  const Field f89b = Field::prime(89);  // same parameters, separate instance
  FieldElement c{7, &f89b};
  CHECK(add(a, c).value == 12);
}

TEST_CASE("matrix multiply") {
  const Field f = Field::prime(89);
  FieldMatrix id(2, 2, f, {1, 0, 0, 1});
  FieldMatrix zero(2, 2, f, {0, 0, 0, 0});
  FieldMatrix b(2, 2, f, {5, 6, 7, 8});
  CHECK(matmul(id, b) == b);
  CHECK(matmul(zero, b) == zero);
  FieldMatrix a(2, 2, f, {1, 2, 3, 4});
  CHECK(matmul(a, b) == FieldMatrix(2, 2, f, {19, 22, 43, 50}));

  FieldMatrix wide(2, 3, f, {1, 2, 3, 4, 5, 6});
  CHECK_THROWS_AS(matmul(wide, b), InvalidArgument);
  const Field g = Field::prime(97);
  FieldMatrix other(2, 2, g, {1, 2, 3, 4});
  CHECK_THROWS_AS(matmul(a, other), InvalidArgument);
}

TEST_CASE("matrix invariants") {
  const Field f = Field::prime(7);
  CHECK_THROWS_AS(FieldMatrix(2, 2, f, {1, 2, 3}), InvalidArgument);
  CHECK_THROWS_AS(FieldMatrix(2, 2, f, {1, 2, 3, 7}), InvalidArgument);
  FieldMatrix m(2, 3, f, {0, 1, 0, 0, 2, 0});
  CHECK(m.sparsity() == doctest::Approx(4.0 / 6.0));
}

TEST_CASE("matrix text format round trip") {
  const Field f = Field::prime(89);
  FieldMatrix m(2, 3, f, {0, 5, 88, 17, 0, 42});
  std::ostringstream os;
  write_matrix(os, m);
  CHECK(os.str() == "q 89 rows 2 cols 3\n0 5 88\n17 0 42\n");
  std::istringstream is(os.str());
  CHECK(read_matrix(is, f) == m);

  std::istringstream bad("q 89 rows 1 cols 2\n1 89\n");
  CHECK_THROWS_AS(read_matrix(bad, f), InvalidArgument);
  std::istringstream negative("q 89 rows 1 cols 2\n1 -3\n");
  CHECK_THROWS_AS(read_matrix(negative, f), InvalidArgument);
  std::istringstream header("rows 1 cols 2 q 89\n1 2\n");
  CHECK_THROWS_AS(read_matrix(header, f), InvalidArgument);
  std::istringstream mismatch("q 97 rows 1 cols 2\n1 2\n");
  CHECK_THROWS_AS(read_matrix(mismatch, f), InvalidArgument);
}

}  // TEST_SUITE
