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

#ifndef SPSHARE_SHUFFLE_HPP
#define SPSHARE_SHUFFLE_HPP

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "spshare/field.hpp"

namespace spshare {

// Row/column permutations that break positional correlation before encoding.
// Stored as gather maps, never materialized as matrices:
//   A'[i][j] = A[perm1[i]][perm2[j]],  B'[j][k] = B[perm2[j]][perm3[k]],
// so A'B' is the row/column-permuted product and unshuffling restores AB
// exactly. Dealer-private; serialized only through the explicit
// permutation-file helpers.
struct PermTriple {
  std::vector<std::uint32_t> perm1;  // over rows(A)
  std::vector<std::uint32_t> perm2;  // over cols(A) = rows(B)
  std::vector<std::uint32_t> perm3;  // over cols(B)
  std::uint64_t seed = 0;

  static PermTriple identity(std::uint32_t rows, std::uint32_t inner, std::uint32_t cols);
};

// Fisher-Yates triple keyed on the seed
PermTriple sample_perms(std::uint32_t rows, std::uint32_t inner, std::uint32_t cols,
                        std::uint64_t seed);

// applies a given triple; the sampled-seed entry point below is the usual path
std::pair<FieldMatrix, FieldMatrix> apply_shuffle(const FieldMatrix& a, const FieldMatrix& b,
                                                  const PermTriple& perms);

std::tuple<FieldMatrix, FieldMatrix, PermTriple> shuffle_pair(const FieldMatrix& a,
                                                              const FieldMatrix& b,
                                                              std::uint64_t seed);

// maps A'B' back to AB
FieldMatrix unshuffle_product(const FieldMatrix& c_prime, const PermTriple& perms);

// one line per permutation: space-separated 0-based indices
void write_perm_file(const std::string& path, const PermTriple& perms);
PermTriple read_perm_file(const std::string& path);

}  // namespace spshare

#endif  // SPSHARE_SHUFFLE_HPP
