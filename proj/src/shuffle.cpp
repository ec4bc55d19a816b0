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

#include "spshare/shuffle.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include "spshare/rng.hpp"

namespace spshare {

namespace {

std::vector<std::uint32_t> fisher_yates(std::uint32_t n, Rng& rng) {
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (std::uint32_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng.next_below(i)]);
  return p;
}

std::vector<std::uint32_t> invert(const std::vector<std::uint32_t>& p) {
  std::vector<std::uint32_t> inv(p.size());
  for (std::uint32_t i = 0; i < p.size(); ++i) inv[p[i]] = i;
  return inv;
}

void check_perm(const std::vector<std::uint32_t>& p, std::uint32_t n, const char* name) {
  if (p.size() != n)
    throw InvalidArgument(std::string(name) + ": permutation length does not match dimension");
  std::vector<bool> seen(n, false);
  for (std::uint32_t v : p) {
    if (v >= n || seen[v])
      throw InvalidArgument(std::string(name) + ": not a bijection over 0.." + std::to_string(n - 1));
    seen[v] = true;
  }
}

}  // namespace

PermTriple PermTriple::identity(std::uint32_t rows, std::uint32_t inner, std::uint32_t cols) {
  PermTriple t;
  t.perm1.resize(rows);
  t.perm2.resize(inner);
  t.perm3.resize(cols);
  std::iota(t.perm1.begin(), t.perm1.end(), 0);
  std::iota(t.perm2.begin(), t.perm2.end(), 0);
  std::iota(t.perm3.begin(), t.perm3.end(), 0);
  return t;
}

PermTriple sample_perms(std::uint32_t rows, std::uint32_t inner, std::uint32_t cols,
                        std::uint64_t seed) {
  const Rng root(seed);
  PermTriple t;
  t.seed = seed;
  Rng r1 = root.derive(1), r2 = root.derive(2), r3 = root.derive(3);
  t.perm1 = fisher_yates(rows, r1);
  t.perm2 = fisher_yates(inner, r2);
  t.perm3 = fisher_yates(cols, r3);
  return t;
}

std::pair<FieldMatrix, FieldMatrix> apply_shuffle(const FieldMatrix& a, const FieldMatrix& b,
                                                  const PermTriple& perms) {
  if (a.cols() != b.rows()) throw InvalidArgument("apply_shuffle: inner dimensions do not match");
  check_perm(perms.perm1, a.rows(), "apply_shuffle");
  check_perm(perms.perm2, a.cols(), "apply_shuffle");
  check_perm(perms.perm3, b.cols(), "apply_shuffle");
  FieldMatrix ap(a.rows(), a.cols(), a.field());
  for (std::uint32_t i = 0; i < a.rows(); ++i)
    for (std::uint32_t j = 0; j < a.cols(); ++j) ap(i, j) = a(perms.perm1[i], perms.perm2[j]);
  FieldMatrix bp(b.rows(), b.cols(), b.field());
  for (std::uint32_t j = 0; j < b.rows(); ++j)
    for (std::uint32_t k = 0; k < b.cols(); ++k) bp(j, k) = b(perms.perm2[j], perms.perm3[k]);
  return {std::move(ap), std::move(bp)};
}

std::tuple<FieldMatrix, FieldMatrix, PermTriple> shuffle_pair(const FieldMatrix& a,
                                                              const FieldMatrix& b,
                                                              std::uint64_t seed) {
  PermTriple perms = sample_perms(a.rows(), a.cols(), b.cols(), seed);
  auto [ap, bp] = apply_shuffle(a, b, perms);
  return {std::move(ap), std::move(bp), std::move(perms)};
}

FieldMatrix unshuffle_product(const FieldMatrix& c_prime, const PermTriple& perms) {
  check_perm(perms.perm1, c_prime.rows(), "unshuffle_product");
  check_perm(perms.perm3, c_prime.cols(), "unshuffle_product");
  // C'[i][k] = C[perm1[i]][perm3[k]]
  const auto inv1 = invert(perms.perm1);
  const auto inv3 = invert(perms.perm3);
  FieldMatrix c(c_prime.rows(), c_prime.cols(), c_prime.field());
  for (std::uint32_t i = 0; i < c.rows(); ++i)
    for (std::uint32_t k = 0; k < c.cols(); ++k) c(i, k) = c_prime(inv1[i], inv3[k]);
  return c;
}

void write_perm_file(const std::string& path, const PermTriple& perms) {
  std::ofstream os(path);
  if (!os) throw InvalidArgument("cannot open for writing: " + path);
  for (const auto* p : {&perms.perm1, &perms.perm2, &perms.perm3}) {
    for (std::size_t i = 0; i < p->size(); ++i) os << (i ? " " : "") << (*p)[i];
    os << "\n";
  }
}

PermTriple read_perm_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InvalidArgument("cannot open: " + path);
  PermTriple t;
  std::string line;
  for (auto* p : {&t.perm1, &t.perm2, &t.perm3}) {
    if (!std::getline(is, line))
      throw InvalidArgument("permutation file needs three lines: " + path);
    std::istringstream ls(line);
    std::uint32_t v;
    while (ls >> v) p->push_back(v);
    check_perm(*p, static_cast<std::uint32_t>(p->size()), "read_perm_file");
  }
  return t;
}

}  // namespace spshare
