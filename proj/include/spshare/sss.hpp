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

#ifndef SPSHARE_SSS_HPP
#define SPSHARE_SSS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "spshare/field.hpp"
#include "spshare/stats.hpp"

namespace spshare {

// n-share threshold-2 sharing: share i is f(alpha_i) = A + alpha_i * R, with
// the pad R drawn entrywise from
//
//   given A = 0:      R = 0 with prob p1, otherwise uniform over the q-1
//                     nonzero symbols;
//   given A = a != 0: R = -a/alpha_i with prob ps for each i in [n],
//                     otherwise uniform over the remaining q-n symbols.
//
// Any two shares reconstruct A; each share has sparsity p1*s + ps*(1-s).
class ShareParams {
 public:
  ShareParams(const Field& field, std::vector<std::uint32_t> alphas, double p1, double ps);
  ShareParams(const Field& field, std::uint32_t n, double p1, double ps);

  const Field& field() const { return *field_; }
  std::uint32_t q() const { return field_->q(); }
  std::uint32_t n() const { return static_cast<std::uint32_t>(alphas_.size()); }
  const std::vector<std::uint32_t>& alphas() const { return alphas_; }
  double p1() const { return p1_; }
  double ps() const { return ps_; }
  double p1inv() const { return (1.0 - p1_) / (q() - 1); }
  double pcinv() const { return (1.0 - n() * ps_) / (q() - n()); }

  // 1, 2, ..., n
  static std::vector<std::uint32_t> default_alphas(std::uint32_t n);
  static ShareParams uniform(const Field& field, std::uint32_t n);

 private:
  const Field* field_;
  std::vector<std::uint32_t> alphas_;
  double p1_, ps_;
};

// Dealer output. The pad is kept for analysis and tests only; anything
// serialized for workers carries the shares alone.
struct ShareSet {
  std::vector<std::uint32_t> alphas;
  std::vector<FieldMatrix> shares;  // shares[i] = A + alphas[i] * R
  FieldMatrix pad;                  // R, dealer-private
};

ShareSet deal(const FieldMatrix& a, const ShareParams& params, std::uint64_t seed);

// A = (alpha_j * share_i - alpha_i * share_j) / (alpha_j - alpha_i), exact
FieldMatrix reconstruct(const FieldMatrix& share_i, std::uint32_t alpha_i,
                        const FieldMatrix& share_j, std::uint32_t alpha_j);

// conditional distribution of an R entry given the A entry
ConditionalPmf pad_channel(const ShareParams& params);
// conditional distribution of share i's entry (A + alpha_i R) given the A entry
ConditionalPmf share_channel(const ShareParams& params, std::uint32_t share_index);

// per-entry leakage of one share, closed form
double sss_share_leakage(const Field& field, double s, double s_d, std::uint32_t n, double p1,
                         double ps);

// Per-share leakage by two independent routes: the closed form above and the
// generic channel/mutual-information path. The construction is symmetric in
// the evaluation points, so all n per-share values coincide.
struct SssLeakage {
  LeakageReport report;                  // closed form, n entries
  std::vector<double> via_channel;       // channel route, n entries
};
SssLeakage sss_leakage(const ShareParams& params, const SourceModel& source);

// Share file: "alpha <a> share-index <i> n <n>" header then the matrix format.
struct ShareFile {
  std::uint32_t alpha = 0;
  std::uint32_t share_index = 0;
  std::uint32_t n = 0;
  FieldMatrix matrix;
  std::unique_ptr<Field> field;
};
void write_share_file(const std::string& path, const FieldMatrix& share, std::uint32_t alpha,
                      std::uint32_t share_index, std::uint32_t n);
ShareFile read_share_file(const std::string& path);

}  // namespace spshare

#endif  // SPSHARE_SSS_HPP
