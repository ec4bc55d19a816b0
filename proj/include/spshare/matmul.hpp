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

#ifndef SPSHARE_MATMUL_HPP
#define SPSHARE_MATMUL_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "spshare/field.hpp"
#include "spshare/optimizer.hpp"
#include "spshare/sss.hpp"

namespace spshare {

// Both inputs are shared through polynomial pairs f_i(x) = A_i + x R_i,
// g_i(x) = B_i + x S_i (A split column-wise, B row-wise, so C is the sum of
// the per-part products). A worker's task is one evaluation pair; the product
// h_i(x) = f_i(x) g_i(x) has degree 2, so three distinct evaluations recover
// A_i B_i at x = 0.
//
//   basic:         one part, every worker one evaluation; tolerates N-3.
//   cyclic-groups: m groups of N/m workers; part i served by the x
//                  consecutive groups starting at its home group.
//   m-split:       m parts, sigma+3 evaluations each, assigned to runs of
//                  sigma+3 consecutive workers; any sigma stragglers leave
//                  three evaluations of every part.
enum class MMVariant { Basic, CyclicGroups, MSplit };

struct MMScheme {
  MMVariant variant = MMVariant::Basic;
  std::uint32_t workers = 0;  // N
  std::uint32_t parts = 1;    // m
  std::uint32_t sigma = 0;    // m-split straggler target
  std::uint32_t x = 1;        // cyclic-groups replication factor
  const Field* field = nullptr;
  double s = 0.0;    // source sparsity
  double s_d = 0.0;  // desired share sparsity
  std::uint64_t seed = 0;

  std::uint32_t evals_per_part() const;
  std::uint32_t tasks_per_worker() const;
  // (worker, evaluation index) pairs serving one part
  std::vector<std::uint32_t> part_workers(std::uint32_t part) const;
  std::uint32_t claimed_tolerance() const;
};

// validates the divisibility and range constraints, naming the violated one
MMScheme make_mm_scheme(MMVariant variant, std::uint32_t workers, std::uint32_t parts,
                        std::uint32_t sigma, std::uint32_t x, const Field& field, double s,
                        double s_d, std::uint64_t seed);

struct MMTask {
  std::uint32_t part;
  std::uint32_t alpha;
  FieldMatrix share_a;  // f_part(alpha)
  FieldMatrix share_b;  // g_part(alpha)
};

struct TaskPlan {
  std::vector<std::vector<MMTask>> worker_tasks;  // [N], in per-worker compute order
  ShareParams params;                             // the common (p1, ps) pair
  std::uint32_t parts = 1;
  std::uint32_t c_rows = 0, c_cols = 0;
};

// Pads for distinct parts come from independent substreams of `seed`.
TaskPlan make_tasks(const FieldMatrix& a, const FieldMatrix& b, const MMScheme& scheme,
                    std::uint64_t seed);

struct WorkerResponse {
  std::uint32_t worker;
  std::uint32_t part;
  std::uint32_t alpha;
  FieldMatrix product;  // f_part(alpha) * g_part(alpha)
  std::uint64_t order;  // arrival stamp
};

// Interpolates each part's degree-2 product polynomial at zero from the first
// three distinct evaluations and sums the parts. Throws RecoveryError listing
// the parts that lack three distinct evaluation points.
FieldMatrix recover(const std::vector<WorkerResponse>& responses, const MMScheme& scheme);

struct MMLeakage {
  double per_entry_a = 0.0;  // q-ary symbols leaked per held entry of A
  double per_entry_b = 0.0;
  double relative_a = 0.0;   // per-entry leakage / source entry entropy
  double relative_b = 0.0;
  double per_worker_a = 0.0; // absolute, over everything one worker holds
  double per_worker_b = 0.0;
  std::uint32_t tasks_per_worker = 0;
};
MMLeakage scheme_leakage(const MMScheme& scheme, const SourceModel& source_a,
                         const SourceModel& source_b, std::uint32_t rows_a, std::uint32_t inner,
                         std::uint32_t cols_b);

// Exhaustively removes worker subsets and checks that three evaluations of
// every part survive; returns the largest count for which every subset is
// tolerated, alongside the configured claim.
struct ToleranceReport {
  std::uint32_t measured = 0;
  std::uint32_t claimed = 0;
};
ToleranceReport tolerance_report(const MMScheme& scheme);

// Scheme file: one "key value" pair per line, '#' comments. Keys: variant
// (basic | cyclic-groups | m-split), N, m, sigma, x, q, s, s_d, seed.
struct ParsedScheme {
  std::unique_ptr<Field> field;
  MMScheme scheme;
};
ParsedScheme read_scheme_file(const std::string& path);

}  // namespace spshare

#endif  // SPSHARE_MATMUL_HPP
