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

#ifndef SPSHARE_CLUSTER_HPP
#define SPSHARE_CLUSTER_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "spshare/field.hpp"
#include "spshare/otp.hpp"
#include "spshare/stats.hpp"

namespace spshare {

// One-sided scheme for two non-communicating worker pools and a public B:
// the pad is semi-perfect (p1 = p3 = p, p2 = (1-p)/(q-1)), the padded matrix
// A + R goes to the fully untrusted cluster (its entries are independent of
// A, so even total collusion learns nothing) and R goes to the partly
// trusted cluster, where any z colluders see a bounded leakage. Row blocks
// are replicated across layers by a cyclic shift for straggler tolerance.
struct ClusterPlan {
  std::uint32_t n1 = 1;    // untrusted cluster size
  std::uint32_t n2 = 1;    // trusted cluster size
  std::uint32_t rho1 = 1;  // layers per untrusted worker
  std::uint32_t rho2 = 1;  // layers per trusted worker
  std::uint32_t z = 1;     // colluders tolerated in the trusted cluster
  double p = 0.0;          // semi-perfect pad parameter

  // task results needed from each cluster, counting per task, not per worker
  std::uint32_t threshold_untrusted() const;
  std::uint32_t threshold_trusted() const;
};

ClusterPlan make_cluster_plan(std::uint32_t n1, std::uint32_t n2, std::uint32_t rho1,
                              std::uint32_t rho2, std::uint32_t z, double p);

// block held by a worker at a given layer under the cyclic shift
inline std::uint32_t cyclic_block(std::uint32_t worker, std::uint32_t layer, std::uint32_t n) {
  return (worker + n - layer % n) % n;
}

enum class Cluster { Untrusted, Trusted };

struct ClusterWorkerRef {
  Cluster cluster;
  std::uint32_t index;
};

// Block tables for both clusters. Layer 0 is the canonical row split; layer
// j hands worker w the block worker w-1 held at layer j-1.
struct LayeredTasks {
  std::vector<FieldMatrix> padded_blocks;  // n1 row blocks of A + R
  std::vector<FieldMatrix> pad_blocks;     // n2 row blocks of R
  FieldMatrix padded;                      // A + R
  FieldMatrix pad;                         // R (dealer-private)

  const FieldMatrix& untrusted_task(std::uint32_t worker, std::uint32_t layer) const {
    return padded_blocks[cyclic_block(worker, layer, static_cast<std::uint32_t>(padded_blocks.size()))];
  }
  const FieldMatrix& trusted_task(std::uint32_t worker, std::uint32_t layer) const {
    return pad_blocks[cyclic_block(worker, layer, static_cast<std::uint32_t>(pad_blocks.size()))];
  }
};

// Requires n1 | rows(A) and n2 | rows(A).
LayeredTasks plan_cluster(const FieldMatrix& a, const ClusterPlan& plan, std::uint64_t seed);

// Leakage about A seen by the given colluders: exactly zero for any subset of
// the untrusted cluster; min{rho2*z/n2, 1} * rows*cols * L1(p) for z trusted
// colluders. Cross-cluster sets are rejected, the pools do not communicate.
double cluster_leakage(const ClusterPlan& plan, const SourceModel& source, std::uint32_t rows,
                       std::uint32_t cols, const std::vector<ClusterWorkerRef>& colluders);

struct ClusterResponse {
  Cluster cluster;
  std::uint32_t worker;
  std::uint32_t layer;
  FieldMatrix product;  // block * B
  std::uint64_t order;  // arrival stamp
};

// Collects per-task block products until every (A+R)-block and every R-block
// is covered, then assembles (A+R)B - RB = AB.
class ClusterRecovery {
 public:
  explicit ClusterRecovery(const ClusterPlan& plan);

  // returns true once coverage is complete
  bool add(const ClusterResponse& response);
  bool complete() const;
  FieldMatrix assemble() const;
  std::string missing_report() const;

 private:
  ClusterPlan plan_;
  std::vector<FieldMatrix> padded_products_;  // by block
  std::vector<FieldMatrix> pad_products_;
  std::uint32_t covered_padded_ = 0, covered_pad_ = 0;
};

// Feeds responses in arrival order and stops at coverage. Throws
// RecoveryError with the uncovered blocks if the responses run out.
FieldMatrix recover_cluster(std::vector<ClusterResponse> responses, const ClusterPlan& plan);

// convenience overload: p from the relative leakage budget
double solve_pstar(const SourceModel& source, const ClusterPlan& plan, double eps_rel);

// Plan file: "key value" lines, '#' comments. Keys: n1, n2, rho1, rho2, z,
// p or eps_rel, q, s, seed.
struct ParsedPlan {
  std::unique_ptr<Field> field;
  ClusterPlan plan;
  double s = 0.0;
  std::uint64_t seed = 0;
};
ParsedPlan read_plan_file(const std::string& path);

}  // namespace spshare

#endif  // SPSHARE_CLUSTER_HPP
