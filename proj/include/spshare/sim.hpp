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

#ifndef SPSHARE_SIM_HPP
#define SPSHARE_SIM_HPP

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "spshare/cluster.hpp"
#include "spshare/matmul.hpp"
#include "spshare/otp.hpp"
#include "spshare/rng.hpp"
#include "spshare/sss.hpp"
#include "spshare/stats.hpp"

namespace spshare {

// Per-task completion times for the discrete-event run. Workers compute
// their tasks sequentially; a full straggler returns nothing, a partial
// straggler only its first k results. Times are deterministic in the trial
// seed.
struct LatencyModel {
  enum class Kind { Deterministic, ShiftedExponential, PerWorkerTable };
  Kind kind = Kind::Deterministic;
  double fixed = 1.0;                       // deterministic duration per task
  double shift = 0.0;                       // shifted exponential
  double rate = 1.0;
  std::vector<std::vector<double>> table;   // per worker, per task
  std::vector<std::uint32_t> full_stragglers;
  std::map<std::uint32_t, std::uint32_t> partial;  // worker -> task count completed

  double task_duration(std::uint32_t worker, std::uint32_t task, Rng& rng) const;
};

struct SimResult {
  bool recovered = false;
  bool verified = false;      // recovered matrix equals the reference product
  double t_complete = 0.0;    // time of the response that met the threshold
  std::uint32_t responses_used = 0;
  std::uint32_t responses_available = 0;
  double s_d_emp = 0.0;       // mean empirical share sparsity
  double leak_emp = 0.0;      // plug-in MI between source and share entries
  double leak_analytic = 0.0; // per-entry, closed form
  std::uint64_t seed = 0;
};

// i.i.d. entries: 0 with probability s, otherwise uniform over the nonzero
// symbols; row substreams keyed on the row index
FieldMatrix gen_matrix(const SourceModel& source, std::uint32_t rows, std::uint32_t cols,
                       std::uint64_t seed);

// every (worker, task) product of a task plan, in worker-then-task order
std::vector<WorkerResponse> all_responses(const TaskPlan& plan);

// Generates sparse inputs from the scheme's source model, runs the workers
// under the latency model, feeds responses in completion order, and stops at
// the first arrival that lets recovery succeed. The recovered product is
// checked against a locally computed reference, exactly.
SimResult run_mm_trial(const MMScheme& scheme, const LatencyModel& latency, std::uint32_t rows,
                       std::uint32_t inner, std::uint32_t cols, std::uint64_t seed);

// Same loop for the two-cluster plan; worker ids 0..n1-1 are the untrusted
// cluster, n1..n1+n2-1 the trusted one.
SimResult run_cluster_trial(const ClusterPlan& plan, const SourceModel& source,
                            const LatencyModel& latency, std::uint32_t rows, std::uint32_t cols_b,
                            std::uint64_t seed);

// Sampled-vs-analytical leakage for one share's channel. The plug-in
// estimate carries an O(q^2 / samples) bias, so the report includes a
// Poisson-bootstrap bias estimate and standard error; `debiased` is the
// bias-corrected value comparable to `analytic` at the bootstrap scale.
struct LeakageExperiment {
  double analytic = 0.0;
  double plugin = 0.0;
  double boot_bias = 0.0;
  double boot_se = 0.0;
  double debiased = 0.0;
  std::size_t samples = 0;
};
LeakageExperiment leakage_experiment(const PadParams& params, int share_index,
                                     const SourceModel& source, std::size_t entries,
                                     std::uint64_t seed);
LeakageExperiment leakage_experiment(const ShareParams& params, std::uint32_t share_index,
                                     const SourceModel& source, std::size_t entries,
                                     std::uint64_t seed);

// fixed-format CSV row ("%.12g" for reals) so outputs are stable across runs
struct TrialRow {
  std::uint64_t seed = 0;
  std::string variant;
  std::uint32_t workers = 0;
  std::string sigma_rho;  // sigma, or "rho1:rho2"
  SimResult result;
};
extern const char* const kTrialCsvHeader;
std::string csv_double(double v);
void write_trial_row(std::ostream& os, const TrialRow& row);

}  // namespace spshare

#endif  // SPSHARE_SIM_HPP
