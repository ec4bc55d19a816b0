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

#include "spshare/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace spshare {

double LatencyModel::task_duration(std::uint32_t worker, std::uint32_t task, Rng& rng) const {
  switch (kind) {
    case Kind::Deterministic:
      return fixed;
    case Kind::ShiftedExponential:
      return shift - std::log(1.0 - rng.next_unit()) / rate;
    case Kind::PerWorkerTable:
      if (worker >= table.size() || task >= table[worker].size())
        throw InvalidArgument("latency table has no entry for worker " + std::to_string(worker) +
                              ", task " + std::to_string(task));
      return table[worker][task];
  }
  return fixed;
}

FieldMatrix gen_matrix(const SourceModel& source, std::uint32_t rows, std::uint32_t cols,
                       std::uint64_t seed) {
  const std::uint32_t q = source.q();
  const double s = source.s();
  FieldMatrix out(rows, cols, source.field());
  const Rng root(seed);
  for (std::uint32_t r = 0; r < rows; ++r) {
    Rng rng = root.derive(r);
    for (std::uint32_t c = 0; c < cols; ++c)
      out(r, c) = (rng.next_unit() < s) ? 0 : 1 + rng.next_below(q - 1);
  }
  return out;
}

std::vector<WorkerResponse> all_responses(const TaskPlan& plan) {
  std::vector<WorkerResponse> out;
  std::uint64_t order = 0;
  for (std::uint32_t w = 0; w < plan.worker_tasks.size(); ++w)
    for (const MMTask& t : plan.worker_tasks[w])
      out.push_back(WorkerResponse{w, t.part, t.alpha, matmul(t.share_a, t.share_b), order++});
  return out;
}

namespace {

struct Event {
  double time;
  std::uint32_t worker;
  std::uint32_t task;
  bool operator<(const Event& other) const {
    if (time != other.time) return time < other.time;
    if (worker != other.worker) return worker < other.worker;
    return task < other.task;
  }
};

// completion events for sequential per-worker execution, tie-broken by
// (time, worker, task)
std::vector<Event> schedule(const LatencyModel& latency, std::uint32_t workers,
                            const std::vector<std::uint32_t>& tasks_per_worker,
                            std::uint64_t seed) {
  std::vector<Event> events;
  const Rng root(seed);
  for (std::uint32_t w = 0; w < workers; ++w) {
    if (std::find(latency.full_stragglers.begin(), latency.full_stragglers.end(), w) !=
        latency.full_stragglers.end())
      continue;
    std::uint32_t count = tasks_per_worker[w];
    if (auto it = latency.partial.find(w); it != latency.partial.end())
      count = std::min(count, it->second);
    Rng rng = root.derive(w);
    double t = 0.0;
    for (std::uint32_t k = 0; k < count; ++k) {
      t += latency.task_duration(w, k, rng);
      events.push_back(Event{t, w, k});
    }
  }
  std::sort(events.begin(), events.end());
  return events;
}

double mean_share_sparsity(const TaskPlan& plan) {
  double acc = 0.0;
  std::size_t count = 0;
  for (const auto& tasks : plan.worker_tasks)
    for (const MMTask& t : tasks) {
      acc += t.share_a.sparsity();
      ++count;
    }
  return count ? acc / count : 0.0;
}

}  // namespace

SimResult run_mm_trial(const MMScheme& scheme, const LatencyModel& latency, std::uint32_t rows,
                       std::uint32_t inner, std::uint32_t cols, std::uint64_t seed) {
  const Rng root(seed);
  const SourceModel source(*scheme.field, scheme.s);
  const FieldMatrix a = gen_matrix(source, rows, inner, root.derive(1).seed());
  const FieldMatrix b = gen_matrix(source, inner, cols, root.derive(2).seed());
  const FieldMatrix reference = matmul(a, b);
  const TaskPlan plan = make_tasks(a, b, scheme, root.derive(3).seed());

  SimResult res;
  res.seed = seed;
  res.s_d_emp = mean_share_sparsity(plan);
  res.leak_analytic = sss_share_leakage(*scheme.field, scheme.s,
                                        plan.params.p1() * scheme.s +
                                            plan.params.ps() * (1.0 - scheme.s),
                                        scheme.evals_per_part(), plan.params.p1(),
                                        plan.params.ps());
  {
    // source-vs-share pairing over part 0's first evaluation
    const std::uint32_t chunk = inner / scheme.parts;
    const FieldMatrix a0 = a.cols_slice(0, chunk);
    bool found = false;
    for (std::uint32_t w = 0; w < scheme.workers && !found; ++w)
      for (const MMTask& t : plan.worker_tasks[w])
        if (t.part == 0 && t.alpha == plan.params.alphas()[0]) {
          res.leak_emp = empirical_mi(a0, t.share_a);
          found = true;
          break;
        }
  }

  std::vector<std::uint32_t> per_worker(scheme.workers);
  for (std::uint32_t w = 0; w < scheme.workers; ++w)
    per_worker[w] = static_cast<std::uint32_t>(plan.worker_tasks[w].size());
  const std::vector<Event> events = schedule(latency, scheme.workers, per_worker,
                                             root.derive(4).seed());
  res.responses_available = static_cast<std::uint32_t>(events.size());

  // arrival loop with an incremental threshold check
  std::vector<std::vector<std::uint32_t>> seen_alphas(scheme.parts);
  std::uint32_t parts_ready = 0;
  std::vector<WorkerResponse> received;
  std::uint64_t order = 0;
  for (const Event& ev : events) {
    const MMTask& t = plan.worker_tasks[ev.worker][ev.task];
    received.push_back(
        WorkerResponse{ev.worker, t.part, t.alpha, matmul(t.share_a, t.share_b), order++});
    auto& seen = seen_alphas[t.part];
    if (seen.size() < 3 && std::find(seen.begin(), seen.end(), t.alpha) == seen.end()) {
      seen.push_back(t.alpha);
      if (seen.size() == 3) ++parts_ready;
    }
    if (parts_ready == scheme.parts) {
      res.recovered = true;
      res.t_complete = ev.time;
      res.responses_used = static_cast<std::uint32_t>(received.size());
      res.verified = (recover(received, scheme) == reference);
      break;
    }
  }
  return res;
}

SimResult run_cluster_trial(const ClusterPlan& plan, const SourceModel& source,
                            const LatencyModel& latency, std::uint32_t rows, std::uint32_t cols_b,
                            std::uint64_t seed) {
  const Rng root(seed);
  const Field& f = source.field();
  const FieldMatrix a = gen_matrix(source, rows, /*cols=*/rows, root.derive(1).seed());
  const FieldMatrix b = gen_matrix(source, rows, cols_b, root.derive(2).seed());
  const FieldMatrix reference = matmul(a, b);
  const LayeredTasks tasks = plan_cluster(a, plan, root.derive(3).seed());

  SimResult res;
  res.seed = seed;
  res.s_d_emp = tasks.padded.sparsity();
  res.leak_analytic = semi_perfect_pad_leakage(f, source.s(), plan.p);
  res.leak_emp = empirical_mi(a, tasks.pad);

  const std::uint32_t workers = plan.n1 + plan.n2;
  std::vector<std::uint32_t> per_worker(workers);
  for (std::uint32_t w = 0; w < workers; ++w) per_worker[w] = w < plan.n1 ? plan.rho1 : plan.rho2;
  const std::vector<Event> events = schedule(latency, workers, per_worker,
                                             root.derive(4).seed());
  res.responses_available = static_cast<std::uint32_t>(events.size());

  ClusterRecovery rec(plan);
  std::uint32_t used = 0;
  for (const Event& ev : events) {
    ClusterResponse r;
    r.order = used;
    if (ev.worker < plan.n1) {
      r.cluster = Cluster::Untrusted;
      r.worker = ev.worker;
      r.layer = ev.task;
      r.product = matmul(tasks.untrusted_task(r.worker, r.layer), b);
    } else {
      r.cluster = Cluster::Trusted;
      r.worker = ev.worker - plan.n1;
      r.layer = ev.task;
      r.product = matmul(tasks.trusted_task(r.worker, r.layer), b);
    }
    ++used;
    if (rec.add(r)) {
      res.recovered = true;
      res.t_complete = ev.time;
      res.responses_used = used;
      res.verified = (rec.assemble() == reference);
      break;
    }
  }
  return res;
}

namespace {

std::uint64_t poisson_draw(Rng& rng, double lambda) {
  if (lambda <= 0.0) return 0;
  if (lambda < 30.0) {
    const double limit = std::exp(-lambda);
    double prod = 1.0;
    std::uint64_t k = 0;
    do {
      prod *= rng.next_unit();
      ++k;
    } while (prod > limit);
    return k - 1;
  }
  // normal approximation is plenty for bootstrap counts this large
  const double u1 = std::max(rng.next_unit(), 1e-300);
  const double u2 = rng.next_unit();
  const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  const double v = std::round(lambda + std::sqrt(lambda) * z);
  return v < 0.0 ? 0 : static_cast<std::uint64_t>(v);
}

double plugin_mi_from_counts(const std::vector<double>& joint, std::uint32_t q) {
  std::vector<double> pin(q, 0.0), pout(q, 0.0);
  double total = 0.0;
  for (std::uint32_t a = 0; a < q; ++a)
    for (std::uint32_t b = 0; b < q; ++b) {
      const double c = joint[static_cast<std::size_t>(a) * q + b];
      pin[a] += c;
      pout[b] += c;
      total += c;
    }
  const double ln_q = std::log(static_cast<double>(q));
  double acc = 0.0;
  for (std::uint32_t a = 0; a < q; ++a)
    for (std::uint32_t b = 0; b < q; ++b) {
      const double c = joint[static_cast<std::size_t>(a) * q + b];
      if (c > 0.0) acc += (c / total) * std::log(c * total / (pin[a] * pout[b]));
    }
  return acc / ln_q;
}

LeakageExperiment experiment_from_pair(const FieldMatrix& a, const FieldMatrix& share,
                                       double analytic, std::uint64_t seed) {
  const std::uint32_t q = a.field().q();
  std::vector<double> joint(static_cast<std::size_t>(q) * q, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    joint[static_cast<std::size_t>(a.data()[i]) * q + share.data()[i]] += 1.0;

  LeakageExperiment ex;
  ex.analytic = analytic;
  ex.samples = a.size();
  ex.plugin = plugin_mi_from_counts(joint, q);

  constexpr int kResamples = 64;
  Rng rng = Rng(seed).derive(0xB007);
  std::vector<double> resampled(joint.size());
  double mean = 0.0, m2 = 0.0;
  for (int b = 0; b < kResamples; ++b) {
    for (std::size_t i = 0; i < joint.size(); ++i)
      resampled[i] = joint[i] > 0.0 ? static_cast<double>(poisson_draw(rng, joint[i])) : 0.0;
    const double mi = plugin_mi_from_counts(resampled, q);
    const double delta = mi - mean;
    mean += delta / (b + 1);
    m2 += delta * (mi - mean);
  }
  ex.boot_se = std::sqrt(m2 / (kResamples - 1));
  ex.boot_bias = mean - ex.plugin;
  ex.debiased = ex.plugin - ex.boot_bias;
  return ex;
}

}  // namespace

LeakageExperiment leakage_experiment(const PadParams& params, int share_index,
                                     const SourceModel& source, std::size_t entries,
                                     std::uint64_t seed) {
  const std::uint32_t cols = 1024;
  const std::uint32_t rows = static_cast<std::uint32_t>((entries + cols - 1) / cols);
  const Rng root(seed);
  const FieldMatrix a = gen_matrix(source, rows, cols, root.derive(1).seed());
  const OtpShares shares = sample_pad(a, params, root.derive(2).seed());
  const FieldMatrix& observed = share_index == 0 ? shares.pad : shares.padded;
  const double analytic =
      mutual_information_q(source.entry_pmf(), share_channel(params, share_index));
  return experiment_from_pair(a, observed, analytic, seed);
}

LeakageExperiment leakage_experiment(const ShareParams& params, std::uint32_t share_index,
                                     const SourceModel& source, std::size_t entries,
                                     std::uint64_t seed) {
  const std::uint32_t cols = 1024;
  const std::uint32_t rows = static_cast<std::uint32_t>((entries + cols - 1) / cols);
  const Rng root(seed);
  const FieldMatrix a = gen_matrix(source, rows, cols, root.derive(1).seed());
  const ShareSet shares = deal(a, params, root.derive(2).seed());
  const double s_d = params.p1() * source.s() + params.ps() * (1.0 - source.s());
  const double analytic =
      sss_share_leakage(params.field(), source.s(), s_d, params.n(), params.p1(), params.ps());
  return experiment_from_pair(a, shares.shares.at(share_index), analytic, seed);
}

const char* const kTrialCsvHeader =
    "seed,variant,N,sigma_rho,recovered,t_complete,responses_used,s_d_emp,leak_emp,leak_analytic";

std::string csv_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_trial_row(std::ostream& os, const TrialRow& row) {
  os << row.seed << ',' << row.variant << ',' << row.workers << ',' << row.sigma_rho << ','
     << (row.result.recovered ? 1 : 0) << ',' << csv_double(row.result.t_complete) << ','
     << row.result.responses_used << ',' << csv_double(row.result.s_d_emp) << ','
     << csv_double(row.result.leak_emp) << ',' << csv_double(row.result.leak_analytic) << "\n";
}

}  // namespace spshare
