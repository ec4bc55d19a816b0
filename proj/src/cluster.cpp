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

#include "spshare/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "spshare/optimizer.hpp"

namespace spshare {

namespace {
std::uint32_t layered_threshold(std::uint32_t n, std::uint32_t rho) {
  // largest response count that can leave one block uncovered, plus one
  return rho * (2 * n - 1 - rho) / 2 + 1;
}
}  // namespace

std::uint32_t ClusterPlan::threshold_untrusted() const { return layered_threshold(n1, rho1); }
std::uint32_t ClusterPlan::threshold_trusted() const { return layered_threshold(n2, rho2); }

ClusterPlan make_cluster_plan(std::uint32_t n1, std::uint32_t n2, std::uint32_t rho1,
                              std::uint32_t rho2, std::uint32_t z, double p) {
  if (n1 == 0 || n2 == 0) throw InvalidArgument("cluster plan: both clusters need workers");
  if (rho1 < 1 || rho1 > n1)
    throw InvalidArgument("cluster plan: requires 1 <= rho1 <= n1");
  if (rho2 < 1 || rho2 > n2)
    throw InvalidArgument("cluster plan: requires 1 <= rho2 <= n2");
  if (z < 1 || z >= n2)
    throw InvalidArgument("cluster plan: requires 1 <= z < n2, got z = " + std::to_string(z));
  if (!(p > 0.0) || !(p < 1.0))
    throw InvalidArgument("cluster plan: pad parameter p must lie in (0, 1)");
  return ClusterPlan{n1, n2, rho1, rho2, z, p};
}

LayeredTasks plan_cluster(const FieldMatrix& a, const ClusterPlan& plan, std::uint64_t seed) {
  if (a.rows() % plan.n1 != 0)
    throw InvalidArgument("plan_cluster: requires n1 | rows(A), got rows = " +
                          std::to_string(a.rows()) + ", n1 = " + std::to_string(plan.n1));
  if (a.rows() % plan.n2 != 0)
    throw InvalidArgument("plan_cluster: requires n2 | rows(A), got rows = " +
                          std::to_string(a.rows()) + ", n2 = " + std::to_string(plan.n2));
  const PadParams params = semi_perfect_params(plan.p, a.field());
  OtpShares shares = sample_pad(a, params, seed);
  LayeredTasks tasks;
  const std::uint32_t rows1 = a.rows() / plan.n1;
  for (std::uint32_t i = 0; i < plan.n1; ++i)
    tasks.padded_blocks.push_back(shares.padded.rows_slice(i * rows1, rows1));
  const std::uint32_t rows2 = a.rows() / plan.n2;
  for (std::uint32_t i = 0; i < plan.n2; ++i)
    tasks.pad_blocks.push_back(shares.pad.rows_slice(i * rows2, rows2));
  tasks.padded = std::move(shares.padded);
  tasks.pad = std::move(shares.pad);
  return tasks;
}

double cluster_leakage(const ClusterPlan& plan, const SourceModel& source, std::uint32_t rows,
                       std::uint32_t cols, const std::vector<ClusterWorkerRef>& colluders) {
  if (colluders.empty()) return 0.0;
  const Cluster where = colluders.front().cluster;
  for (const ClusterWorkerRef& w : colluders) {
    if (w.cluster != where)
      throw InvalidArgument(
          "cluster_leakage: colluders span both clusters; the pools are non-communicating and "
          "no cross-cluster guarantee is defined");
    const std::uint32_t size = (w.cluster == Cluster::Untrusted) ? plan.n1 : plan.n2;
    if (w.index >= size) throw InvalidArgument("cluster_leakage: worker index out of range");
  }
  if (where == Cluster::Untrusted) return 0.0;  // pad entries of A+R are input-independent
  const double z = static_cast<double>(colluders.size());
  const double fraction = std::min(plan.rho2 * z / plan.n2, 1.0);
  const double l1 = semi_perfect_pad_leakage(source.field(), source.s(), plan.p);
  return fraction * static_cast<double>(rows) * static_cast<double>(cols) * l1;
}

ClusterRecovery::ClusterRecovery(const ClusterPlan& plan)
    : plan_(plan), padded_products_(plan.n1), pad_products_(plan.n2) {}

bool ClusterRecovery::add(const ClusterResponse& r) {
  if (r.cluster == Cluster::Untrusted) {
    if (r.worker >= plan_.n1 || r.layer >= plan_.rho1)
      throw InvalidArgument("cluster recovery: untrusted response out of range");
    const std::uint32_t b = cyclic_block(r.worker, r.layer, plan_.n1);
    if (padded_products_[b].size() == 0) {
      padded_products_[b] = r.product;
      ++covered_padded_;
    }
  } else {
    if (r.worker >= plan_.n2 || r.layer >= plan_.rho2)
      throw InvalidArgument("cluster recovery: trusted response out of range");
    const std::uint32_t b = cyclic_block(r.worker, r.layer, plan_.n2);
    if (pad_products_[b].size() == 0) {
      pad_products_[b] = r.product;
      ++covered_pad_;
    }
  }
  return complete();
}

bool ClusterRecovery::complete() const {
  return covered_padded_ == plan_.n1 && covered_pad_ == plan_.n2;
}

std::string ClusterRecovery::missing_report() const {
  std::ostringstream os;
  os << "uncovered (A+R) blocks:";
  bool any = false;
  for (std::uint32_t b = 0; b < plan_.n1; ++b)
    if (padded_products_[b].size() == 0) {
      os << ' ' << b;
      any = true;
    }
  if (!any) os << " none";
  os << "; uncovered R blocks:";
  any = false;
  for (std::uint32_t b = 0; b < plan_.n2; ++b)
    if (pad_products_[b].size() == 0) {
      os << ' ' << b;
      any = true;
    }
  if (!any) os << " none";
  return os.str();
}

FieldMatrix ClusterRecovery::assemble() const {
  if (!complete()) throw RecoveryError("cluster recovery incomplete: " + missing_report());
  const Field& f = padded_products_[0].field();
  const std::uint32_t cols = padded_products_[0].cols();
  std::vector<std::uint32_t> padded_data, pad_data;
  for (const FieldMatrix& m : padded_products_)
    padded_data.insert(padded_data.end(), m.data().begin(), m.data().end());
  for (const FieldMatrix& m : pad_products_)
    pad_data.insert(pad_data.end(), m.data().begin(), m.data().end());
  const std::uint32_t rows = static_cast<std::uint32_t>(padded_data.size()) / cols;
  FieldMatrix padded_prod(rows, cols, f, std::move(padded_data));
  FieldMatrix pad_prod(rows, cols, f, std::move(pad_data));
  return sub(padded_prod, pad_prod);
}

FieldMatrix recover_cluster(std::vector<ClusterResponse> responses, const ClusterPlan& plan) {
  std::sort(responses.begin(), responses.end(),
            [](const ClusterResponse& a, const ClusterResponse& b) { return a.order < b.order; });
  ClusterRecovery rec(plan);
  for (const ClusterResponse& r : responses)
    if (rec.add(r)) return rec.assemble();
  throw RecoveryError("recover_cluster: responses exhausted; " + rec.missing_report());
}

double solve_pstar(const SourceModel& source, const ClusterPlan& plan, double eps_rel) {
  return solve_pstar(source, plan.n2, plan.rho2, plan.z, eps_rel);
}

ParsedPlan read_plan_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InvalidArgument("cannot open: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string key, value;
    if (ls >> key >> value) kv[key] = value;
  }
  auto need = [&](const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw InvalidArgument("plan file: missing key '" + key + "'");
    return it->second;
  };
  ParsedPlan out;
  out.field = field_for_q(static_cast<std::uint32_t>(std::stoul(need("q"))));
  out.s = std::stod(need("s"));
  if (auto it = kv.find("seed"); it != kv.end()) out.seed = std::stoull(it->second);
  const std::uint32_t n1 = static_cast<std::uint32_t>(std::stoul(need("n1")));
  const std::uint32_t n2 = static_cast<std::uint32_t>(std::stoul(need("n2")));
  const std::uint32_t rho1 = static_cast<std::uint32_t>(std::stoul(need("rho1")));
  const std::uint32_t rho2 = static_cast<std::uint32_t>(std::stoul(need("rho2")));
  const std::uint32_t z = static_cast<std::uint32_t>(std::stoul(need("z")));
  double p;
  if (auto it = kv.find("p"); it != kv.end()) {
    p = std::stod(it->second);
  } else if (auto jt = kv.find("eps_rel"); jt != kv.end()) {
    const SourceModel source(*out.field, out.s);
    p = solve_pstar(source, n2, rho2, z, std::stod(jt->second));
    // keep the plan inside the open interval the pad parameter lives in
    p = std::min(std::max(p, 1.0 / out.field->q()), std::nextafter(1.0, 0.0));
  } else {
    throw InvalidArgument("plan file: needs either 'p' or 'eps_rel'");
  }
  out.plan = make_cluster_plan(n1, n2, rho1, rho2, z, p);
  return out;
}

}  // namespace spshare
