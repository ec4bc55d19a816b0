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

#include "spshare/matmul.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "spshare/rng.hpp"

namespace spshare {

std::uint32_t MMScheme::evals_per_part() const {
  switch (variant) {
    case MMVariant::Basic: return workers;
    case MMVariant::CyclicGroups: return x * (workers / parts);
    case MMVariant::MSplit: return sigma + 3;
  }
  return 0;
}

std::uint32_t MMScheme::tasks_per_worker() const {
  return parts * evals_per_part() / workers;
}

std::vector<std::uint32_t> MMScheme::part_workers(std::uint32_t part) const {
  std::vector<std::uint32_t> out;
  switch (variant) {
    case MMVariant::Basic:
      for (std::uint32_t w = 0; w < workers; ++w) out.push_back(w);
      break;
    case MMVariant::CyclicGroups: {
      const std::uint32_t per_group = workers / parts;
      for (std::uint32_t j = 0; j < x; ++j) {
        const std::uint32_t g = (part + j) % parts;
        for (std::uint32_t w = 0; w < per_group; ++w) out.push_back(g * per_group + w);
      }
      break;
    }
    case MMVariant::MSplit:
      for (std::uint32_t j = 0; j < sigma + 3; ++j)
        out.push_back((part * (sigma + 3) + j) % workers);
      break;
  }
  return out;
}

std::uint32_t MMScheme::claimed_tolerance() const {
  switch (variant) {
    case MMVariant::Basic: return workers - 3;
    case MMVariant::CyclicGroups: return x == 1 ? 1 : (x == 2 ? parts + 1 : x);
    case MMVariant::MSplit: return sigma;
  }
  return 0;
}

MMScheme make_mm_scheme(MMVariant variant, std::uint32_t workers, std::uint32_t parts,
                        std::uint32_t sigma, std::uint32_t x, const Field& field, double s,
                        double s_d, std::uint64_t seed) {
  MMScheme sc{variant, workers, parts, sigma, x, &field, s, s_d, seed};
  if (workers == 0) throw InvalidArgument("scheme: needs at least one worker");
  switch (variant) {
    case MMVariant::Basic:
      if (workers < 3) throw InvalidArgument("basic scheme: recovery needs N >= 3 workers");
      sc.parts = 1;
      sc.x = 1;
      sc.sigma = workers - 3;
      break;
    case MMVariant::CyclicGroups:
      if (parts == 0 || workers % parts != 0)
        throw InvalidArgument("cyclic-groups: requires m | N, got N = " +
                              std::to_string(workers) + ", m = " + std::to_string(parts));
      if (x < 1 || x >= parts)
        throw InvalidArgument("cyclic-groups: requires 1 <= x <= m - 1, got x = " +
                              std::to_string(x));
      if (x * (workers / parts) < 3)
        throw InvalidArgument("cyclic-groups: each part needs >= 3 evaluations, x*N/m = " +
                              std::to_string(x * (workers / parts)));
      sc.sigma = sc.claimed_tolerance();
      break;
    case MMVariant::MSplit:
      if (sigma >= parts)
        throw InvalidArgument("m-split: requires sigma < m, got sigma = " +
                              std::to_string(sigma) + ", m = " + std::to_string(parts));
      if ((parts * (sigma + 3)) % workers != 0)
        throw InvalidArgument("m-split: requires N | m*(sigma+3), got N = " +
                              std::to_string(workers) + ", m*(sigma+3) = " +
                              std::to_string(parts * (sigma + 3)));
      if (sigma + 3 > workers)
        throw InvalidArgument("m-split: requires sigma+3 <= N so no worker repeats a part");
      break;
  }
  if (sc.evals_per_part() >= field.q())
    throw InvalidArgument("scheme: evaluations per part must stay below q");
  return sc;
}

TaskPlan make_tasks(const FieldMatrix& a, const FieldMatrix& b, const MMScheme& scheme,
                    std::uint64_t seed) {
  if (a.cols() != b.rows()) throw InvalidArgument("make_tasks: inner dimensions do not match");
  if (!a.field().same_as(b.field()) || !a.field().same_as(*scheme.field))
    throw InvalidArgument("make_tasks: field mismatch");
  const std::uint32_t m = scheme.parts;
  if (a.cols() % m != 0)
    throw InvalidArgument("make_tasks: requires m | inner dimension, got inner = " +
                          std::to_string(a.cols()) + ", m = " + std::to_string(m));
  const std::uint32_t n_evals = scheme.evals_per_part();
  const SourceModel source(*scheme.field, scheme.s);
  const ShareParams params = solve_sss(source, scheme.s_d, n_evals).params;

  TaskPlan plan{std::vector<std::vector<MMTask>>(scheme.workers), params, m, a.rows(), b.cols()};
  const std::uint32_t chunk = a.cols() / m;
  const Rng root(seed);
  for (std::uint32_t p = 0; p < m; ++p) {
    const FieldMatrix ap = a.cols_slice(p * chunk, chunk);
    const FieldMatrix bp = b.rows_slice(p * chunk, chunk);
    const ShareSet fa = deal(ap, params, root.derive(2 * p).seed());
    const ShareSet gb = deal(bp, params, root.derive(2 * p + 1).seed());
    const auto assigned = scheme.part_workers(p);
    for (std::uint32_t j = 0; j < assigned.size(); ++j)
      plan.worker_tasks[assigned[j]].push_back(
          MMTask{p, params.alphas()[j], fa.shares[j], gb.shares[j]});
  }
  return plan;
}

FieldMatrix recover(const std::vector<WorkerResponse>& responses, const MMScheme& scheme) {
  const Field& f = *scheme.field;
  // first three distinct evaluation points per part, in arrival order
  std::vector<std::vector<const WorkerResponse*>> picked(scheme.parts);
  for (const WorkerResponse& r : responses) {
    if (r.part >= scheme.parts) throw InvalidArgument("recover: response for unknown part");
    auto& v = picked[r.part];
    if (v.size() >= 3) continue;
    bool dup = false;
    for (const WorkerResponse* q : v) dup |= (q->alpha == r.alpha);
    if (!dup) v.push_back(&r);
  }
  std::string deficient;
  for (std::uint32_t p = 0; p < scheme.parts; ++p)
    if (picked[p].size() < 3) deficient += (deficient.empty() ? "" : ", ") + std::to_string(p);
  if (!deficient.empty())
    throw RecoveryError("recover: need 3 distinct evaluations per part, missing for part(s) " +
                        deficient);

  FieldMatrix c;
  for (std::uint32_t p = 0; p < scheme.parts; ++p) {
    const auto& v = picked[p];
    FieldMatrix part_c;
    for (int k = 0; k < 3; ++k) {
      // Lagrange basis at x = 0
      std::uint32_t coeff = 1;
      for (int j = 0; j < 3; ++j) {
        if (j == k) continue;
        coeff = f.mul(coeff, f.mul(v[j]->alpha, f.inv(f.sub(v[j]->alpha, v[k]->alpha))));
      }
      FieldMatrix term = scalar_mul(coeff, v[k]->product);
      part_c = (k == 0) ? term : add(part_c, term);
    }
    c = (p == 0) ? part_c : add(c, part_c);
  }
  return c;
}

MMLeakage scheme_leakage(const MMScheme& scheme, const SourceModel& source_a,
                         const SourceModel& source_b, std::uint32_t rows_a, std::uint32_t inner,
                         std::uint32_t cols_b) {
  const std::uint32_t n_evals = scheme.evals_per_part();
  const SssSolveResult ra = solve_sss(source_a, scheme.s_d, n_evals);
  const SssSolveResult rb = solve_sss(source_b, scheme.s_d, n_evals);
  MMLeakage out;
  out.per_entry_a = ra.leakage.per_share[0];
  out.per_entry_b = rb.leakage.per_share[0];
  out.relative_a = ra.leakage.relative_per_share[0];
  out.relative_b = rb.leakage.relative_per_share[0];
  out.tasks_per_worker = scheme.tasks_per_worker();
  const double entries_a = static_cast<double>(rows_a) * inner / scheme.parts;
  const double entries_b = static_cast<double>(inner) * cols_b / scheme.parts;
  out.per_worker_a = out.tasks_per_worker * entries_a * out.per_entry_a;
  out.per_worker_b = out.tasks_per_worker * entries_b * out.per_entry_b;
  return out;
}

namespace {
bool survives_removal(const MMScheme& scheme, const std::vector<std::uint32_t>& removed) {
  std::set<std::uint32_t> gone(removed.begin(), removed.end());
  for (std::uint32_t p = 0; p < scheme.parts; ++p) {
    std::uint32_t alive = 0;
    for (std::uint32_t w : scheme.part_workers(p)) alive += !gone.count(w);
    if (alive < 3) return false;
  }
  return true;
}

bool all_subsets_survive(const MMScheme& scheme, std::uint32_t k) {
  std::vector<std::uint32_t> idx(k);
  for (std::uint32_t i = 0; i < k; ++i) idx[i] = i;
  const std::uint32_t n = scheme.workers;
  for (;;) {
    if (!survives_removal(scheme, idx)) return false;
    // next combination
    std::int32_t i = static_cast<std::int32_t>(k) - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return true;
    ++idx[i];
    for (std::uint32_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}
}  // namespace

ToleranceReport tolerance_report(const MMScheme& scheme) {
  ToleranceReport rep;
  rep.claimed = scheme.claimed_tolerance();
  std::uint32_t k = 0;
  while (k < scheme.workers && all_subsets_survive(scheme, k + 1)) ++k;
  rep.measured = k;
  return rep;
}

ParsedScheme read_scheme_file(const std::string& path) {
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
    if (it == kv.end()) throw InvalidArgument("scheme file: missing key '" + key + "'");
    return it->second;
  };
  auto get_or = [&](const std::string& key, const std::string& dflt) {
    auto it = kv.find(key);
    return it == kv.end() ? dflt : it->second;
  };
  const std::string vs = need("variant");
  MMVariant variant;
  if (vs == "basic") variant = MMVariant::Basic;
  else if (vs == "cyclic-groups") variant = MMVariant::CyclicGroups;
  else if (vs == "m-split") variant = MMVariant::MSplit;
  else throw InvalidArgument("scheme file: unknown variant '" + vs + "'");

  ParsedScheme out;
  out.field = field_for_q(static_cast<std::uint32_t>(std::stoul(need("q"))));
  out.scheme = make_mm_scheme(
      variant, static_cast<std::uint32_t>(std::stoul(need("N"))),
      static_cast<std::uint32_t>(std::stoul(get_or("m", "1"))),
      static_cast<std::uint32_t>(std::stoul(get_or("sigma", "0"))),
      static_cast<std::uint32_t>(std::stoul(get_or("x", "1"))), *out.field,
      std::stod(need("s")), std::stod(need("s_d")),
      static_cast<std::uint64_t>(std::stoull(get_or("seed", "0"))));
  return out;
}

}  // namespace spshare
