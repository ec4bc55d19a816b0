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

#include "spshare/stats.hpp"

#include <cmath>
#include <string>

namespace spshare {

namespace {
constexpr double kPmfSumTol = 1e-12;

void validate_pmf(const std::vector<double>& p, std::uint32_t q) {
  if (p.size() != q) throw InvalidArgument("Pmf: length must equal the field cardinality");
  double sum = 0.0;
  for (double v : p) {
    if (v < 0.0 || !std::isfinite(v)) throw InvalidArgument("Pmf: entries must be non-negative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kPmfSumTol)
    throw InvalidArgument("Pmf: entries sum to " + std::to_string(sum) + ", not 1");
}
}  // namespace

Pmf::Pmf(const Field& alphabet, std::vector<double> probs)
    : alphabet_(&alphabet), p_(std::move(probs)) {
  validate_pmf(p_, alphabet.q());
}

Pmf Pmf::uniform(const Field& alphabet) {
  return Pmf(alphabet, std::vector<double>(alphabet.q(), 1.0 / alphabet.q()));
}

Pmf Pmf::point_mass(const Field& alphabet, std::uint32_t at) {
  std::vector<double> p(alphabet.q(), 0.0);
  p.at(at) = 1.0;
  return Pmf(alphabet, std::move(p));
}

ConditionalPmf::ConditionalPmf(const Field& alphabet, std::vector<double> rows)
    : alphabet_(&alphabet), rows_(std::move(rows)) {
  const std::uint32_t q = alphabet.q();
  if (rows_.size() != static_cast<std::size_t>(q) * q)
    throw InvalidArgument("ConditionalPmf: needs q*q entries");
  for (std::uint32_t a = 0; a < q; ++a)
    validate_pmf({rows_.begin() + static_cast<std::size_t>(a) * q,
                  rows_.begin() + static_cast<std::size_t>(a + 1) * q},
                 q);
}

Pmf ConditionalPmf::row(std::uint32_t in) const {
  return Pmf(*alphabet_, {rows_.begin() + static_cast<std::size_t>(in) * q(),
                          rows_.begin() + static_cast<std::size_t>(in + 1) * q()});
}

Pmf ConditionalPmf::output_marginal(const Pmf& input) const {
  const std::uint32_t n = q();
  std::vector<double> out(n, 0.0);
  for (std::uint32_t a = 0; a < n; ++a) {
    const double pa = input[a];
    if (pa == 0.0) continue;
    const double* row = rows_.data() + static_cast<std::size_t>(a) * n;
    for (std::uint32_t y = 0; y < n; ++y) out[y] += pa * row[y];
  }
  // renormalize the last rounding crumbs so the result is a valid Pmf
  double sum = 0.0;
  for (double v : out) sum += v;
  for (double& v : out) v /= sum;
  return Pmf(*alphabet_, std::move(out));
}

SourceModel::SourceModel(const Field& field, double s) : field_(&field), s_(s) {
  const double qinv = 1.0 / field.q();
  if (!(s > qinv))
    throw InvalidArgument(
        "SourceModel: sparsity s = " + std::to_string(s) + " must exceed 1/q = " +
        std::to_string(qinv) +
        "; at or below that level plain secret sharing already gives sparser shares");
  if (s > 1.0) throw InvalidArgument("SourceModel: sparsity cannot exceed 1");
}

Pmf SourceModel::entry_pmf() const {
  std::vector<double> p(q(), (1.0 - s_) / (q() - 1));
  p[0] = s_;
  return Pmf(*field_, std::move(p));
}

double SourceModel::entry_entropy() const { return entropy_q(entry_pmf()); }

double xlogq(double x, double y, double ln_q) {
  if (x <= 0.0) return 0.0;
  return x * std::log(x / y) / ln_q;
}

double entropy_q(const Pmf& p) {
  const double ln_q = std::log(static_cast<double>(p.q()));
  double acc = 0.0;
  for (std::uint32_t i = 0; i < p.q(); ++i) {
    const double v = p[i];
    if (v > 0.0) acc -= v * std::log(v);
  }
  return acc / ln_q;
}

double kl_q(const Pmf& p, const Pmf& r) {
  if (p.q() != r.q()) throw InvalidArgument("kl_q: alphabet mismatch");
  const double ln_q = std::log(static_cast<double>(p.q()));
  double acc = 0.0;
  for (std::uint32_t i = 0; i < p.q(); ++i) {
    if (p[i] == 0.0) continue;
    if (r[i] == 0.0)
      throw InvalidArgument("kl_q: p has mass at symbol " + std::to_string(i) +
                            " where r has none");
    acc += p[i] * std::log(p[i] / r[i]);
  }
  return acc / ln_q;
}

double mutual_information_q(const Pmf& source, const ConditionalPmf& channel) {
  if (source.q() != channel.q()) throw InvalidArgument("mutual_information_q: alphabet mismatch");
  const std::uint32_t n = source.q();
  const double ln_q = std::log(static_cast<double>(n));
  // exact output marginal, never sampled
  std::vector<double> marg(n, 0.0);
  for (std::uint32_t a = 0; a < n; ++a) {
    const double pa = source[a];
    if (pa == 0.0) continue;
    for (std::uint32_t y = 0; y < n; ++y) marg[y] += pa * channel.at(a, y);
  }
  double acc = 0.0;
  for (std::uint32_t a = 0; a < n; ++a) {
    const double pa = source[a];
    if (pa == 0.0) continue;
    for (std::uint32_t y = 0; y < n; ++y) {
      const double pya = channel.at(a, y);
      if (pya > 0.0) acc += pa * pya * std::log(pya / marg[y]);
    }
  }
  return acc / ln_q;
}

double empirical_mi(const FieldMatrix& samples_in, const FieldMatrix& samples_out) {
  if (!samples_in.field().same_as(samples_out.field()))
    throw InvalidArgument("empirical_mi: samples from different fields");
  if (samples_in.rows() != samples_out.rows() || samples_in.cols() != samples_out.cols())
    throw InvalidArgument("empirical_mi: dimension mismatch");
  const std::uint32_t q = samples_in.field().q();
  const std::size_t n = samples_in.size();
  std::vector<double> joint(static_cast<std::size_t>(q) * q, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    joint[static_cast<std::size_t>(samples_in.data()[i]) * q + samples_out.data()[i]] += 1.0;
  std::vector<double> pin(q, 0.0), pout(q, 0.0);
  for (std::uint32_t a = 0; a < q; ++a)
    for (std::uint32_t b = 0; b < q; ++b) {
      const double c = joint[static_cast<std::size_t>(a) * q + b];
      pin[a] += c;
      pout[b] += c;
    }
  const double ln_q = std::log(static_cast<double>(q));
  const double total = static_cast<double>(n);
  double acc = 0.0;
  for (std::uint32_t a = 0; a < q; ++a)
    for (std::uint32_t b = 0; b < q; ++b) {
      const double c = joint[static_cast<std::size_t>(a) * q + b];
      if (c > 0.0) acc += c / total * std::log((c * total) / (pin[a] * pout[b]));
    }
  return acc / ln_q;
}

LeakageReport make_leakage_report(std::vector<double> per_share, double entry_entropy) {
  LeakageReport rep;
  rep.per_share = std::move(per_share);
  rep.entry_entropy = entry_entropy;
  for (double v : rep.per_share) {
    rep.total += v;
    rep.relative_per_share.push_back(entry_entropy > 0 ? v / entry_entropy : 0.0);
  }
  rep.relative_total = rep.per_share.empty() || entry_entropy <= 0
                           ? 0.0
                           : rep.total / (rep.per_share.size() * entry_entropy);
  return rep;
}

}  // namespace spshare
