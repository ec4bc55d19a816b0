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

#include "spshare/otp.hpp"

#include <cmath>
#include <string>

#include "spshare/rng.hpp"

namespace spshare {

namespace {
constexpr double kProbTol = 1e-12;

double checked_prob(double p, const char* name) {
  if (!std::isfinite(p) || p < -kProbTol || p > 1.0 + kProbTol)
    throw InvalidArgument(std::string("PadParams: ") + name + " = " + std::to_string(p) +
                          " is not a probability");
  return std::min(1.0, std::max(0.0, p));
}
}  // namespace

PadParams::PadParams(const Field& field, double p1, double p2, double p3) : field_(&field) {
  if (field.q() < 3)
    throw InvalidArgument(
        "PadParams: needs q >= 3, the remainder mass (1 - p2 - p3) is spread over q - 2 symbols");
  p1_ = checked_prob(p1, "p1");
  p2_ = checked_prob(p2, "p2");
  p3_ = checked_prob(p3, "p3");
  if (p2_ + p3_ > 1.0 + kProbTol)
    throw InvalidArgument("PadParams: p2 + p3 = " + std::to_string(p2_ + p3_) + " exceeds 1");
  if (p2_ + p3_ > 1.0) {  // rounding crumbs only, renormalize
    const double scale = 1.0 / (p2_ + p3_);
    p2_ *= scale;
    p3_ *= scale;
  }
}

PadParams PadParams::uniform(const Field& field) {
  const double u = 1.0 / field.q();
  return PadParams(field, u, u, u);
}

OtpShares sample_pad(const FieldMatrix& a, const PadParams& params, std::uint64_t seed) {
  if (!a.field().same_as(params.field()))
    throw InvalidArgument("sample_pad: matrix and parameters use different fields");
  const Field& f = a.field();
  const std::uint32_t q = f.q();
  const double p1 = params.p1(), p2 = params.p2(), p3 = params.p3();
  FieldMatrix pad(a.rows(), a.cols(), f);
  const Rng root(seed);
  for (std::uint32_t r = 0; r < a.rows(); ++r) {
    Rng rng = root.derive(r);
    for (std::uint32_t c = 0; c < a.cols(); ++c) {
      const std::uint32_t av = a(r, c);
      const double u = rng.next_unit();
      std::uint32_t rv;
      if (av == 0) {
        rv = (u < p1) ? 0 : 1 + rng.next_below(q - 1);
      } else if (u < p2) {
        rv = 0;
      } else if (u < p2 + p3) {
        rv = f.neg(av);
      } else {
        // uniform over the q-2 symbols outside {0, -a}
        std::uint32_t v = 1 + rng.next_below(q - 2);
        if (v >= f.neg(av)) ++v;
        rv = v;
      }
      pad(r, c) = rv;
    }
  }
  return {pad, add(a, pad)};
}

std::pair<double, double> predicted_sparsity(const PadParams& params, double s) {
  return {params.p1() * s + params.p2() * (1.0 - s),
          params.p1() * s + params.p3() * (1.0 - s)};
}

PadParams semi_perfect_params(double p, const Field& field) {
  if (!(p > 0.0) || !(p < 1.0))
    throw InvalidArgument("semi_perfect_params: p must lie strictly inside (0, 1)");
  return PadParams(field, p, (1.0 - p) / (field.q() - 1), p);
}

double semi_perfect_pad_leakage(const Field& field, double s, double p) {
  const std::uint32_t q = field.q();
  const double ln_q = std::log(static_cast<double>(q));
  const double rest = (1.0 - p) / (q - 1);
  const double s_r = p * s + rest * (1.0 - s);
  const double s_r_inv = (1.0 - s_r) / (q - 1);
  // A=0 row: (p, rest, ..., rest); A=a row: rest everywhere except p at -a
  return s * (xlogq(p, s_r, ln_q) + (q - 1) * xlogq(rest, s_r_inv, ln_q)) +
         (1.0 - s) * (xlogq(rest, s_r, ln_q) + xlogq(p, s_r_inv, ln_q) +
                      (q - 2) * xlogq(rest, s_r_inv, ln_q));
}

ConditionalPmf pad_channel(const PadParams& params) {
  const Field& f = params.field();
  const std::uint32_t q = f.q();
  std::vector<double> rows(static_cast<std::size_t>(q) * q);
  for (std::uint32_t y = 0; y < q; ++y) rows[y] = params.p1inv();
  rows[0] = params.p1();
  for (std::uint32_t a = 1; a < q; ++a) {
    double* row = rows.data() + static_cast<std::size_t>(a) * q;
    for (std::uint32_t y = 0; y < q; ++y) row[y] = params.p23inv();
    row[0] = params.p2();
    row[f.neg(a)] = params.p3();
  }
  return ConditionalPmf(f, std::move(rows));
}

ConditionalPmf padded_channel(const PadParams& params) {
  const Field& f = params.field();
  const std::uint32_t q = f.q();
  std::vector<double> rows(static_cast<std::size_t>(q) * q);
  for (std::uint32_t y = 0; y < q; ++y) rows[y] = params.p1inv();
  rows[0] = params.p1();
  for (std::uint32_t a = 1; a < q; ++a) {
    double* row = rows.data() + static_cast<std::size_t>(a) * q;
    for (std::uint32_t y = 0; y < q; ++y) row[y] = params.p23inv();
    row[a] = params.p2();  // R = 0
    row[0] = params.p3();  // R = -a
  }
  return ConditionalPmf(f, std::move(rows));
}

ConditionalPmf share_channel(const PadParams& params, int share_index) {
  if (share_index == 0) return pad_channel(params);
  if (share_index == 1) return padded_channel(params);
  throw InvalidArgument("share_channel: a one-time pad has shares 0 (R) and 1 (A+R)");
}

LeakageReport otp_leakage(const PadParams& params, const SourceModel& source) {
  if (!params.field().same_as(source.field()))
    throw InvalidArgument("otp_leakage: parameters and source use different fields");
  const Pmf src = source.entry_pmf();
  const double l1 = mutual_information_q(src, pad_channel(params));
  const double l2 = mutual_information_q(src, padded_channel(params));
  return make_leakage_report({l1, l2}, source.entry_entropy());
}

}  // namespace spshare
